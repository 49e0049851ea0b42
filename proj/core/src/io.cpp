#include "schatten/io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace schatten {

using nlohmann::json;

namespace {

json manifest_to_json(const RunManifest& m) {
  json j;
  j["command"] = m.command;
  j["seed"] = m.seed;
  j["parameters"] = m.parameters;
  j["tool_version"] = m.tool_version;
  j["timestamp"] = m.timestamp;
  return j;
}

void attach_manifest(json& j, const std::optional<RunManifest>& manifest) {
  if (manifest) {
    j["manifest"] = manifest_to_json(*manifest);
  }
}

std::string manifest_comment(const std::optional<RunManifest>& manifest) {
  if (!manifest) return {};
  return "# manifest: " + manifest_to_json(*manifest).dump() + "\n";
}

json operator_to_json(const Matrix& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      data.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  return json{{"dim", m.rows()}, {"data", std::move(data)}};
}

Matrix operator_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("data")) {
    throw io_error("operator must have \"dim\" and \"data\" fields");
  }
  const std::int64_t dim = j.at("dim").get<std::int64_t>();
  if (dim < 1) {
    throw io_error("operator dim must be positive");
  }
  const json& data = j.at("data");
  if (!data.is_array() ||
      data.size() != static_cast<std::size_t>(dim) * dim) {
    throw io_error("operator data length must equal dim^2");
  }
  Matrix m(dim, dim);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c, ++k) {
      const json& entry = data[k];
      if (!entry.is_array() || entry.size() != 2) {
        throw io_error("operator entries must be [re, im] pairs");
      }
      const double re = entry[0].get<double>();
      const double im = entry[1].get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw io_error("operator entries must be finite");
      }
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

json parse_or_throw(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw io_error(std::string("parse error: ") + e.what());
  }
}

json dimension_bound_to_json(const DimensionBound& b) {
  return json{{"applicable", b.applicable}, {"bound", b.bound},
              {"corollary_dim", b.corollary_dim}, {"c_small", b.c_small},
              {"big_c", b.big_c}};
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string manifest_csv_comment(const RunManifest& manifest) {
  return manifest_comment(manifest);
}

std::string point_config_to_json(const PointConfig& cfg,
                                 const std::optional<RunManifest>& manifest) {
  json j;
  attach_manifest(j, manifest);
  j["n"] = cfg.n;
  j["dim"] = cfg.dim;
  j["O"] = operator_to_json(cfg.O);
  j["sigma"] = operator_to_json(cfg.sigma);
  j["X"] = json::array();
  j["Y"] = json::array();
  for (const Matrix& m : cfg.X) j["X"].push_back(operator_to_json(m));
  for (const Matrix& m : cfg.Y) j["Y"].push_back(operator_to_json(m));
  return j.dump(2) + "\n";
}

PointConfig point_config_from_json(const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.contains("n") || !j.contains("dim") || !j.contains("sigma")) {
    throw io_error("point config must have n, dim, O, sigma, X, Y");
  }
  PointConfig cfg;
  cfg.n = j.at("n").get<int>();
  cfg.dim = j.at("dim").get<int>();
  if (cfg.n < 0 || cfg.dim < 1) {
    throw io_error("point config has invalid n or dim");
  }
  cfg.O = operator_from_json(j.at("O"));
  cfg.sigma = operator_from_json(j.at("sigma"));
  for (const json& m : j.at("X")) cfg.X.push_back(operator_from_json(m));
  for (const json& m : j.at("Y")) cfg.Y.push_back(operator_from_json(m));
  if (static_cast<int>(cfg.X.size()) != cfg.n ||
      static_cast<int>(cfg.Y.size()) != cfg.n) {
    throw io_error("point config X/Y length must equal n");
  }
  auto check_dim = [&](const Matrix& m) {
    if (m.rows() != cfg.dim) {
      throw io_error("point config operators must share dim");
    }
  };
  check_dim(cfg.O);
  check_dim(cfg.sigma);
  for (const Matrix& m : cfg.X) check_dim(m);
  for (const Matrix& m : cfg.Y) check_dim(m);
  return cfg;
}

PointConfig load_point_config(const std::string& path) {
  return point_config_from_json(read_text_file(path));
}

std::string family_to_json(const ObservableFamily& fam,
                           const std::optional<RunManifest>& manifest) {
  json j;
  attach_manifest(j, manifest);
  j["n"] = fam.n;
  j["dim"] = fam.dim;
  j["ops"] = json::array();
  for (const Matrix& m : fam.ops) j["ops"].push_back(operator_to_json(m));
  return j.dump(2) + "\n";
}

ObservableFamily family_from_json(const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.contains("ops")) {
    throw io_error("family must have n, dim, ops");
  }
  ObservableFamily fam;
  fam.n = j.at("n").get<int>();
  fam.dim = j.at("dim").get<int>();
  for (const json& m : j.at("ops")) fam.ops.push_back(operator_from_json(m));
  if (static_cast<int>(fam.ops.size()) != fam.n) {
    throw io_error("family ops length must equal n");
  }
  for (const Matrix& m : fam.ops) {
    if (m.rows() != fam.dim) {
      throw io_error("family operators must share dim");
    }
  }
  return fam;
}

ObservableFamily load_family(const std::string& path) {
  const std::string text = read_text_file(path);
  const json j = parse_or_throw(text);
  if (j.contains("ops")) {
    return family_from_json(text);
  }
  if (j.contains("X")) {
    const PointConfig cfg = point_config_from_json(text);
    ObservableFamily fam;
    fam.n = cfg.n;
    fam.dim = cfg.dim;
    for (int i = 0; i < cfg.n; ++i) {
      fam.ops.push_back(static_cast<double>(cfg.dim) * (cfg.X[i] - cfg.Y[i]));
    }
    return fam;
  }
  throw io_error("file holds neither a family nor a point config");
}

std::string metric_report_to_json(const MetricReport& report,
                                  const std::optional<RunManifest>& manifest) {
  json j;
  attach_manifest(j, manifest);
  j["delta_observed"] = report.delta_observed;
  j["pairs_checked"] = report.pairs_checked;
  j["mode"] = report.sampled ? "sampled" : "all";
  j["constraints"] = json::array();
  for (const MetricConstraint& c : report.constraints) {
    j["constraints"].push_back({{"id", c.id},
                                {"value", c.value},
                                {"bound", c.bound},
                                {"slack", c.slack},
                                {"delta_needed", c.delta_needed}});
  }
  return j.dump(2) + "\n";
}

std::string metric_report_to_csv(const MetricReport& report,
                                 const std::optional<RunManifest>& manifest) {
  std::ostringstream out;
  out << manifest_comment(manifest);
  out << "id,value,bound,slack\n";
  for (const MetricConstraint& c : report.constraints) {
    out << c.id << ',' << format_double(c.value) << ','
        << format_double(c.bound) << ',' << format_double(c.slack) << '\n';
  }
  return out.str();
}

std::string certification_report_to_json(
    const CertificationReport& report,
    const std::optional<RunManifest>& manifest) {
  json j;
  attach_manifest(j, manifest);
  j["n"] = report.n;
  j["dim"] = report.dim;
  j["input_delta"] = report.input_delta;
  j["bound_rhs_shape"] = report.bound_rhs_shape;
  j["pairs"] = json::array();
  for (int i = 0; i < report.n; ++i) {
    const PairCertificate& c = report.pairs[i];
    j["pairs"].push_back({{"pair", i + 1},
                          {"res_x", c.res_x},
                          {"res_y", c.res_y},
                          {"com_p", c.com_p},
                          {"com_q", c.com_q},
                          {"rho_dist", c.rho_dist},
                          {"obs_commutation", report.commutation[i]}});
  }
  j["anticommutators"] = json::array();
  for (int i = 0; i < report.n; ++i) {
    for (int k = i + 1; k < report.n; ++k) {
      j["anticommutators"].push_back(
          {{"i", i + 1}, {"j", k + 1}, {"residual", report.pre_block_ac(i, k)}});
    }
  }
  j["block"] = {{"dim", report.block_dim},
                {"trace_fraction", report.block_trace_fraction}};
  j["final"] = {{"ac_mean_sq", report.final_ac_mean_sq},
                {"bound_rhs_shape", report.bound_rhs_shape},
                {"input_delta", report.input_delta}};
  return j.dump(2) + "\n";
}

std::string certification_report_to_csv(
    const CertificationReport& report,
    const std::optional<RunManifest>& manifest) {
  std::ostringstream out;
  out << manifest_comment(manifest);
  out << "section,i,j,metric,value\n";
  for (int i = 0; i < report.n; ++i) {
    const PairCertificate& c = report.pairs[i];
    const std::string tag = "pairs," + std::to_string(i + 1) + ",,";
    out << tag << "res_x," << format_double(c.res_x) << '\n';
    out << tag << "res_y," << format_double(c.res_y) << '\n';
    out << tag << "com_p," << format_double(c.com_p) << '\n';
    out << tag << "com_q," << format_double(c.com_q) << '\n';
    out << tag << "rho_dist," << format_double(c.rho_dist) << '\n';
    out << tag << "obs_commutation," << format_double(report.commutation[i])
        << '\n';
  }
  for (int i = 0; i < report.n; ++i) {
    for (int k = i + 1; k < report.n; ++k) {
      out << "anticommutators," << i + 1 << ',' << k + 1 << ",residual,"
          << format_double(report.pre_block_ac(i, k)) << '\n';
    }
  }
  out << "block,,,dim," << report.block_dim << '\n';
  out << "block,,,trace_fraction," << format_double(report.block_trace_fraction)
      << '\n';
  out << "final,,,ac_mean_sq," << format_double(report.final_ac_mean_sq)
      << '\n';
  out << "final,,,bound_rhs_shape," << format_double(report.bound_rhs_shape)
      << '\n';
  out << "final,,,input_delta," << format_double(report.input_delta) << '\n';
  return out.str();
}

std::string defect_report_to_json(const DefectReport& report,
                                  const std::optional<DimensionBound>& bound,
                                  double family_eps,
                                  const std::optional<RunManifest>& manifest) {
  json j;
  attach_manifest(j, manifest);
  j["eta_max"] = report.eta_max;
  j["eta_mean"] = report.eta_mean;
  j["pairs_tested"] = report.pairs_tested;
  j["j_image_distance"] = report.j_image_distance;
  j["j_image_hypothesis"] = report.j_image_hypothesis();
  j["family_eps"] = family_eps;
  if (bound) {
    j["dimension_bound"] = dimension_bound_to_json(*bound);
  }
  return j.dump(2) + "\n";
}

std::string defect_report_to_csv(const DefectReport& report,
                                 const std::optional<DimensionBound>& bound,
                                 double family_eps,
                                 const std::optional<RunManifest>& manifest) {
  std::ostringstream out;
  out << manifest_comment(manifest);
  out << "metric,value\n";
  out << "eta_max," << format_double(report.eta_max) << '\n';
  out << "eta_mean," << format_double(report.eta_mean) << '\n';
  out << "pairs_tested," << report.pairs_tested << '\n';
  out << "j_image_distance," << format_double(report.j_image_distance) << '\n';
  out << "j_image_hypothesis," << (report.j_image_hypothesis() ? 1 : 0) << '\n';
  out << "family_eps," << format_double(family_eps) << '\n';
  if (bound) {
    out << "bound_applicable," << (bound->applicable ? 1 : 0) << '\n';
    out << "bound," << format_double(bound->bound) << '\n';
    out << "bound_corollary_dim," << format_double(bound->corollary_dim)
        << '\n';
    out << "bound_c_small," << format_double(bound->c_small) << '\n';
    out << "bound_big_c," << format_double(bound->big_c) << '\n';
  }
  return out.str();
}

std::string embed_stats_to_json(const EmbedStats& stats,
                                const std::optional<RunManifest>& manifest) {
  json j;
  attach_manifest(j, manifest);
  j["n"] = stats.n;
  j["delta_target"] = stats.delta_target;
  j["vec_dim"] = stats.vec_dim;
  j["span_dim"] = stats.span_dim;
  j["rep_dim"] = stats.rep_dim;
  j["distortion"] = stats.distortion;
  j["retries"] = stats.retries;
  j["sharper_bound"] = stats.sharper_bound;
  j["points_embedded"] = stats.points_embedded;
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw io_error("cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw io_error("cannot write " + path);
  }
  out << text;
  if (!out) {
    throw io_error("write failed for " + path);
  }
}

}  // namespace schatten
