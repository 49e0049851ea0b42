// Command-line front end: reproducible construct/verify/certify/sweep/embed/
// group-check runs with JSON + CSV outputs, each embedding its run manifest.

#include "schatten/certify.hpp"
#include "schatten/embed.hpp"
#include "schatten/group.hpp"
#include "schatten/io.hpp"
#include "schatten/pointset.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace schatten;

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumeric = 3;

std::string utc_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

int worker_count(std::size_t cells) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("SCHATTEN_RIGIDITY_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(cells, 1)));
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct SweepCell {
  double delta = 0.0;
  std::uint64_t seed = 0;
  double delta_observed = 0.0;
  double pre_ac_max = 0.0;
  double pre_ac_mean = 0.0;
  double com_max = 0.0;
  double block_trace_fraction = 0.0;
  double final_ac_mean_sq = 0.0;
};

SweepCell run_sweep_cell(int n, double delta, std::uint64_t seed) {
  const PointConfig base = projector_pointset(clifford_family(n));
  const PointConfig cfg =
      delta > 0.0 ? perturb_pointset(base, delta, seed) : base;
  const CertificationReport report = certify_config(cfg);
  SweepCell cell;
  cell.delta = delta;
  cell.seed = seed;
  cell.delta_observed = report.input_delta;
  double sum = 0.0;
  int count = 0;
  for (int i = 0; i < report.n; ++i) {
    cell.com_max = std::max(cell.com_max, report.commutation[i]);
    for (int j = i + 1; j < report.n; ++j) {
      cell.pre_ac_max = std::max(cell.pre_ac_max, report.pre_block_ac(i, j));
      sum += report.pre_block_ac(i, j);
      ++count;
    }
  }
  cell.pre_ac_mean = sum / count;
  cell.block_trace_fraction = report.block_trace_fraction;
  cell.final_ac_mean_sq = report.final_ac_mean_sq;
  return cell;
}

int cmd_construct(int n, bool real, const std::string& out,
                  const RunManifest& manifest) {
  const ObservableFamily fam = real ? real_clifford_family(n) : clifford_family(n);
  write_text_file(out, point_config_to_json(projector_pointset(fam), manifest));
  std::cout << "wrote " << out << " (n=" << n << ", dim=" << fam.dim << ")\n";
  return 0;
}

int cmd_verify(const std::string& config_path, const std::string& mode,
               const std::string& out, const RunManifest& manifest) {
  const PointConfig cfg = load_point_config(config_path);
  const MetricReport report = verify_metric_relations(
      cfg, mode == "sampled" ? PairMode::kSampled : PairMode::kAll);
  write_text_file(out + ".json", metric_report_to_json(report, manifest));
  write_text_file(out + ".csv", metric_report_to_csv(report, manifest));
  std::cout << "delta_observed " << format_double(report.delta_observed)
            << "\n";
  return 0;
}

int cmd_certify(const std::string& config_path, const std::string& out,
                const RunManifest& manifest) {
  const PointConfig cfg = load_point_config(config_path);
  const CertificationReport report = certify_config(cfg);
  write_text_file(out + ".json",
                  certification_report_to_json(report, manifest));
  write_text_file(out + ".csv", certification_report_to_csv(report, manifest));
  std::cout << "final_ac_mean_sq " << format_double(report.final_ac_mean_sq)
            << " block_dim " << report.block_dim << "\n";
  return 0;
}

int cmd_sweep(int n, const std::vector<double>& grid, int seeds,
              std::uint64_t seed_base, const std::string& out,
              const RunManifest& manifest) {
  if (grid.empty()) {
    throw precondition_error("grid must be nonempty");
  }
  for (double d : grid) {
    if (d < 0.0 || d > 1.0) {
      throw precondition_error("grid deltas must lie in [0, 1]");
    }
  }
  std::vector<SweepCell> cells;
  std::vector<double> sorted_grid = grid;
  std::sort(sorted_grid.begin(), sorted_grid.end());
  for (double delta : sorted_grid) {
    for (int s = 0; s < seeds; ++s) {
      SweepCell cell;
      cell.delta = delta;
      cell.seed = seed_base + static_cast<std::uint64_t>(s);
      cells.push_back(cell);
    }
  }

  // Each (delta, seed) cell is independent; results land by index so the
  // output never depends on scheduling.
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= cells.size()) break;
      cells[k] = run_sweep_cell(n, cells[k].delta, cells[k].seed);
    }
  };
  const int workers = worker_count(cells.size());
  std::vector<std::thread> pool;
  for (int w = 0; w < workers - 1; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  std::ostringstream csv;
  csv << manifest_csv_comment(manifest);
  csv << "kind,delta,seed,delta_observed,pre_ac_max,pre_ac_mean,com_max,"
         "block_trace_fraction,final_ac_mean_sq\n";
  for (const SweepCell& c : cells) {
    csv << "run," << format_double(c.delta) << ',' << c.seed << ','
        << format_double(c.delta_observed) << ',' << format_double(c.pre_ac_max)
        << ',' << format_double(c.pre_ac_mean) << ','
        << format_double(c.com_max) << ','
        << format_double(c.block_trace_fraction) << ','
        << format_double(c.final_ac_mean_sq) << '\n';
  }
  for (double delta : sorted_grid) {
    std::vector<double> observed, ac_max, ac_mean, com, frac, fin;
    for (const SweepCell& c : cells) {
      if (c.delta != delta) continue;
      observed.push_back(c.delta_observed);
      ac_max.push_back(c.pre_ac_max);
      ac_mean.push_back(c.pre_ac_mean);
      com.push_back(c.com_max);
      frac.push_back(c.block_trace_fraction);
      fin.push_back(c.final_ac_mean_sq);
    }
    csv << "median," << format_double(delta) << ",,"
        << format_double(median_of(observed)) << ','
        << format_double(median_of(ac_max)) << ','
        << format_double(median_of(ac_mean)) << ','
        << format_double(median_of(com)) << ','
        << format_double(median_of(frac)) << ','
        << format_double(median_of(fin)) << '\n';
  }
  write_text_file(out, csv.str());
  std::cout << "wrote " << out << " (" << cells.size() << " runs, "
            << sorted_grid.size() << " medians)\n";
  return 0;
}

int cmd_embed(int n, double delta, std::uint64_t seed, const std::string& out,
              const RunManifest& manifest) {
  const auto [cfg, stats] = embed(n, delta, seed);
  write_text_file(out + ".config.json", point_config_to_json(cfg, manifest));
  write_text_file(out + ".stats.json", embed_stats_to_json(stats, manifest));
  std::cout << "distortion " << format_double(stats.distortion) << " rep_dim "
            << stats.rep_dim << "\n";
  return 0;
}

int cmd_group_check(const std::string& family_path, const std::string& mode,
                    std::int64_t samples, std::uint64_t seed, double c_small,
                    double big_c, const std::string& out,
                    const RunManifest& manifest) {
  const ObservableFamily fam = load_family(family_path);
  const DefectReport report = homomorphism_defect(
      fam, mode == "sampled" ? DefectMode::kSampled : DefectMode::kExhaustive,
      samples, seed);
  double eps = 0.0;
  for (int i = 0; i < fam.n; ++i) {
    for (int j = i + 1; j < fam.n; ++j) {
      eps = std::max(
          eps, normalized_frobenius(anti_commutator(fam.ops[i], fam.ops[j])));
    }
  }
  std::optional<DimensionBound> bound;
  if (fam.n >= 2) {
    bound = dimension_bound(fam.n, eps, c_small, big_c);
  }
  write_text_file(out + ".json",
                  defect_report_to_json(report, bound, eps, manifest));
  write_text_file(out + ".csv",
                  defect_report_to_csv(report, bound, eps, manifest));
  std::cout << "eta_max " << format_double(report.eta_max)
            << " j_image_distance " << format_double(report.j_image_distance)
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford point configurations in Schatten-1 space: "
               "construction, metric verification, anticommutation "
               "certification, group-defect estimation, and low-dimension "
               "embedding"};
  app.require_subcommand(1);
  std::string timestamp = utc_now();
  app.add_option("--timestamp", timestamp,
                 "Manifest timestamp (fix it for byte-identical re-runs)")
      ->capture_default_str();

  // construct
  auto* construct = app.add_subcommand("construct", "Write a canonical point configuration");
  int c_n = 2;
  bool c_real = false;
  std::string c_out = "pointset.json";
  construct->add_option("--n", c_n, "Number of (X, Y) pairs")->required()
      ->check(CLI::PositiveNumber);
  construct->add_flag("--real", c_real, "Use the real-entried family");
  construct->add_option("--out", c_out, "Output JSON path");

  // verify
  auto* verify = app.add_subcommand("verify", "Check the metric relations of a configuration");
  std::string v_config, v_out = "verify", v_mode = "all";
  verify->add_option("--config", v_config, "PointConfig JSON path")->required();
  verify->add_option("--mode", v_mode, "all or sampled")
      ->check(CLI::IsMember({"all", "sampled"}));
  verify->add_option("--out", v_out, "Output base path (.json/.csv)");

  // certify
  auto* certify = app.add_subcommand("certify", "Run the full certification pipeline");
  std::string t_config, t_out = "certify";
  certify->add_option("--config", t_config, "PointConfig JSON path")->required();
  certify->add_option("--out", t_out, "Output base path (.json/.csv)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Perturbation sweep over a delta grid");
  int s_n = 4;
  std::vector<double> s_grid;
  int s_seeds = 10;
  std::uint64_t s_seed = 0;
  std::string s_out = "sweep.csv";
  sweep->add_option("--n", s_n, "Number of pairs")->check(CLI::PositiveNumber);
  sweep->add_option("--grid", s_grid, "Comma list of deltas")->required()
      ->delimiter(',');
  sweep->add_option("--seeds", s_seeds, "Seeds per delta")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", s_seed, "Base seed");
  sweep->add_option("--out", s_out, "Output CSV path");

  // embed
  auto* emb = app.add_subcommand("embed", "Low-dimension embedding of the canonical configuration");
  int e_n = 4;
  double e_delta = 0.5;
  std::uint64_t e_seed = 0;
  std::string e_out = "embed";
  emb->add_option("--n", e_n, "Number of pairs")->required()
      ->check(CLI::PositiveNumber);
  emb->add_option("--delta", e_delta, "Target distortion parameter")
      ->required()
      ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
  emb->add_option("--seed", e_seed, "Sampling seed");
  emb->add_option("--out", e_out, "Output base path (.config.json/.stats.json)");

  // group-check
  auto* group = app.add_subcommand("group-check", "Homomorphism defect of an observable family");
  std::string g_family, g_out = "group-check", g_mode = "exhaustive";
  std::int64_t g_samples = 1000;
  std::uint64_t g_seed = 0;
  double g_c_small = 0.1;
  double g_big_c = 1.0;
  group->add_option("--family", g_family,
                    "ObservableFamily or PointConfig JSON path")->required();
  group->add_option("--mode", g_mode, "exhaustive or sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  group->add_option("--samples", g_samples, "Pairs in sampled mode")
      ->check(CLI::PositiveNumber);
  group->add_option("--seed", g_seed, "Sampling seed");
  group->add_option("--c-small", g_c_small, "Applicability constant c");
  group->add_option("--c-big", g_big_c, "Bound constant C");
  group->add_option("--out", g_out, "Output base path (.json/.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  RunManifest manifest;
  manifest.timestamp = timestamp;

  try {
    if (*construct) {
      manifest.command = "construct";
      manifest.parameters = {{"n", std::to_string(c_n)},
                             {"real", c_real ? "true" : "false"},
                             {"out", c_out}};
      return cmd_construct(c_n, c_real, c_out, manifest);
    }
    if (*verify) {
      manifest.command = "verify";
      manifest.parameters = {{"config", v_config}, {"mode", v_mode},
                             {"out", v_out}};
      return cmd_verify(v_config, v_mode, v_out, manifest);
    }
    if (*certify) {
      manifest.command = "certify";
      manifest.parameters = {{"config", t_config}, {"out", t_out}};
      return cmd_certify(t_config, t_out, manifest);
    }
    if (*sweep) {
      manifest.command = "sweep";
      manifest.seed = s_seed;
      std::ostringstream grid_str;
      for (std::size_t k = 0; k < s_grid.size(); ++k) {
        grid_str << (k ? "," : "") << format_double(s_grid[k]);
      }
      manifest.parameters = {{"n", std::to_string(s_n)},
                             {"grid", grid_str.str()},
                             {"seeds", std::to_string(s_seeds)},
                             {"out", s_out}};
      return cmd_sweep(s_n, s_grid, s_seeds, s_seed, s_out, manifest);
    }
    if (*emb) {
      manifest.command = "embed";
      manifest.seed = e_seed;
      manifest.parameters = {{"n", std::to_string(e_n)},
                             {"delta", format_double(e_delta)},
                             {"out", e_out}};
      return cmd_embed(e_n, e_delta, e_seed, e_out, manifest);
    }
    if (*group) {
      manifest.command = "group-check";
      manifest.seed = g_seed;
      manifest.parameters = {{"family", g_family},
                             {"mode", g_mode},
                             {"samples", std::to_string(g_samples)},
                             {"c_small", format_double(g_c_small)},
                             {"c_big", format_double(g_big_c)},
                             {"out", g_out}};
      return cmd_group_check(g_family, g_mode, g_samples, g_seed, g_c_small,
                             g_big_c, g_out, manifest);
    }
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
