#pragma once

#include "schatten/certify.hpp"
#include "schatten/embed.hpp"
#include "schatten/group.hpp"
#include "schatten/pointset.hpp"
#include "schatten/version.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace schatten {

/// Provenance block embedded in every output file. Identical manifests
/// reproduce identical output bytes.
struct RunManifest {
  std::string command;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> parameters;
  std::string tool_version = kToolVersion;
  std::string timestamp;
};

/// Formats a double with 17 significant digits, locale-independent.
std::string format_double(double value);

/// "# manifest: {...}\n" comment line placed above CSV headers.
std::string manifest_csv_comment(const RunManifest& manifest);

// --- Operator / PointConfig / ObservableFamily JSON ------------------------
// Operator format: {"dim": d, "data": [[re, im], ...]} row-major.

std::string point_config_to_json(const PointConfig& cfg,
                                 const std::optional<RunManifest>& manifest);
PointConfig point_config_from_json(const std::string& text);
PointConfig load_point_config(const std::string& path);

std::string family_to_json(const ObservableFamily& fam,
                           const std::optional<RunManifest>& manifest);
ObservableFamily family_from_json(const std::string& text);

/// Loads either an ObservableFamily file or a PointConfig file (detected by
/// keys); a config is converted back to its family via C_i = dim (X_i - Y_i).
ObservableFamily load_family(const std::string& path);

// --- Reports ---------------------------------------------------------------

std::string metric_report_to_json(const MetricReport& report,
                                  const std::optional<RunManifest>& manifest);
std::string metric_report_to_csv(const MetricReport& report,
                                 const std::optional<RunManifest>& manifest);

std::string certification_report_to_json(
    const CertificationReport& report,
    const std::optional<RunManifest>& manifest);
std::string certification_report_to_csv(
    const CertificationReport& report,
    const std::optional<RunManifest>& manifest);

std::string defect_report_to_json(const DefectReport& report,
                                  const std::optional<DimensionBound>& bound,
                                  double family_eps,
                                  const std::optional<RunManifest>& manifest);
std::string defect_report_to_csv(const DefectReport& report,
                                 const std::optional<DimensionBound>& bound,
                                 double family_eps,
                                 const std::optional<RunManifest>& manifest);

std::string embed_stats_to_json(const EmbedStats& stats,
                                const std::optional<RunManifest>& manifest);

// --- Files -----------------------------------------------------------------

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace schatten
