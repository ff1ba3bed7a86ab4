#ifndef SURVEYLENS_REPORT_HPP
#define SURVEYLENS_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "surveylens/annotation.hpp"
#include "surveylens/insights.hpp"
#include "surveylens/survey_io.hpp"

namespace surveylens {

/// Bumped whenever the JSON layout changes.
inline constexpr std::string_view kReportVersion = "surveylens-report/1";

std::string_view library_version();

struct ProviderInfo {
  std::string kind;
  std::string model_id;
  std::int64_t dimension = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const ProviderInfo&, const ProviderInfo&) = default;
};

struct RunConfig {
  int k_min = 0;
  int k_max = 0;
  int restarts = 0;
  int max_iterations = 0;
  double tolerance = 0;
  std::uint64_t seed = 0;
  int top_tokens = 0;
  double merge_threshold = 0;
  bool light_stemming = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct KScore {
  int k = 0;
  double score = 0;

  friend bool operator==(const KScore&, const KScore&) = default;
};

struct KSelectionReport {
  int k_star = 0;
  double score = 0;
  std::vector<KScore> trace;

  friend bool operator==(const KSelectionReport&, const KSelectionReport&) = default;
};

struct ClusterReport {
  int cluster_id = 0;
  std::vector<std::int64_t> members;  // response ids
  double rho = 0;
  ClusterAnnotation annotation;
  ClusterStats stats;

  friend bool operator==(const ClusterReport&, const ClusterReport&) = default;
};

struct AssignedResponse {
  std::int64_t id = 0;
  int label = 0;
  double similarity = 0;
  bool low_similarity = false;

  friend bool operator==(const AssignedResponse&, const AssignedResponse&) = default;
};

struct LabelReport {
  int label = 0;
  std::string title;
  int count = 0;
  std::optional<double> mean;
  std::optional<double> std;
  std::vector<std::int64_t> members;
  ClusterStats stats;  // meaningful only when count > 0

  friend bool operator==(const LabelReport&, const LabelReport&) = default;
};

struct AssignmentReport {
  std::vector<AssignedResponse> responses;
  std::vector<LabelReport> labels;

  friend bool operator==(const AssignmentReport&, const AssignmentReport&) = default;
};

struct WordcloudReport {
  WordcloudScope scope = WordcloudScope::cluster;
  std::optional<int> cluster_id;  // cluster scope only
  std::string file;               // SVG file name
  std::vector<WordcloudEntry> entries;

  friend bool operator==(const WordcloudReport&, const WordcloudReport&) = default;
};

struct InsightReport {
  std::string version{kReportVersion};
  std::string generator;
  std::string mode;  // "cluster" or "assign"
  ProviderInfo provider;
  RunConfig config;
  std::vector<Response> responses;
  std::optional<KSelectionReport> k_selection;
  std::vector<ClusterReport> clusters;
  std::vector<std::vector<double>> centroid_correlation;
  std::vector<MergeSuggestion> merge_suggestions;
  std::optional<AssignmentReport> assignment;
  std::vector<std::string> palette;
  std::vector<WordcloudReport> wordclouds;

  friend bool operator==(const InsightReport&, const InsightReport&) = default;
};

/// Pretty-printed JSON with a fixed key order and a trailing newline.
std::string serialize_report(const InsightReport& report);

/// Inverse of serialize_report. Throws MalformedInput on schema violations.
InsightReport parse_report(std::string_view json_text);

}  // namespace surveylens

#endif  // SURVEYLENS_REPORT_HPP
