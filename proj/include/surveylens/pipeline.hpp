#ifndef SURVEYLENS_PIPELINE_HPP
#define SURVEYLENS_PIPELINE_HPP

#include <string>
#include <utility>
#include <vector>

#include "surveylens/annotation.hpp"
#include "surveylens/clustering.hpp"
#include "surveylens/providers.hpp"
#include "surveylens/report.hpp"

namespace surveylens {

struct PipelineOptions {
  ClusteringConfig clustering;
  int top_tokens = kDefaultTopTokens;
  double merge_threshold = kDefaultMergeThreshold;
  PreprocessOptions preprocess;
};

/// Embed, pick k by silhouette, annotate every cluster, and collect
/// wordclouds, statistics, centroid correlations and merge suggestions.
///
/// Clusters are numbered by decreasing size, ties by the position of their
/// first member in the input.
InsightReport run_cluster_pipeline(const SurveyInput& input, const EmbeddingProvider& provider,
                                   const PipelineOptions& options = {});

/// Embed responses and titles, assign each response to its most similar
/// title, and tabulate per-title similarity statistics.
InsightReport run_assign_pipeline(const SurveyInput& input, const EmbeddingProvider& provider,
                                  const PipelineOptions& options = {});

/// (file name, SVG document) for every wordcloud in the report.
std::vector<std::pair<std::string, std::string>> render_report_svgs(const InsightReport& report);

}  // namespace surveylens

#endif  // SURVEYLENS_PIPELINE_HPP
