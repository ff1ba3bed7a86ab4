#include "surveylens/pipeline.hpp"

#include <algorithm>
#include <numeric>

#include "surveylens/assignment.hpp"
#include "surveylens/insights.hpp"
#include "surveylens/wordcloud_svg.hpp"

namespace surveylens {

namespace {

ProviderInfo provider_info(const EmbeddingProvider& provider) {
  return {std::string(to_string(provider.kind())), provider.model_id(),
          static_cast<std::int64_t>(provider.dimension()), provider.seed()};
}

RunConfig run_config(const PipelineOptions& o, int k_min, int k_max) {
  RunConfig c;
  c.k_min = k_min;
  c.k_max = k_max;
  c.restarts = o.clustering.restarts;
  c.max_iterations = o.clustering.max_iterations;
  c.tolerance = o.clustering.tolerance;
  c.seed = o.clustering.seed;
  c.top_tokens = o.top_tokens;
  c.merge_threshold = o.merge_threshold;
  c.light_stemming = o.preprocess.light_stemming;
  return c;
}

InsightReport report_skeleton(const SurveyInput& input, const EmbeddingProvider& provider,
                              std::string mode) {
  InsightReport r;
  r.generator = "surveylens " + std::string(library_version());
  r.mode = std::move(mode);
  r.provider = provider_info(provider);
  r.responses = input.responses;
  r.palette = default_palette();
  return r;
}

std::string cluster_svg_name(int cluster_id) {
  return "wordcloud_cluster_" + std::to_string(cluster_id) + ".svg";
}

}  // namespace

InsightReport run_cluster_pipeline(const SurveyInput& input, const EmbeddingProvider& provider,
                                   const PipelineOptions& options) {
  const auto m = static_cast<Eigen::Index>(input.responses.size());
  const auto [k_min, k_max] = k_range(m, options.clustering);
  ClusteringConfig cfg = options.clustering;
  cfg.k_max = k_max;

  const std::vector<std::string> texts = input.texts();
  const EmbeddingMatrix vectors = embed_texts(provider, texts);
  const auto selection = find_optimal_k(vectors, cfg);

  // Canonical numbering: size descending, then first member position.
  const int k = selection.k_star;
  std::vector<std::vector<Eigen::Index>> groups(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < m; ++i) {
    groups[static_cast<std::size_t>(selection.model.labels[static_cast<std::size_t>(i)])]
        .push_back(i);
  }
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });

  InsightReport report = report_skeleton(input, provider, "cluster");
  report.config = run_config(options, k_min, k_max);
  KSelectionReport ks;
  ks.k_star = k;
  ks.score = selection.scores.at(k);
  for (const auto& [kk, score] : selection.scores) ks.trace.push_back({kk, score});
  report.k_selection = std::move(ks);

  std::vector<std::size_t> sizes;
  std::vector<ClusterAnnotation> annotations;
  std::vector<std::pair<int, std::vector<std::string>>> member_texts;
  EmbeddingMatrix centroids(k, vectors.cols());
  for (int c = 0; c < k; ++c) {
    const auto& g = groups[static_cast<std::size_t>(c)];
    EmbeddingMatrix member_vectors(static_cast<Eigen::Index>(g.size()), vectors.cols());
    std::vector<std::string> sentences;
    for (std::size_t r = 0; r < g.size(); ++r) {
      member_vectors.row(static_cast<Eigen::Index>(r)) = vectors.row(g[r]);
      sentences.push_back(texts[static_cast<std::size_t>(g[r])]);
    }
    centroids.row(c) = mean_embedding(member_vectors).transpose();
    annotations.push_back(annotate_cluster(c, sentences, member_vectors, provider,
                                           options.top_tokens, options.preprocess));
    sizes.push_back(g.size());
    member_texts.emplace_back(c, std::move(sentences));
  }

  const auto rho = density_coefficients(sizes, static_cast<std::size_t>(m));
  const auto stats = cluster_stats(member_texts);
  for (int c = 0; c < k; ++c) {
    const auto sc = static_cast<std::size_t>(c);
    ClusterReport cl;
    cl.cluster_id = c;
    for (Eigen::Index i : groups[sc]) {
      cl.members.push_back(input.responses[static_cast<std::size_t>(i)].id);
    }
    cl.rho = rho.rho[sc];
    cl.annotation = annotations[sc];
    cl.stats = stats[sc];
    report.clusters.push_back(std::move(cl));
  }

  const auto corr = centroid_correlation(centroids, options.merge_threshold);
  report.centroid_correlation.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      report.centroid_correlation[static_cast<std::size_t>(i)].push_back(corr.matrix(i, j));
    }
  }
  report.merge_suggestions = suggest_merges(corr);

  for (const auto& ann : annotations) {
    auto entries = cluster_wordcloud(ann);
    if (entries.empty()) continue;
    report.wordclouds.push_back(
        {WordcloudScope::cluster, ann.cluster_id, cluster_svg_name(ann.cluster_id), entries});
  }
  auto unified = unified_wordcloud(annotations, rho);
  if (!unified.empty()) {
    report.wordclouds.push_back(
        {WordcloudScope::unified, std::nullopt, "wordcloud_unified.svg", std::move(unified)});
  }
  return report;
}

InsightReport run_assign_pipeline(const SurveyInput& input, const EmbeddingProvider& provider,
                                  const PipelineOptions& options) {
  if (input.responses.empty()) throw EmptyInput("no responses");
  if (input.titles.empty()) throw EmptyInput("no titles");
  const std::vector<std::string> texts = input.texts();
  const EmbeddingMatrix response_vectors = embed_texts(provider, texts);
  const EmbeddingMatrix title_vectors = embed_texts(provider, input.titles);
  const auto a = build_assignment_matrix(response_vectors, title_vectors);
  const auto result = assign_labels(a);
  const auto table = label_similarity_stats(a, result);

  InsightReport report = report_skeleton(input, provider, "assign");
  report.config = run_config(options, 0, 0);
  AssignmentReport ar;
  for (std::size_t i = 0; i < input.responses.size(); ++i) {
    ar.responses.push_back({input.responses[i].id, result.assigned[i], result.best[i],
                            static_cast<bool>(result.low_similarity[i])});
  }
  for (const auto& row : table) {
    LabelReport l;
    l.label = row.label;
    l.title = input.titles[static_cast<std::size_t>(row.label)];
    l.count = row.count;
    l.mean = row.mean;
    l.std = row.std;
    std::vector<std::string> members;
    for (std::size_t i = 0; i < input.responses.size(); ++i) {
      if (result.assigned[i] != row.label) continue;
      l.members.push_back(input.responses[i].id);
      members.push_back(input.responses[i].text);
    }
    if (!members.empty()) {
      const std::pair<int, std::vector<std::string>> bucket{row.label, std::move(members)};
      l.stats = cluster_stats(std::span(&bucket, 1)).front();
    }
    ar.labels.push_back(std::move(l));
  }
  report.assignment = std::move(ar);
  return report;
}

std::vector<std::pair<std::string, std::string>> render_report_svgs(const InsightReport& report) {
  const auto& palette = report.palette.empty() ? default_palette() : report.palette;
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& w : report.wordclouds) {
    out.emplace_back(w.file, render_wordcloud_svg(w.entries, palette));
  }
  return out;
}

}  // namespace surveylens
