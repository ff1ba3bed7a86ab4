#include "surveylens/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>

#include "surveylens/pipeline.hpp"
#include "surveylens/survey_io.hpp"

namespace surveylens {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string input;
  std::string titles;
  std::string format = "auto";
  std::string embedder = "hash";
  Eigen::Index dim = kDefaultDimension;
  std::uint64_t seed = 42;
  int k_min = 2;
  int k_max = 0;  // 0: min(20, m - 1)
  int restarts = 10;
  int top_tokens = kDefaultTopTokens;
  double merge_threshold = kDefaultMergeThreshold;
  bool light_stemming = false;
  std::string out;
  std::string svg_dir;
  std::string report;
};

/// Thrown for failures that map straight onto an exit code.
struct Exit {
  int code;
  std::string message;
};

InputFormat parse_format(const std::string& f) {
  if (f == "auto") return InputFormat::automatic;
  if (f == "jsonl") return InputFormat::jsonl;
  if (f == "text") return InputFormat::text;
  throw Exit{kExitUsage, "unknown --format \"" + f + "\""};
}

void write_file(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << contents) || !out.flush()) {
    throw Exit{kExitFailure, "cannot write " + path.string()};
  }
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--input", o.input, "Responses: plain text (one per line) or JSONL")->required();
  cmd->add_option("--format", o.format, "Input format: auto, jsonl or text")
      ->check(CLI::IsMember({"auto", "jsonl", "text"}));
  cmd->add_option("--embedder", o.embedder, "hash | cache:PATH | service:URL");
  cmd->add_option("--dim", o.dim, "Embedding dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Seed for the hash embedder and k-means");
  cmd->add_option("--out", o.out, "Report JSON path (stdout when omitted)");
}

std::unique_ptr<EmbeddingProvider> provider_for(const Options& o, bool dim_given) {
  const std::string_view spec = o.embedder;
  if (!(spec == "hash" || (spec.starts_with("cache:") && spec.size() > 6) ||
        (spec.starts_with("service:") && spec.size() > 8))) {
    throw Exit{kExitUsage, "invalid --embedder \"" + o.embedder +
                               "\" (expected hash, cache:PATH or service:URL)"};
  }
  if (spec == "hash" && o.dim < 2) throw Exit{kExitUsage, "--dim must be at least 2"};
  try {
    return make_provider(spec, o.dim, o.seed, dim_given);
  } catch (const std::invalid_argument& e) {
    throw Exit{kExitUsage, e.what()};
  }
}

void emit(const Options& o, const InsightReport& report, std::ostream& out) {
  const std::string json = serialize_report(report);
  fs::path svg_dir;
  if (!o.svg_dir.empty()) {
    svg_dir = o.svg_dir;
  } else if (!o.out.empty()) {
    svg_dir = fs::path(o.out).parent_path();
    if (svg_dir.empty()) svg_dir = ".";
  }
  std::vector<std::pair<std::string, std::string>> svgs;
  if (!svg_dir.empty()) svgs = render_report_svgs(report);

  if (o.out.empty()) {
    out << json;
  } else {
    write_file(o.out, json);
  }
  for (const auto& [name, svg] : svgs) write_file(svg_dir / name, svg);
}

int run_cluster(const Options& o, bool dim_given, std::ostream& out) {
  SurveyInput input = load_survey(o.input, parse_format(o.format));
  if (input.responses.size() < 3) {
    throw Exit{kExitTooFewSamples, "clustering needs at least 3 responses, got " +
                                       std::to_string(input.responses.size())};
  }
  PipelineOptions opts;
  opts.clustering.k_min = o.k_min;
  if (o.k_max > 0) opts.clustering.k_max = o.k_max;
  opts.clustering.seed = o.seed;
  opts.clustering.restarts = o.restarts;
  opts.top_tokens = o.top_tokens;
  opts.merge_threshold = o.merge_threshold;
  opts.preprocess.light_stemming = o.light_stemming;
  try {
    k_range(static_cast<Eigen::Index>(input.responses.size()), opts.clustering);
  } catch (const InvalidConfig& e) {
    throw Exit{kExitUsage, e.what()};
  }
  const auto provider = provider_for(o, dim_given);
  emit(o, run_cluster_pipeline(input, *provider, opts), out);
  return kExitOk;
}

int run_assign(const Options& o, bool dim_given, std::ostream& out) {
  SurveyInput input = load_survey(o.input, parse_format(o.format));
  input.titles = parse_titles(read_file(o.titles));
  if (input.titles.empty()) throw Exit{kExitNoTitles, "titles file " + o.titles + " is empty"};
  const auto provider = provider_for(o, dim_given);
  PipelineOptions opts;
  opts.clustering.seed = o.seed;
  opts.top_tokens = o.top_tokens;
  opts.merge_threshold = o.merge_threshold;
  emit(o, run_assign_pipeline(input, *provider, opts), out);
  return kExitOk;
}

int run_render(const Options& o) {
  const InsightReport report = parse_report(read_file(o.report));
  const auto svgs = render_report_svgs(report);
  for (const auto& [name, svg] : svgs) write_file(fs::path(o.svg_dir) / name, svg);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cluster, label and summarise open-ended survey responses", "surveylens"};
  app.set_version_flag("--version", "surveylens " + std::string(library_version()) +
                                        " (report " + std::string(kReportVersion) + ")");
  app.require_subcommand(1);

  Options o;
  auto* cluster = app.add_subcommand("cluster", "Cluster responses and pick k by silhouette");
  add_common(cluster, o);
  cluster->add_option("--k-min", o.k_min, "Smallest k to try")->check(CLI::Range(2, 1 << 20));
  cluster->add_option("--k-max", o.k_max, "Largest k to try (default min(20, m-1))")
      ->check(CLI::Range(2, 1 << 20));
  cluster->add_option("--restarts", o.restarts, "k-means restarts per k")
      ->check(CLI::PositiveNumber);
  cluster->add_option("--top-tokens", o.top_tokens, "Prominent tokens per cluster")
      ->check(CLI::PositiveNumber);
  cluster->add_option("--merge-threshold", o.merge_threshold,
                      "Centroid similarity at which a merge is suggested")
      ->check(CLI::Range(-1.0, 1.0));
  cluster->add_flag("--light-stemming", o.light_stemming,
                    "Fold plural tokens into their singular when both occur");
  cluster->add_option("--svg-dir", o.svg_dir, "Directory for wordcloud SVGs");

  auto* assign = app.add_subcommand("assign", "Assign responses to the most similar title");
  add_common(assign, o);
  assign->add_option("--titles", o.titles, "Titles, one per line")->required();
  assign->add_option("--svg-dir", o.svg_dir, "Directory for wordcloud SVGs");

  auto* render = app.add_subcommand("render", "Re-render the SVGs stored in a report");
  render->add_option("--report", o.report, "Report JSON")->required();
  render->add_option("--svg-dir", o.svg_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const bool dim_given =
      (cluster->parsed() && cluster->count("--dim") > 0) ||
      (assign->parsed() && assign->count("--dim") > 0);
  try {
    if (cluster->parsed()) return run_cluster(o, dim_given, out);
    if (assign->parsed()) return run_assign(o, dim_given, out);
    return run_render(o);
  } catch (const Exit& e) {
    err << "error: " << e.message << "\n";
    return e.code;
  } catch (const MalformedInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const TooFewSamples& e) {
    err << "error: " << e.what() << "\n";
    return kExitTooFewSamples;
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ProviderError& e) {
    err << "error: embedding provider: " << e.what() << "\n";
    return kExitProvider;
  } catch (const DimensionMismatch& e) {
    err << "error: embedding provider: " << e.what() << "\n";
    return kExitProvider;
  } catch (const ZeroVector& e) {
    err << "error: embedding provider: " << e.what() << "\n";
    return kExitProvider;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace surveylens
