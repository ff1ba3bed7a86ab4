#include "surveylens/report.hpp"

#include <json.hpp>

namespace surveylens {

using Json = nlohmann::ordered_json;

std::string_view library_version() { return SURVEYLENS_VERSION; }

namespace {

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

Json stats_json(const ClusterStats& s) {
  Json j;
  j["size"] = s.size;
  j["min_words"] = s.min_words;
  j["max_words"] = s.max_words;
  j["avg_words"] = s.avg_words;
  return j;
}

ClusterStats stats_from(const Json& j, int cluster_id) {
  ClusterStats s;
  s.cluster_id = cluster_id;
  s.size = j.at("size").get<int>();
  s.min_words = j.at("min_words").get<int>();
  s.max_words = j.at("max_words").get<int>();
  s.avg_words = j.at("avg_words").get<double>();
  return s;
}

Json entries_json(const std::vector<WordcloudEntry>& entries) {
  Json arr = Json::array();
  for (const auto& e : entries) {
    Json j;
    j["token"] = e.token;
    j["cluster_id"] = e.cluster_id;
    j["weight"] = e.weight;
    arr.push_back(std::move(j));
  }
  return arr;
}

WordcloudScope scope_from(const std::string& s) {
  if (s == "cluster") return WordcloudScope::cluster;
  if (s == "unified") return WordcloudScope::unified;
  throw MalformedInput("unknown wordcloud scope \"" + s + "\"", 0);
}

Json to_json(const InsightReport& r) {
  Json j;
  j["version"] = r.version;
  j["generator"] = r.generator;
  j["mode"] = r.mode;

  Json& p = j["provider"];
  p["kind"] = r.provider.kind;
  p["model_id"] = r.provider.model_id;
  p["dimension"] = r.provider.dimension;
  p["seed"] = r.provider.seed;

  Json& c = j["config"];
  c["k_min"] = r.config.k_min;
  c["k_max"] = r.config.k_max;
  c["restarts"] = r.config.restarts;
  c["max_iterations"] = r.config.max_iterations;
  c["tolerance"] = r.config.tolerance;
  c["seed"] = r.config.seed;
  c["top_tokens"] = r.config.top_tokens;
  c["merge_threshold"] = r.config.merge_threshold;
  c["light_stemming"] = r.config.light_stemming;

  Json& responses = j["responses"] = Json::array();
  for (const auto& resp : r.responses) {
    Json e;
    e["id"] = resp.id;
    e["text"] = resp.text;
    responses.push_back(std::move(e));
  }

  if (r.k_selection) {
    Json& ks = j["k_selection"];
    ks["k_star"] = r.k_selection->k_star;
    ks["silhouette"] = r.k_selection->score;
    Json& trace = ks["trace"] = Json::array();
    for (const auto& s : r.k_selection->trace) {
      Json e;
      e["k"] = s.k;
      e["silhouette"] = s.score;
      trace.push_back(std::move(e));
    }
  } else {
    j["k_selection"] = nullptr;
  }

  Json& clusters = j["clusters"] = Json::array();
  for (const auto& cl : r.clusters) {
    Json e;
    e["cluster_id"] = cl.cluster_id;
    e["members"] = cl.members;
    e["rho"] = cl.rho;
    Json& a = e["annotation"];
    a["label"] = cl.annotation.label;
    a["no_tokens"] = cl.annotation.no_tokens;
    Json& prom = a["prominent"] = Json::array();
    for (const auto& tw : cl.annotation.prominent) {
      Json t;
      t["token"] = tw.token;
      t["weight"] = tw.weight;
      prom.push_back(std::move(t));
    }
    e["stats"] = stats_json(cl.stats);
    clusters.push_back(std::move(e));
  }

  j["centroid_correlation"] = r.centroid_correlation;
  Json& merges = j["merge_suggestions"] = Json::array();
  for (const auto& m : r.merge_suggestions) {
    Json e;
    e["clusters"] = {m.first, m.second};
    e["similarity"] = m.similarity;
    merges.push_back(std::move(e));
  }

  if (r.assignment) {
    Json& as = j["assignment"];
    Json& rows = as["responses"] = Json::array();
    for (const auto& a : r.assignment->responses) {
      Json e;
      e["id"] = a.id;
      e["label"] = a.label;
      e["similarity"] = a.similarity;
      e["low_similarity"] = a.low_similarity;
      rows.push_back(std::move(e));
    }
    Json& labels = as["labels"] = Json::array();
    for (const auto& l : r.assignment->labels) {
      Json e;
      e["label"] = l.label;
      e["title"] = l.title;
      e["count"] = l.count;
      e["mean_similarity"] = optional_json(l.mean);
      e["std_similarity"] = optional_json(l.std);
      e["members"] = l.members;
      e["stats"] = l.count > 0 ? stats_json(l.stats) : Json(nullptr);
      labels.push_back(std::move(e));
    }
  } else {
    j["assignment"] = nullptr;
  }

  j["palette"] = r.palette;
  Json& clouds = j["wordclouds"] = Json::array();
  for (const auto& w : r.wordclouds) {
    Json e;
    e["scope"] = std::string(to_string(w.scope));
    e["cluster_id"] = optional_json(w.cluster_id);
    e["file"] = w.file;
    e["entries"] = entries_json(w.entries);
    clouds.push_back(std::move(e));
  }
  return j;
}

InsightReport from_json(const Json& j) {
  InsightReport r;
  r.version = j.at("version").get<std::string>();
  r.generator = j.at("generator").get<std::string>();
  r.mode = j.at("mode").get<std::string>();

  const Json& p = j.at("provider");
  r.provider.kind = p.at("kind").get<std::string>();
  r.provider.model_id = p.at("model_id").get<std::string>();
  r.provider.dimension = p.at("dimension").get<std::int64_t>();
  r.provider.seed = p.at("seed").get<std::uint64_t>();

  const Json& c = j.at("config");
  r.config.k_min = c.at("k_min").get<int>();
  r.config.k_max = c.at("k_max").get<int>();
  r.config.restarts = c.at("restarts").get<int>();
  r.config.max_iterations = c.at("max_iterations").get<int>();
  r.config.tolerance = c.at("tolerance").get<double>();
  r.config.seed = c.at("seed").get<std::uint64_t>();
  r.config.top_tokens = c.at("top_tokens").get<int>();
  r.config.merge_threshold = c.at("merge_threshold").get<double>();
  r.config.light_stemming = c.at("light_stemming").get<bool>();

  for (const auto& e : j.at("responses")) {
    r.responses.push_back({e.at("id").get<std::int64_t>(), e.at("text").get<std::string>()});
  }

  if (const Json& ks = j.at("k_selection"); !ks.is_null()) {
    KSelectionReport sel;
    sel.k_star = ks.at("k_star").get<int>();
    sel.score = ks.at("silhouette").get<double>();
    for (const auto& e : ks.at("trace")) {
      sel.trace.push_back({e.at("k").get<int>(), e.at("silhouette").get<double>()});
    }
    r.k_selection = std::move(sel);
  }

  for (const auto& e : j.at("clusters")) {
    ClusterReport cl;
    cl.cluster_id = e.at("cluster_id").get<int>();
    cl.members = e.at("members").get<std::vector<std::int64_t>>();
    cl.rho = e.at("rho").get<double>();
    const Json& a = e.at("annotation");
    cl.annotation.cluster_id = cl.cluster_id;
    cl.annotation.label = a.at("label").get<std::string>();
    cl.annotation.no_tokens = a.at("no_tokens").get<bool>();
    for (const auto& t : a.at("prominent")) {
      cl.annotation.prominent.push_back(
          {t.at("token").get<std::string>(), t.at("weight").get<double>()});
    }
    cl.stats = stats_from(e.at("stats"), cl.cluster_id);
    r.clusters.push_back(std::move(cl));
  }

  r.centroid_correlation = j.at("centroid_correlation").get<std::vector<std::vector<double>>>();
  for (const auto& e : j.at("merge_suggestions")) {
    const auto pair = e.at("clusters").get<std::vector<int>>();
    if (pair.size() != 2) throw MalformedInput("merge suggestion needs two clusters", 0);
    r.merge_suggestions.push_back({pair[0], pair[1], e.at("similarity").get<double>()});
  }

  if (const Json& as = j.at("assignment"); !as.is_null()) {
    AssignmentReport ar;
    for (const auto& e : as.at("responses")) {
      ar.responses.push_back({e.at("id").get<std::int64_t>(), e.at("label").get<int>(),
                              e.at("similarity").get<double>(),
                              e.at("low_similarity").get<bool>()});
    }
    for (const auto& e : as.at("labels")) {
      LabelReport l;
      l.label = e.at("label").get<int>();
      l.title = e.at("title").get<std::string>();
      l.count = e.at("count").get<int>();
      l.mean = optional_from<double>(e.at("mean_similarity"));
      l.std = optional_from<double>(e.at("std_similarity"));
      l.members = e.at("members").get<std::vector<std::int64_t>>();
      if (const Json& s = e.at("stats"); !s.is_null()) l.stats = stats_from(s, l.label);
      ar.labels.push_back(std::move(l));
    }
    r.assignment = std::move(ar);
  }

  r.palette = j.at("palette").get<std::vector<std::string>>();
  for (const auto& e : j.at("wordclouds")) {
    WordcloudReport w;
    w.scope = scope_from(e.at("scope").get<std::string>());
    w.cluster_id = optional_from<int>(e.at("cluster_id"));
    w.file = e.at("file").get<std::string>();
    for (const auto& x : e.at("entries")) {
      w.entries.push_back({x.at("token").get<std::string>(), x.at("cluster_id").get<int>(),
                           x.at("weight").get<double>(), w.scope});
    }
    r.wordclouds.push_back(std::move(w));
  }
  return r;
}

}  // namespace

std::string serialize_report(const InsightReport& report) {
  return to_json(report).dump(2) + "\n";
}

InsightReport parse_report(std::string_view json_text) {
  try {
    return from_json(Json::parse(json_text));
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("invalid report: ") + e.what(), 0);
  }
}

}  // namespace surveylens
