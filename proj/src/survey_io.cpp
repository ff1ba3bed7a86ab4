#include "surveylens/survey_io.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "surveylens/text.hpp"

namespace surveylens {

namespace {

std::vector<std::string_view> split_lines(std::string_view contents) {
  if (contents.starts_with("\xEF\xBB\xBF")) contents.remove_prefix(3);
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    std::string_view line = contents.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

std::vector<Response> parse_text(std::string_view contents) {
  std::vector<Response> out;
  const auto lines = split_lines(contents);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto text = trim(lines[i]);
    if (text.empty()) throw MalformedInput("empty response", i + 1);
    out.push_back({static_cast<std::int64_t>(i + 1), std::string(text)});
  }
  return out;
}

std::vector<Response> parse_jsonl(std::string_view contents) {
  std::vector<Response> out;
  std::set<std::int64_t> seen;
  const auto lines = split_lines(contents);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    if (trim(lines[i]).empty()) throw MalformedInput("empty line", lineno);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::parse_error&) {
      throw MalformedInput("invalid JSON", lineno);
    }
    if (!j.is_object()) throw MalformedInput("expected a JSON object", lineno);
    if (!j.contains("text") || !j["text"].is_string()) {
      throw MalformedInput("missing string field \"text\"", lineno);
    }
    Response r;
    r.id = static_cast<std::int64_t>(lineno);
    if (j.contains("id")) {
      if (!j["id"].is_number_integer()) throw MalformedInput("\"id\" must be an integer", lineno);
      r.id = j["id"].get<std::int64_t>();
    }
    r.text = std::string(trim(j["text"].get<std::string>()));
    if (r.text.empty()) throw MalformedInput("empty response", lineno);
    if (!seen.insert(r.id).second) {
      throw MalformedInput("duplicate id " + std::to_string(r.id), lineno);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<std::string> SurveyInput::texts() const {
  std::vector<std::string> out;
  out.reserve(responses.size());
  for (const auto& r : responses) out.push_back(r.text);
  return out;
}

std::vector<Response> parse_responses(std::string_view contents, InputFormat format) {
  if (format == InputFormat::automatic) {
    const auto first = contents.find_first_not_of(" \t\r\n\xEF\xBB\xBF");
    format = first != std::string_view::npos && contents[first] == '{' ? InputFormat::jsonl
                                                                       : InputFormat::text;
  }
  auto out = format == InputFormat::jsonl ? parse_jsonl(contents) : parse_text(contents);
  if (out.empty()) throw MalformedInput("no responses", 0);
  return out;
}

std::vector<std::string> parse_titles(std::string_view contents) {
  std::vector<std::string> out;
  if (trim(contents).empty()) return out;
  const auto lines = split_lines(contents);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto title = trim(lines[i]);
    if (title.empty()) throw MalformedInput("empty title", i + 1);
    out.emplace_back(title);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput("cannot open " + path.string(), 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SurveyInput load_survey(const std::filesystem::path& path, InputFormat format) {
  if (format == InputFormat::automatic && path.extension() == ".jsonl") format = InputFormat::jsonl;
  SurveyInput input;
  input.responses = parse_responses(read_file(path), format);
  return input;
}

}  // namespace surveylens
