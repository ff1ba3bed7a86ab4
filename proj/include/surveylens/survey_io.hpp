#ifndef SURVEYLENS_SURVEY_IO_HPP
#define SURVEYLENS_SURVEY_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "surveylens/errors.hpp"

namespace surveylens {

struct Response {
  std::int64_t id = 0;
  std::string text;  // trimmed, nonempty

  friend bool operator==(const Response&, const Response&) = default;
};

struct SurveyInput {
  std::vector<Response> responses;
  std::vector<std::string> titles;

  std::vector<std::string> texts() const;
};

enum class InputFormat { automatic, jsonl, text };

/// Plain text: one response per line, ids are 1-based line numbers.
/// JSONL: one `{"id": <int>, "text": "..."}` object per line; `id` defaults
/// to the line number. Whitespace-only lines and duplicate ids raise
/// MalformedInput naming the line. A trailing newline is not a line.
std::vector<Response> parse_responses(std::string_view contents, InputFormat format);

/// One title per line; an empty document yields no titles.
std::vector<std::string> parse_titles(std::string_view contents);

/// Reads the whole file; throws MalformedInput when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// `automatic` picks JSONL for a .jsonl extension or when the first
/// non-blank byte is '{'.
SurveyInput load_survey(const std::filesystem::path& path, InputFormat format = InputFormat::automatic);

}  // namespace surveylens

#endif  // SURVEYLENS_SURVEY_IO_HPP
