#ifndef SURVEYLENS_TEXT_HPP
#define SURVEYLENS_TEXT_HPP

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace surveylens {

/// Lowercases ASCII letters and splits on every byte that is not an ASCII
/// alphanumeric. Bytes >= 0x80 count as word characters so UTF-8 words stay
/// whole. Empty pieces are dropped.
std::vector<std::string> split_words(std::string_view text);

/// Splits on ASCII whitespace; the raw word count used for response statistics.
std::vector<std::string_view> whitespace_tokens(std::string_view text);

/// Strips leading and trailing ASCII whitespace.
std::string_view trim(std::string_view s);

/// Number of UTF-8 code points in `s`.
std::size_t utf8_length(std::string_view s);

/// Contents of data/stopwords_en.txt, compiled in.
std::string_view bundled_stopword_text();

class StopwordList {
 public:
  StopwordList() = default;
  /// One word per line; blank lines ignored; entries lowercased.
  static StopwordList parse(std::string_view text);
  static const StopwordList& bundled();

  bool contains(std::string_view word) const { return words_.contains(std::string(word)); }
  std::size_t size() const { return words_.size(); }

 private:
  std::set<std::string> words_;
};

}  // namespace surveylens

#endif  // SURVEYLENS_TEXT_HPP
