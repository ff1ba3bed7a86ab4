#ifndef SURVEYLENS_ERRORS_HPP
#define SURVEYLENS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace surveylens {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric preconditions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};
class ZeroVector : public Error {
 public:
  using Error::Error;
};
class EmptyInput : public Error {
 public:
  using Error::Error;
};
class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// Anything that goes wrong while obtaining embeddings. The CLI maps the whole
/// family to a single exit code.
class ProviderError : public Error {
 public:
  using Error::Error;
};
class CacheMiss : public ProviderError {
 public:
  explicit CacheMiss(std::string text)
      : ProviderError("text not present in embedding cache: \"" + text + "\""),
        text_(std::move(text)) {}
  const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
};
class ServiceUnavailable : public ProviderError {
 public:
  using ProviderError::ProviderError;
};
class MalformedCacheFile : public ProviderError {
 public:
  using ProviderError::ProviderError;
};
class IoError : public ProviderError {
 public:
  using ProviderError::ProviderError;
};

// Clustering.
class KTooLarge : public Error {
 public:
  using Error::Error;
};
class TooFewSamples : public Error {
 public:
  using Error::Error;
};
class SingleCluster : public Error {
 public:
  using Error::Error;
};
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

// Assignment / insights.
class MismatchedInputs : public Error {
 public:
  using Error::Error;
};
class SizeSumMismatch : public Error {
 public:
  using Error::Error;
};
class EmptyCluster : public Error {
 public:
  using Error::Error;
};
class EmptyWordcloud : public Error {
 public:
  using Error::Error;
};

/// Survey input that cannot be parsed. `line()` is 1-based, 0 when the
/// problem is not tied to a line.
class MalformedInput : public Error {
 public:
  MalformedInput(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace surveylens

#endif  // SURVEYLENS_ERRORS_HPP
