#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace odg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed lexicon source. Line and column are 1-based.
class LexiconError : public Error {
 public:
  enum class Kind { Syntax, UnknownSymbol, DuplicateSlot, Invalid };

  LexiconError(Kind kind, std::size_t line, std::size_t column,
               const std::string& message);

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

/// Malformed structure/tree text or JSON.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnknownToken : public Error {
 public:
  explicit UnknownToken(const std::string& token);
  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

/// Stored word indices contradict the order induced by the domains.
class InconsistentOrder : public Error {
 public:
  using Error::Error;
};

/// The search explored more candidates than its configured cap.
class ResourceExceeded : public Error {
 public:
  explicit ResourceExceeded(std::size_t cap);
};

/// Input larger than the brute-force oracle accepts.
class TokenLimitExceeded : public Error {
 public:
  TokenLimitExceeded(std::size_t tokens, std::size_t limit);
};

}  // namespace odg
