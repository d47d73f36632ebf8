#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dlcc {

// Base of every error raised by the library. Callers that only care about
// "something went wrong" catch this; the CLI maps it to exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed Uri, malformed constructor expression, unbalanced examples.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Syntax error in a line-oriented input file; carries the 1-based line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// N-Triples term outside the supported IRI-only subset (literal, blank node).
class UnsupportedTermError : public ParseError {
 public:
  using ParseError::ParseError;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

class RenderError : public Error {
 public:
  using Error::Error;
};

class TransportError : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Embedding file format problems.
class FormatError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Per-cell evaluation failure (e.g. a class vanished after dropping
// examples). Recorded in the report, not fatal to a suite run.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// A gold-standard URI has no vector and the policy is `error`. Fatal.
class MissingVectorError : public Error {
 public:
  explicit MissingVectorError(const std::string& uri)
      : Error("no embedding vector for " + uri), uri_(uri) {}
  const std::string& uri() const noexcept { return uri_; }

 private:
  std::string uri_;
};

}  // namespace dlcc
