#pragma once

#include <stdexcept>
#include <string>

namespace hatepol {

// Base of every error raised on bad input data. The CLI maps these to exit 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameter or configuration supplied by the caller (CLI exit 1).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateIdError : public Error {
 public:
  explicit DuplicateIdError(std::string id)
      : Error("duplicate tweet id '" + id + "'"), id_(std::move(id)) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class SingleClassError : public Error {
 public:
  using Error::Error;
};

class ColumnMismatchError : public Error {
 public:
  using Error::Error;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class CorruptFileError : public Error {
 public:
  using Error::Error;
};

class VersionError : public Error {
 public:
  using Error::Error;
};

class RaggedRowsError : public Error {
 public:
  using Error::Error;
};

class IdMismatchError : public Error {
 public:
  using Error::Error;
};

class UndefinedCorrelationError : public Error {
 public:
  using Error::Error;
};

class FetchError : public Error {
 public:
  FetchError(std::string hashtag, const std::string& why)
      : Error("fetch failed for #" + hashtag + ": " + why), hashtag_(std::move(hashtag)) {}
  const std::string& hashtag() const noexcept { return hashtag_; }

 private:
  std::string hashtag_;
};

// Carries the pipeline stage (featurize/train/eval) an upstream error came from.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace hatepol
