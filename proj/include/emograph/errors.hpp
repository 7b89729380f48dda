#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace emograph {

/// Base class for every error thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed UTF-8 in corpus input. Carries the 1-based line number
/// (0 when the text did not come from a file) and the byte offset of
/// the offending sequence within the line.
class InvalidEncoding : public Error {
 public:
  InvalidEncoding(std::size_t line, std::size_t byte_offset)
      : Error("invalid UTF-8 at line " + std::to_string(line) + ", byte offset " +
              std::to_string(byte_offset)),
        line_(line),
        byte_offset_(byte_offset) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t line_;
  std::size_t byte_offset_;
};

class FileNotFound : public Error {
 public:
  explicit FileNotFound(const std::string& path) : Error("file not found: " + path) {}
};

/// Parse failure in a structured input file; carries the 1-based line number.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  explicit FormatError(const std::string& what) : Error(what), line_(0) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("corpus produced no co-occurrence edges") {}
};

class EmptyGraph : public Error {
 public:
  EmptyGraph() : Error("graph has no edges") {}
};

class EdgeNotFound : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class VocabularyTooLarge : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

class UnknownToken : public Error {
 public:
  explicit UnknownToken(const std::string& token) : Error("unknown token: " + token) {}
};

class KOutOfRange : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class NoOverlap : public Error {
 public:
  using Error::Error;
};

class EmptyTestSet : public Error {
 public:
  EmptyTestSet() : Error("test set is empty") {}
};

class DegenerateTrainingSet : public Error {
 public:
  using Error::Error;
};

class ConfigInvalid : public Error {
 public:
  using Error::Error;
};

}  // namespace emograph
