#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace contactmax {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is the byte offset of the offending
/// token; `expected` lists the token classes that would have been accepted.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownIdentifierError : public Error {
 public:
  UnknownIdentifierError(std::size_t offset, std::string name);

  std::size_t offset() const { return offset_; }
  const std::string& name() const { return name_; }

 private:
  std::size_t offset_;
  std::string name_;
};

/// Evaluation left the natural domain of a node (sqrt of a negative number,
/// division by zero, non-finite result). `node` is the printed subexpression.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, std::string node);

  const std::string& node() const { return node_; }

 private:
  std::string node_;
};

/// Degree bookkeeping failures in the exterior algebra.
class DegreeError : public Error {
 public:
  using Error::Error;
};

/// Singular, indefinite or otherwise unusable metric at an audited point.
class MetricError : public Error {
 public:
  using Error::Error;
};

/// An operation's mathematical precondition does not hold on the samples.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace contactmax
