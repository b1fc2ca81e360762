#pragma once

#include <stdexcept>
#include <string>

namespace nearconvex {

// Base class for all library errors that map to CLI exit code 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class EmptySetError : public Error {
 public:
  explicit EmptySetError(const std::string& what) : Error(what) {}
};

class EvalDomainError : public Error {
 public:
  explicit EvalDomainError(const std::string& what) : Error(what) {}
};

class OutOfDomainError : public Error {
 public:
  explicit OutOfDomainError(const std::string& what) : Error(what) {}
};

class NonPositiveScalarError : public Error {
 public:
  explicit NonPositiveScalarError(const std::string& what) : Error(what) {}
};

class QualificationError : public Error {
 public:
  explicit QualificationError(const std::string& what) : Error(what) {}
};

class NotInSumSubdifferentialError : public Error {
 public:
  explicit NotInSumSubdifferentialError(const std::string& what) : Error(what) {}
};

class PointNotInSetError : public Error {
 public:
  explicit PointNotInSetError(const std::string& what) : Error(what) {}
};

class NoSplitFoundError : public Error {
 public:
  explicit NoSplitFoundError(const std::string& what) : Error(what) {}
};

class InfeasibleIntersectionError : public Error {
 public:
  explicit InfeasibleIntersectionError(const std::string& what) : Error(what) {}
};

class InfeasiblePointError : public Error {
 public:
  explicit InfeasiblePointError(const std::string& what) : Error(what) {}
};

class NotEpsSolutionError : public Error {
 public:
  explicit NotEpsSolutionError(const std::string& what) : Error(what) {}
};

class NotExactSolutionError : public Error {
 public:
  explicit NotExactSolutionError(const std::string& what) : Error(what) {}
};

class ValueInfiniteError : public Error {
 public:
  explicit ValueInfiniteError(const std::string& what) : Error(what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

// Parse and validation failures map to CLI exit code 2.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& message)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + message),
        line_(line),
        col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nearconvex
