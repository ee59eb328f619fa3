#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace circlekit {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

class InvalidVertexError : public Error {
 public:
  explicit InvalidVertexError(const std::string& message) : Error(message) {}
};

class NotAnEdgeError : public Error {
 public:
  explicit NotAnEdgeError(const std::string& message) : Error(message) {}
};

// A configured search bound (vertex count, orbit cap, candidate count) would
// be exceeded. Searches never truncate silently.
class BoundExceededError : public Error {
 public:
  explicit BoundExceededError(const std::string& message) : Error(message) {}
};

class OrbitOverflowError : public BoundExceededError {
 public:
  explicit OrbitOverflowError(const std::string& message)
      : BoundExceededError(message) {}
};

// An r-local complementation was requested on a multiset that is not
// independent or not r-incident.
class ValidityError : public Error {
 public:
  explicit ValidityError(const std::string& message) : Error(message) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& message) : Error(message) {}
};

// A property that must hold for every input (a proven statement) failed.
class TheoremViolation : public Error {
 public:
  explicit TheoremViolation(const std::string& message) : Error(message) {}
};

class EmbeddingError : public Error {
 public:
  explicit EmbeddingError(const std::string& message) : Error(message) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace circlekit
