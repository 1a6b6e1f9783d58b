#ifndef IUG_ERROR_HPP
#define IUG_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace iug {

/// Base class of every error raised by the library. `kind()` is a stable
/// machine-readable tag used by the CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& message)
      : Error("argument", message) {}
};

/// An enumeration or search exceeded its configured budget.
class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& message) : Error("budget", message) {}
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, double last_estimate)
      : Error("convergence", message), last_estimate_(last_estimate) {}
  double last_estimate() const noexcept { return last_estimate_; }

 private:
  double last_estimate_;
};

class IntegrityError : public Error {
 public:
  explicit IntegrityError(const std::string& message)
      : Error("integrity", message) {}
};

class ExhaustedSearchError : public Error {
 public:
  ExhaustedSearchError(const std::string& message, unsigned long long ceiling)
      : Error("exhausted_search", message), ceiling_(ceiling) {}
  unsigned long long ceiling() const noexcept { return ceiling_; }

 private:
  unsigned long long ceiling_;
};

class CertificationError : public Error {
 public:
  explicit CertificationError(const std::string& message)
      : Error("certification", message) {}
};

class InfeasibleBuildError : public Error {
 public:
  explicit InfeasibleBuildError(const std::string& message)
      : Error("infeasible_build", message) {}
};

class CodecError : public Error {
 public:
  explicit CodecError(const std::string& message) : Error("codec", message) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error("parse", message) {}
};

class DecompositionError : public Error {
 public:
  DecompositionError(const std::string& message,
                     std::vector<std::vector<int>> partial)
      : Error("decomposition", message), partial_(std::move(partial)) {}
  /// Per edge (in `Graph::edges()` order) the part indices assigned so far.
  const std::vector<std::vector<int>>& partial_assignment() const noexcept {
    return partial_;
  }

 private:
  std::vector<std::vector<int>> partial_;
};

class LayoutError : public Error {
 public:
  LayoutError(const std::string& message, std::size_t component)
      : Error("layout", message), component_(component) {}
  /// Smallest vertex id of the component that could not be laid out.
  std::size_t component() const noexcept { return component_; }

 private:
  std::size_t component_;
};

/// A verified property (H1-H4, schedule precondition, ...) failed. The
/// embedder's retry policy reacts to this error.
class PropertyFailureError : public Error {
 public:
  PropertyFailureError(std::string property, const std::string& message)
      : Error("property_failure", message), property_(std::move(property)) {}
  const std::string& property() const noexcept { return property_; }

 private:
  std::string property_;
};

class ScheduleOverflowError : public Error {
 public:
  ScheduleOverflowError(const std::string& message, std::size_t index,
                        std::size_t size, std::size_t cap)
      : Error("schedule_overflow", message),
        index_(index),
        size_(size),
        cap_(cap) {}
  std::size_t index() const noexcept { return index_; }
  std::size_t size() const noexcept { return size_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t index_;
  std::size_t size_;
  std::size_t cap_;
};

/// The embedder gave up after its retry rounds. `trail` lists, per round,
/// what was attempted and why it failed.
class EmbeddingFailureError : public Error {
 public:
  EmbeddingFailureError(const std::string& message, std::vector<std::string> trail)
      : Error("embedding_failure", message), trail_(std::move(trail)) {}
  const std::vector<std::string>& trail() const noexcept { return trail_; }

 private:
  std::vector<std::string> trail_;
};

}  // namespace iug

#endif  // IUG_ERROR_HPP
