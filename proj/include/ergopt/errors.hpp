#ifndef ERGOPT_ERRORS_HPP
#define ERGOPT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace ergopt {

/// Input lies outside the map's domain (or the declared space).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Derivative requested at a point where it does not exist.
struct NotDifferentiable : std::runtime_error {
  explicit NotDifferentiable(const std::string& what) : std::runtime_error(what) {}
};

/// A bounded search ended without a qualifying result.
struct NotFound : std::runtime_error {
  explicit NotFound(const std::string& what) : std::runtime_error(what) {}
};

/// A configured enumeration cap was exceeded.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Preimage-tree search exceeded the node budget.
struct DepthOverflow : std::runtime_error {
  explicit DepthOverflow(const std::string& what) : std::runtime_error(what) {}
};

/// Graph has no directed cycle.
struct NoCycle : std::runtime_error {
  explicit NoCycle(const std::string& what) : std::runtime_error(what) {}
};

/// A requested point could not be covered by the constructed intervals.
struct CoverageGap : std::runtime_error {
  double point;
  explicit CoverageGap(double p, const std::string& what)
      : std::runtime_error(what), point(p) {}
};

/// The turning point cannot be separated from the requested set at this depth.
struct MarginTooSmall : std::runtime_error {
  explicit MarginTooSmall(const std::string& what) : std::runtime_error(what) {}
};

/// The base observable of a locking run is not maximized by the given orbit.
struct BaseNotMaximized : std::runtime_error {
  explicit BaseNotMaximized(const std::string& what) : std::runtime_error(what) {}
};

/// Constants needed for an a-priori bound are not available for this map.
struct ConstantsUnavailable : std::runtime_error {
  explicit ConstantsUnavailable(const std::string& what) : std::runtime_error(what) {}
};

/// Expression parse failure, with byte offset and the tokens that were expected.
struct ParseError : std::runtime_error {
  std::size_t offset;
  std::vector<std::string> expected;
  ParseError(std::size_t off, std::vector<std::string> exp, const std::string& what)
      : std::runtime_error(what), offset(off), expected(std::move(exp)) {}
};

}  // namespace ergopt

#endif
