#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bkit {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Points with modulus above this are rejected; keeps boundary-limit probes
// representable while staying strictly inside the disk.
inline constexpr double kMaxDiskModulus = 1.0 - 1e-9;

// ---------------------------------------------------------------------------
// Error taxonomy. Everything derives from std exceptions so callers that do
// not care about the distinction can catch std::exception.
// ---------------------------------------------------------------------------

struct argument_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// A symbol was rejected because it is not a self-map of the disk; carries the
// offending sampled margin.
struct symbol_rejection : domain_error {
  double margin;
  explicit symbol_rejection(double m)
      : domain_error("symbol rejected: self-map margin " + std::to_string(m) +
                     " is not positive"),
        margin(m) {}
};

// A truncation cannot deliver the requested accuracy; carries the degree that
// would suffice (0 when no finite degree was found under the search cap).
struct precision_error : std::runtime_error {
  int required_degree;
  precision_error(const std::string& what, int required)
      : std::runtime_error(what), required_degree(required) {}
};

struct unsupported_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A witness/certificate search exhausted its grid without success.
struct search_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iterative numerical routine (eigensolver) failed to converge.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Spaces and points
// ---------------------------------------------------------------------------

// The function space over the polydisk: dimension d >= 1 and integer weight
// gamma >= 1 (gamma = 1 Hardy, gamma = 2 Bergman). Integer gamma is essential:
// the product rule (ab)^gamma = a^gamma b^gamma used throughout holds for
// complex a, b only when gamma is a non-negative integer.
struct SpaceSpec {
  int dim = 1;
  int gamma = 1;

  SpaceSpec(int d, int g) : dim(d), gamma(g) {
    if (d < 1) throw argument_error("SpaceSpec: dim must be >= 1");
    if (g < 1) throw argument_error("SpaceSpec: gamma must be >= 1");
  }
};

// A point strictly inside the unit disk.
class DiskPoint {
 public:
  explicit DiskPoint(Complex v) : value_(v) {
    if (!(std::abs(v) <= kMaxDiskModulus))
      throw domain_error("DiskPoint: |w| must be <= 1 - 1e-9, got |w| = " +
                         std::to_string(std::abs(v)));
  }
  Complex value() const { return value_; }

 private:
  Complex value_;
};

// A point in the open polydisk D^d.
class PolyPoint {
 public:
  explicit PolyPoint(std::vector<Complex> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw argument_error("PolyPoint: empty coordinate list");
    for (Complex c : coords_) {
      if (!(std::abs(c) <= kMaxDiskModulus))
        throw domain_error("PolyPoint: coordinate outside the disk");
    }
  }
  explicit PolyPoint(Complex z) : PolyPoint(std::vector<Complex>{z}) {}
  explicit PolyPoint(DiskPoint z) : PolyPoint(z.value()) {}

  int dim() const { return static_cast<int>(coords_.size()); }
  Complex operator[](int j) const { return coords_[static_cast<size_t>(j)]; }
  const std::vector<Complex>& coords() const { return coords_; }

 private:
  std::vector<Complex> coords_;
};

// Differentiation multi-index; one non-negative order per coordinate.
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<int> orders) : orders_(std::move(orders)) {
    if (orders_.empty()) throw argument_error("MultiIndex: empty order list");
    for (int n : orders_)
      if (n < 0) throw argument_error("MultiIndex: orders must be >= 0");
  }
  static MultiIndex zeros(int dim) { return MultiIndex(std::vector<int>(static_cast<size_t>(dim), 0)); }

  int dim() const { return static_cast<int>(orders_.size()); }
  int operator[](int j) const { return orders_[static_cast<size_t>(j)]; }
  const std::vector<int>& orders() const { return orders_; }

 private:
  std::vector<int> orders_;
};

inline void require_dim_match(const SpaceSpec& space, int got, const char* what) {
  if (space.dim != got)
    throw argument_error(std::string(what) + ": dimension mismatch (space dim " +
                         std::to_string(space.dim) + ", got " + std::to_string(got) + ")");
}

}  // namespace bkit
