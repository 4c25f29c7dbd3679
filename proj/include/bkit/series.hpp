#pragma once

#include <vector>

#include "bkit/types.hpp"

namespace bkit {

// Truncated Taylor expansion about 0: coefficients a_0..a_N for a fixed
// degree N. All entries are finite; operations on mismatched degrees throw.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int degree);
  explicit TruncatedSeries(std::vector<Complex> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Complex operator[](int k) const { return coeffs_[static_cast<size_t>(k)]; }
  Complex& operator[](int k) { return coeffs_[static_cast<size_t>(k)]; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  // Horner evaluation of the truncated polynomial.
  Complex eval(Complex z) const;

 private:
  std::vector<Complex> coeffs_;
};

// Cauchy product truncated to the common degree.
TruncatedSeries series_mul(const TruncatedSeries& f, const TruncatedSeries& g);

// Coefficient shift-down k*a_k; degree drops by one, zero-padded back so the
// result stays composable with its inputs.
TruncatedSeries series_derivative(const TruncatedSeries& f);

// f(phi(z)) in the jet algebra via Horner: exact through the truncation
// degree for polynomial f. Requires |phi(0)| < 1; phi(0) != 0 is allowed.
TruncatedSeries series_compose(const TruncatedSeries& f, const TruncatedSeries& phi);

// Expansion of (1 - c z)^(-s): coefficients binom(k+s-1, k) c^k, built by the
// exact ratio recurrence so the s = 1 case telescopes exactly against (1 - c z).
TruncatedSeries binomial_negative_power(Complex c, int s, int degree);

}  // namespace bkit
