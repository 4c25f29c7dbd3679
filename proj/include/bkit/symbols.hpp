#pragma once

#include <vector>

#include "bkit/series.hpp"
#include "bkit/types.hpp"

namespace bkit {

// Linear-fractional symbol phi(z) = b0 + b1 z / (1 - c z) with |c| < 1.
// b0 = phi(0) and b1 = phi'(0), which is why canonical symbol constructors
// can read their parameters straight off.
class LftSymbol {
 public:
  LftSymbol(Complex b0, Complex b1, Complex c);

  Complex b0() const { return b0_; }
  Complex b1() const { return b1_; }
  Complex c() const { return c_; }
  Complex value_at_zero() const { return b0_; }
  Complex derivative_at_zero() const { return b1_; }

  Complex eval(Complex z) const { return b0_ + b1_ * z / (1.0 - c_ * z); }

 private:
  Complex b0_, b1_, c_;
};

// Identity map z -> z.
LftSymbol identity_lft();

// Disk automorphism phi_alpha(z) = (z - alpha) / (1 - conj(alpha) z) in LFT
// form: b0 = -alpha, b1 = 1 - |alpha|^2, c = conj(alpha).
LftSymbol blaschke_lft(Complex alpha);

// Taylor coefficients of an LFT: [b0, b1, b1 c, b1 c^2, ...].
TruncatedSeries lft_to_series(const LftSymbol& phi, int degree);

// Closed-form weight a z^n (1 - c z)^(-s).
class WeightSymbol {
 public:
  WeightSymbol(Complex amplitude, int power, Complex pole, int exponent);

  Complex amplitude() const { return amplitude_; }
  int power() const { return power_; }
  Complex pole() const { return pole_; }
  int exponent() const { return exponent_; }

  Complex eval(Complex z) const;
  TruncatedSeries to_series(int degree) const;

 private:
  Complex amplitude_;
  int power_;
  Complex pole_;
  int exponent_;
};

// Analytic weight of the form symbol(z) * p(z) with p a polynomial (p == 1
// when the multiplier is empty). Covers every weight the library needs:
// canonical forms (p == 1), perturbed canonical forms, and plain polynomials.
class Weight {
 public:
  Weight();  // identically 1
  explicit Weight(WeightSymbol symbol);
  static Weight polynomial(std::vector<Complex> coeffs);

  // Returns this weight multiplied by the polynomial with the given
  // coefficients; used to build perturbed variants of canonical weights.
  Weight times_polynomial(std::vector<Complex> coeffs) const;

  Complex eval(Complex z) const;
  TruncatedSeries to_series(int degree) const;
  bool identically_zero() const;

 private:
  WeightSymbol symbol_;
  std::vector<Complex> multiplier_;  // empty means 1
};

// min over |z| = 0.999 ring samples of 1 - |phi(z)|; positive iff the sampled
// ring stays inside the disk. A necessary self-map gate, not sufficient.
double self_map_margin(const LftSymbol& phi, int samples = 512);
double self_map_margin(const TruncatedSeries& phi, int samples = 512);

}  // namespace bkit
