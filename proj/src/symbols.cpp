#include "bkit/symbols.hpp"

#include <cmath>
#include <limits>

#include "bkit/kernels.hpp"

namespace bkit {

LftSymbol::LftSymbol(Complex b0, Complex b1, Complex c) : b0_(b0), b1_(b1), c_(c) {
  if (!(std::abs(c) < 1.0)) throw argument_error("LftSymbol: |c| must be < 1");
}

LftSymbol identity_lft() { return LftSymbol(0.0, 1.0, 0.0); }

LftSymbol blaschke_lft(Complex alpha) {
  if (!(std::abs(alpha) < 1.0)) throw argument_error("blaschke_lft: |alpha| must be < 1");
  return LftSymbol(-alpha, 1.0 - std::norm(alpha), std::conj(alpha));
}

TruncatedSeries lft_to_series(const LftSymbol& phi, int degree) {
  TruncatedSeries out(degree);
  out[0] = phi.b0();
  Complex coeff = phi.b1();
  for (int k = 1; k <= degree; ++k) {
    out[k] = coeff;
    coeff *= phi.c();
  }
  return out;
}

WeightSymbol::WeightSymbol(Complex amplitude, int power, Complex pole, int exponent)
    : amplitude_(amplitude), power_(power), pole_(pole), exponent_(exponent) {
  if (power < 0) throw argument_error("WeightSymbol: power must be >= 0");
  if (exponent < 1) throw argument_error("WeightSymbol: exponent must be >= 1");
  if (!(std::abs(pole) < 1.0)) throw argument_error("WeightSymbol: |pole| must be < 1");
}

Complex WeightSymbol::eval(Complex z) const {
  return amplitude_ * ipow(z, power_) * ipow(1.0 - pole_ * z, -exponent_);
}

TruncatedSeries WeightSymbol::to_series(int degree) const {
  if (power_ > degree)
    return TruncatedSeries(degree);  // all retained coefficients vanish
  TruncatedSeries tail = binomial_negative_power(pole_, exponent_, degree);
  TruncatedSeries out(degree);
  for (int k = power_; k <= degree; ++k) out[k] = amplitude_ * tail[k - power_];
  return out;
}

Weight::Weight() : symbol_(1.0, 0, 0.0, 1) {}

Weight::Weight(WeightSymbol symbol) : symbol_(symbol) {}

Weight Weight::polynomial(std::vector<Complex> coeffs) {
  if (coeffs.empty()) throw argument_error("Weight::polynomial: empty coefficient list");
  Weight w;
  w.multiplier_ = std::move(coeffs);
  return w;
}

Weight Weight::times_polynomial(std::vector<Complex> coeffs) const {
  if (coeffs.empty()) throw argument_error("Weight::times_polynomial: empty coefficient list");
  Weight out = *this;
  if (out.multiplier_.empty()) {
    out.multiplier_ = std::move(coeffs);
    return out;
  }
  // Polynomial product of the two multipliers.
  std::vector<Complex> prod(out.multiplier_.size() + coeffs.size() - 1, Complex(0.0, 0.0));
  for (size_t i = 0; i < out.multiplier_.size(); ++i)
    for (size_t j = 0; j < coeffs.size(); ++j) prod[i + j] += out.multiplier_[i] * coeffs[j];
  out.multiplier_ = std::move(prod);
  return out;
}

Complex Weight::eval(Complex z) const {
  Complex v = symbol_.eval(z);
  if (multiplier_.empty()) return v;
  Complex p(0.0, 0.0);
  for (size_t k = multiplier_.size(); k-- > 0;) p = p * z + multiplier_[k];
  return v * p;
}

TruncatedSeries Weight::to_series(int degree) const {
  TruncatedSeries base = symbol_.to_series(degree);
  if (multiplier_.empty()) return base;
  TruncatedSeries p(degree);
  for (size_t k = 0; k < multiplier_.size() && k <= static_cast<size_t>(degree); ++k)
    p[static_cast<int>(k)] = multiplier_[k];
  return series_mul(base, p);
}

bool Weight::identically_zero() const {
  if (symbol_.amplitude() == Complex(0.0, 0.0)) return true;
  if (multiplier_.empty()) return false;
  for (const Complex& c : multiplier_)
    if (c != Complex(0.0, 0.0)) return false;
  return true;
}

namespace {
constexpr double kMarginRingRadius = 0.999;

template <typename Eval>
double sampled_margin(Eval&& phi, int samples) {
  if (samples < 64) throw argument_error("self_map_margin: need at least 64 samples");
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    double theta = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(samples);
    Complex z = kMarginRingRadius * Complex(std::cos(theta), std::sin(theta));
    margin = std::min(margin, 1.0 - std::abs(phi(z)));
  }
  return margin;
}
}  // namespace

double self_map_margin(const LftSymbol& phi, int samples) {
  return sampled_margin([&](Complex z) { return phi.eval(z); }, samples);
}

double self_map_margin(const TruncatedSeries& phi, int samples) {
  return sampled_margin([&](Complex z) { return phi.eval(z); }, samples);
}

}  // namespace bkit
