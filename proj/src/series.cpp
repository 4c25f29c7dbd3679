#include "bkit/series.hpp"

#include <cmath>

namespace bkit {

namespace {
void require_finite(const std::vector<Complex>& coeffs) {
  for (const Complex& c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw argument_error("TruncatedSeries: non-finite coefficient");
}

void require_same_degree(const TruncatedSeries& f, const TruncatedSeries& g, const char* what) {
  if (f.degree() != g.degree())
    throw argument_error(std::string(what) + ": degree mismatch (" +
                         std::to_string(f.degree()) + " vs " + std::to_string(g.degree()) + ")");
}
}  // namespace

TruncatedSeries::TruncatedSeries(int degree) {
  if (degree < 0) throw argument_error("TruncatedSeries: degree must be >= 0");
  coeffs_.assign(static_cast<size_t>(degree) + 1, Complex(0.0, 0.0));
}

TruncatedSeries::TruncatedSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw argument_error("TruncatedSeries: empty coefficient list");
  require_finite(coeffs_);
}

Complex TruncatedSeries::eval(Complex z) const {
  Complex acc(0.0, 0.0);
  for (int k = degree(); k >= 0; --k) acc = acc * z + coeffs_[static_cast<size_t>(k)];
  return acc;
}

TruncatedSeries series_mul(const TruncatedSeries& f, const TruncatedSeries& g) {
  require_same_degree(f, g, "series_mul");
  const int n = f.degree();
  TruncatedSeries out(n);
  for (int k = 0; k <= n; ++k) {
    Complex acc(0.0, 0.0);
    for (int i = 0; i <= k; ++i) acc += f[i] * g[k - i];
    out[k] = acc;
  }
  return out;
}

TruncatedSeries series_derivative(const TruncatedSeries& f) {
  const int n = f.degree();
  TruncatedSeries out(n);
  for (int k = 1; k <= n; ++k) out[k - 1] = static_cast<double>(k) * f[k];
  out[n] = Complex(0.0, 0.0);
  return out;
}

TruncatedSeries series_compose(const TruncatedSeries& f, const TruncatedSeries& phi) {
  require_same_degree(f, phi, "series_compose");
  if (!(std::abs(phi[0]) < 1.0))
    throw domain_error("series_compose: |phi(0)| must be < 1");
  const int n = f.degree();
  // Horner in the jet algebra: result = (...(a_n * phi + a_{n-1}) * phi + ...).
  TruncatedSeries acc(n);
  acc[0] = f[n];
  for (int k = n - 1; k >= 0; --k) {
    acc = series_mul(acc, phi);
    acc[0] += f[k];
  }
  return acc;
}

TruncatedSeries binomial_negative_power(Complex c, int s, int degree) {
  if (s < 1) throw argument_error("binomial_negative_power: s must be >= 1");
  if (!(std::abs(c) < 1.0))
    throw domain_error("binomial_negative_power: |c| must be < 1");
  TruncatedSeries out(degree);
  Complex coeff(1.0, 0.0);
  out[0] = coeff;
  for (int k = 1; k <= degree; ++k) {
    // binom(k+s-1, k) c^k = binom(k+s-2, k-1) c^(k-1) * c * (k+s-1)/k.
    coeff = coeff * c * (static_cast<double>(k + s - 1) / static_cast<double>(k));
    out[k] = coeff;
  }
  return out;
}

}  // namespace bkit
