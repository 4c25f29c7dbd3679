#include "bkit/kernels.hpp"

#include <cmath>
#include <limits>

namespace bkit {

Complex ipow(Complex z, int m) {
  if (m < 0) return 1.0 / ipow(z, -m);
  Complex acc(1.0, 0.0);
  Complex base = z;
  unsigned e = static_cast<unsigned>(m);
  while (e != 0) {
    if (e & 1u) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

double pochhammer(int g, int m) {
  if (m < 0) throw argument_error("pochhammer: m must be >= 0");
  double acc = 1.0;
  for (int i = 0; i < m; ++i) acc *= static_cast<double>(g + i);
  return acc;
}

std::optional<std::uint64_t> binomial_exact(int n, int k) {
  if (k < 0 || n < 0 || k > n) return std::nullopt;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i);
    acc /= static_cast<unsigned>(i);  // exact: prefix products of binomials are integers
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(acc);
}

double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  if (auto exact = binomial_exact(n, k)) return static_cast<double>(*exact);
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

Complex kernel_eval(const SpaceSpec& space, const PolyPoint& w, const PolyPoint& z) {
  require_dim_match(space, w.dim(), "kernel_eval(w)");
  require_dim_match(space, z.dim(), "kernel_eval(z)");
  Complex acc(1.0, 0.0);
  for (int j = 0; j < space.dim; ++j)
    acc *= ipow(1.0 - std::conj(w[j]) * z[j], -space.gamma);
  return acc;
}

double kernel_norm(const SpaceSpec& space, const PolyPoint& w) {
  require_dim_match(space, w.dim(), "kernel_norm");
  double acc = 1.0;
  for (int j = 0; j < space.dim; ++j) acc *= 1.0 - std::norm(w[j]);
  return std::pow(acc, -0.5 * space.gamma);
}

Complex normalized_kernel_eval(const SpaceSpec& space, const PolyPoint& w, const PolyPoint& z) {
  return kernel_eval(space, w, z) / kernel_norm(space, w);
}

Complex derivative_kernel_eval(const SpaceSpec& space, const MultiIndex& n, const PolyPoint& w,
                               const PolyPoint& z) {
  require_dim_match(space, n.dim(), "derivative_kernel_eval(n)");
  require_dim_match(space, w.dim(), "derivative_kernel_eval(w)");
  require_dim_match(space, z.dim(), "derivative_kernel_eval(z)");
  Complex acc(1.0, 0.0);
  for (int j = 0; j < space.dim; ++j) {
    acc *= pochhammer(space.gamma, n[j]) * ipow(z[j], n[j]) *
           ipow(1.0 - std::conj(w[j]) * z[j], -(space.gamma + n[j]));
  }
  return acc;
}

double basis_norm_sq(const SpaceSpec& space, const MultiIndex& k) {
  require_dim_match(space, k.dim(), "basis_norm_sq");
  double acc = 1.0;
  for (int j = 0; j < space.dim; ++j) acc /= binomial(k[j] + space.gamma - 1, k[j]);
  return acc;
}

Complex hgamma_inner(const SpaceSpec& space, const TruncatedSeries& f, const TruncatedSeries& g) {
  require_dim_match(space, 1, "hgamma_inner");
  if (f.degree() != g.degree())
    throw argument_error("hgamma_inner: degree mismatch");
  Complex acc(0.0, 0.0);
  for (int k = 0; k <= f.degree(); ++k)
    acc += f[k] * std::conj(g[k]) * basis_norm_sq(space, MultiIndex({k}));
  return acc;
}

Complex reproduce_eval(const SpaceSpec& space, const TruncatedSeries& f, const PolyPoint& w) {
  require_dim_match(space, 1, "reproduce_eval");
  require_dim_match(space, w.dim(), "reproduce_eval(w)");
  // Kernel coefficients binom(k+gamma-1, k) conj(w)^k; the pairing
  // sum_k f_k conj(coeff_k) ||z^k||^2 telescopes to f(w).
  Complex acc(0.0, 0.0);
  Complex wk(1.0, 0.0);
  for (int k = 0; k <= f.degree(); ++k) {
    double b = binomial(k + space.gamma - 1, k);
    acc += f[k] * (b * wk) * basis_norm_sq(space, MultiIndex({k}));
    wk *= w[0];
  }
  return acc;
}

TruncatedSeries derivative_kernel_series(const SpaceSpec& space, int n, Complex w, int degree) {
  require_dim_match(space, 1, "derivative_kernel_series");
  if (n < 0) throw argument_error("derivative_kernel_series: n must be >= 0");
  if (n > degree) throw argument_error("derivative_kernel_series: n exceeds degree");
  TruncatedSeries tail = binomial_negative_power(std::conj(w), space.gamma + n, degree);
  TruncatedSeries out(degree);
  double poch = pochhammer(space.gamma, n);
  for (int k = n; k <= degree; ++k) out[k] = poch * tail[k - n];
  return out;
}

}  // namespace bkit
