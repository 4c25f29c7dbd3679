#pragma once

#include <optional>

#include "bkit/series.hpp"
#include "bkit/types.hpp"

namespace bkit {

// z^m for integer m (negative allowed) by binary exponentiation; never calls
// std::pow, so integer powers stay exact products.
Complex ipow(Complex z, int m);

// Rising factorial (g)_m = g (g+1) ... (g+m-1), with (g)_0 = 1.
double pochhammer(int g, int m);

// binom(n, k) exactly in a 64-bit integer when it fits.
std::optional<std::uint64_t> binomial_exact(int n, int k);

// binom(n, k) as a double: exact integer path when representable, log-domain
// (lgamma) beyond, relative error < 1e-13 there.
double binomial(int n, int k);

// Reproducing kernel K_w(z) = prod_j (1 - conj(w_j) z_j)^(-gamma).
Complex kernel_eval(const SpaceSpec& space, const PolyPoint& w, const PolyPoint& z);

// ||K_w|| = prod_j (1 - |w_j|^2)^(-gamma/2); note <K_w, K_w> = ||K_w||^2.
double kernel_norm(const SpaceSpec& space, const PolyPoint& w);

// Normalized kernel k^_w(z) = K_w(z) / ||K_w||; its value at z = w is ||K_w||.
Complex normalized_kernel_eval(const SpaceSpec& space, const PolyPoint& w, const PolyPoint& z);

// Derivative-reproducing kernel
//   K^[n]_w(z) = prod_j (gamma)_{n_j} z_j^{n_j} (1 - conj(w_j) z_j)^(-gamma-n_j),
// satisfying <f, K^[n]_w> = f^(n)(w).
Complex derivative_kernel_eval(const SpaceSpec& space, const MultiIndex& n, const PolyPoint& w,
                               const PolyPoint& z);

// Squared norm of the monomial z^k: prod_j 1 / binom(k_j + gamma - 1, k_j).
// Exact rational (integer denominator) whenever the binomials fit 64 bits.
double basis_norm_sq(const SpaceSpec& space, const MultiIndex& k);

// dim = 1 inner product <f, g> = sum_k f_k conj(g_k) ||z^k||^2 on truncated
// coefficient vectors.
Complex hgamma_inner(const SpaceSpec& space, const TruncatedSeries& f, const TruncatedSeries& g);

// Point evaluation of a dim = 1 truncated series routed through the
// orthonormal expansion, <f, K_w>: equals direct evaluation but exercises the
// basis norms, which makes it an independent cross-check route.
Complex reproduce_eval(const SpaceSpec& space, const TruncatedSeries& f, const PolyPoint& w);

// dim = 1 coefficient expansion of K^[n]_w to the given degree.
TruncatedSeries derivative_kernel_series(const SpaceSpec& space, int n, Complex w, int degree);

}  // namespace bkit
