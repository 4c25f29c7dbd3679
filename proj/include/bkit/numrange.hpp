#pragma once

#include <span>
#include <vector>

#include "bkit/berezin.hpp"
#include "bkit/finite_section.hpp"
#include "bkit/symbols.hpp"
#include "bkit/types.hpp"

namespace bkit {

// One summand C_{psi,phi} f = psi (f o phi) of a sum of weighted composition
// operators on the Hardy space.
struct CompositionTerm {
  Weight weight;
  LftSymbol map;
};

// Normalized-kernel diagonal value of M = sum_j C_{psi_j, phi_j} on H^2:
//   lambda_z = sum_j conj(psi_j(z)) (1 - |z|^2) / (1 - conj(z) phi_j(z)).
// Hardy space only (the closed form uses gamma = 1 kernels).
Complex numrange_point(std::span<const CompositionTerm> terms, DiskPoint z);

// |lambda_{r xi}| along the given radii; |xi| = 1. Vanishing magnitudes put 0
// in the closure of the numerical range.
std::vector<double> boundary_decay_probe(std::span<const CompositionTerm> terms, Complex xi,
                                         std::span<const double> radii);

// Support-function sweep: for each angle theta, the top eigenvector x of the
// Hermitian part of e^{-i theta} T yields the boundary point <T x, x>.
// Vertices come back in sweep (counterclockwise) order.
std::vector<Complex> numerical_range_hull(const Eigen::MatrixXcd& T, int angles);
std::vector<Complex> numerical_range_hull_serial(const Eigen::MatrixXcd& T, int angles);

// Cross-product convexity test for a vertex list in sweep order; collinear
// (degenerate) polygons count as convex.
bool polygon_is_convex(std::span<const Complex> vertices, double tol = 1e-9);

// max over cloud samples of the support slack
//   max_theta Re(e^{-i theta} p) - h(theta),
// the signed distance to the intersection of the sweep's supporting
// half-planes (negative = interior). Values <= 1e-9 certify containment in
// W(T) at solver accuracy.
double berezin_in_numrange_check(const OperatorMatrix& T, const RangeCloud& cloud, int angles = 720);

}  // namespace bkit
