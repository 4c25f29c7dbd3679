#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "bkit/symbols.hpp"
#include "bkit/types.hpp"

namespace bkit {

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

// Weighted composition-differentiation operator on H_gamma(D^d):
//   (D_{n,psi,phi} f)(z) = psi(z) * (d^n f)(phi_1(z_1), ..., phi_d(z_d)),
// with psi(z) = prod_j weights[j](z_j). Compositions (n = 0, psi = 1) and
// weighted compositions (n = 0) are the special cases below.
struct CompDiffOp {
  SpaceSpec space;
  MultiIndex orders;
  std::vector<Weight> weights;
  std::vector<LftSymbol> maps;

  CompDiffOp(SpaceSpec s, MultiIndex n, std::vector<Weight> psi, std::vector<LftSymbol> phi);
};

CompDiffOp make_composition(const SpaceSpec& space, std::vector<LftSymbol> maps);
CompDiffOp make_weighted_composition(const SpaceSpec& space, std::vector<Weight> weights,
                                     std::vector<LftSymbol> maps);

// One summand a * D_{order, weight, (shared map)} of a generalized sum.
struct SumTerm {
  Complex coefficient;
  int order;  // >= 1
  Weight weight;
};

// M = sum_j a_j D_{j, psi_j, phi} on H_gamma(D); single shared map, dim = 1.
struct GeneralizedSumOp {
  int gamma;
  std::vector<SumTerm> terms;
  LftSymbol map;

  GeneralizedSumOp(int g, std::vector<SumTerm> t, LftSymbol phi);
};

using OperatorSpec = std::variant<CompDiffOp, GeneralizedSumOp>;

SpaceSpec operator_space(const OperatorSpec& op);

// ---------------------------------------------------------------------------
// Conjugations (anti-linear, involutive, isometric)
// ---------------------------------------------------------------------------

// J f(z) = conj(f(conj(z))): coefficients a_k -> conj(a_k). Valid in any dim
// (applied per coordinate).
struct StandardConjugation {};

// C_{mu,xi} f(z) = mu * conj(f(conj(xi z))) with |mu| = |xi| = 1:
// coefficients a_k -> mu xi^k conj(a_k). dim = 1 only.
struct RotationConjugation {
  Complex mu, xi;
  RotationConjugation(Complex m, Complex x);
};

// Weighted-composition conjugation A_{u,v} f(z) = u(z) * conj(f(conj(v(z)))).
// Carried as data only; every operation on it reports unsupported.
struct WeightedCompConjugation {
  Weight u;
  LftSymbol v;
};

using ConjugationSpec = std::variant<StandardConjugation, RotationConjugation, WeightedCompConjugation>;

// Coefficient action of the conjugation on a dim = 1 truncated series.
TruncatedSeries conjugation_coeff_map(const ConjugationSpec& conj, const TruncatedSeries& f);

// ---------------------------------------------------------------------------
// Canonical symbol constructors (the closed forms certified by the defect
// sweeps below). All reject symbols whose sampled self-map margin is <= 0.
// ---------------------------------------------------------------------------

// J-symmetric family: psi(z) = a prod_j z_j^{n_j} (1 - z_j phi_j(0))^(-gamma-n_j),
// phi_j(z) = phi_j(0) + phi_j'(0) z / (1 - phi_j(0) z). Note the weight couples
// to phi(0) itself, not its conjugate.
CompDiffOp canonical_cs_symbols_j(const SpaceSpec& space, const MultiIndex& n,
                                  std::span<const Complex> phi0, std::span<const Complex> phi1,
                                  Complex amplitude);

// Self-adjoint family: same shape with conj(phi_j(0)) in both couplings and
// real phi_j'(0), real amplitude (validated).
CompDiffOp canonical_sa_symbols(const SpaceSpec& space, const MultiIndex& n,
                                std::span<const Complex> phi0, std::span<const Complex> phi1,
                                Complex amplitude);

// C_{mu,xi}-symmetric family on the disk: psi_j(z) = c_j z^j (1 - xi phi(0) z)^(-gamma-j),
// phi(z) = phi(0) + phi'(0) z / (1 - xi phi(0) z); term coefficients a_j
// default to 1 when `a` is empty.
GeneralizedSumOp canonical_cs_symbols_rotation(int gamma, Complex xi, Complex phi0, Complex phi1,
                                               std::span<const Complex> c,
                                               std::span<const Complex> a = {});

// Hermitian family on the disk: conj(phi(0)) couplings, real c_j, phi'(0), a_j.
GeneralizedSumOp canonical_hermitian_symbols(int gamma, Complex phi0, Complex phi1,
                                             std::span<const Complex> c,
                                             std::span<const Complex> a = {});

// ---------------------------------------------------------------------------
// Kernel-side evaluators and defect sweeps
// ---------------------------------------------------------------------------

using KernelEvaluator = std::function<Complex(const PolyPoint&)>;

// Closed-form z -> (T* K_w)(z). Requires phi(w) in the polydisk.
KernelEvaluator adjoint_on_kernel(const OperatorSpec& op, const PolyPoint& w);

// Closed-form pair (lhs, rhs) with lhs: z -> (T C K_w)(z) and
// rhs: z -> (C T* K_w)(z); equality for all z, w is complex symmetry.
std::pair<KernelEvaluator, KernelEvaluator> apply_on_kernel(const OperatorSpec& op,
                                                            const ConjugationSpec& conj,
                                                            const PolyPoint& w);

struct DefectSweep {
  int samples = 200;
  double radius = 0.8;
  std::uint64_t seed = 12345;
};

// max over sampled (z, w) pairs of |(T C K_w)(z) - (C T* K_w)(z)|.
double cs_defect(const OperatorSpec& op, const ConjugationSpec& conj, const DefectSweep& sweep);
double cs_defect_serial(const OperatorSpec& op, const ConjugationSpec& conj, const DefectSweep& sweep);

// max over sampled (z, w) pairs of |(T* K_w)(z) - (T K_w)(z)|.
double sa_defect(const OperatorSpec& op, const DefectSweep& sweep);
double sa_defect_serial(const OperatorSpec& op, const DefectSweep& sweep);

// Pass / fail / inconclusive bands shared by all defect certifications.
inline constexpr double kDefectPassBelow = 1e-9;
inline constexpr double kDefectFailAbove = 1e-4;

}  // namespace bkit
