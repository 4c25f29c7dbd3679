#include "bkit/operators.hpp"

#include <cmath>

#include "bkit/kernels.hpp"
#include "bkit/sampling.hpp"

namespace bkit {

namespace {

void require_self_map(const LftSymbol& phi) {
  double margin = self_map_margin(phi);
  if (!(margin > 0.0)) throw symbol_rejection(margin);
}

void require_unimodular(Complex v, const char* what) {
  if (std::abs(std::abs(v) - 1.0) > 1e-14)
    throw argument_error(std::string(what) + ": must be unimodular to 1e-14");
}

void require_real(Complex v, const char* what) {
  if (v.imag() != 0.0)
    throw argument_error(std::string(what) + ": must be real");
}

Complex psi_eval(const CompDiffOp& op, const PolyPoint& z) {
  Complex acc(1.0, 0.0);
  for (int j = 0; j < op.space.dim; ++j) acc *= op.weights[static_cast<size_t>(j)].eval(z[j]);
  return acc;
}

}  // namespace

CompDiffOp::CompDiffOp(SpaceSpec s, MultiIndex n, std::vector<Weight> psi, std::vector<LftSymbol> phi)
    : space(s), orders(std::move(n)), weights(std::move(psi)), maps(std::move(phi)) {
  require_dim_match(space, orders.dim(), "CompDiffOp(orders)");
  require_dim_match(space, static_cast<int>(weights.size()), "CompDiffOp(weights)");
  require_dim_match(space, static_cast<int>(maps.size()), "CompDiffOp(maps)");
  for (const Weight& w : weights)
    if (w.identically_zero()) throw argument_error("CompDiffOp: psi == 0 is rejected");
  for (const LftSymbol& m : maps) require_self_map(m);
}

CompDiffOp make_composition(const SpaceSpec& space, std::vector<LftSymbol> maps) {
  std::vector<Weight> weights(static_cast<size_t>(space.dim));
  return CompDiffOp(space, MultiIndex::zeros(space.dim), std::move(weights), std::move(maps));
}

CompDiffOp make_weighted_composition(const SpaceSpec& space, std::vector<Weight> weights,
                                     std::vector<LftSymbol> maps) {
  return CompDiffOp(space, MultiIndex::zeros(space.dim), std::move(weights), std::move(maps));
}

GeneralizedSumOp::GeneralizedSumOp(int g, std::vector<SumTerm> t, LftSymbol phi)
    : gamma(g), terms(std::move(t)), map(phi) {
  if (gamma < 1) throw argument_error("GeneralizedSumOp: gamma must be >= 1");
  if (terms.empty()) throw argument_error("GeneralizedSumOp: needs at least one term");
  for (const SumTerm& term : terms) {
    if (term.order < 1) throw argument_error("GeneralizedSumOp: term orders must be >= 1");
    if (term.weight.identically_zero())
      throw argument_error("GeneralizedSumOp: psi_j == 0 is rejected");
  }
  require_self_map(map);
}

SpaceSpec operator_space(const OperatorSpec& op) {
  if (const auto* cd = std::get_if<CompDiffOp>(&op)) return cd->space;
  return SpaceSpec(1, std::get<GeneralizedSumOp>(op).gamma);
}

RotationConjugation::RotationConjugation(Complex m, Complex x) : mu(m), xi(x) {
  require_unimodular(m, "RotationConjugation mu");
  require_unimodular(x, "RotationConjugation xi");
}

TruncatedSeries conjugation_coeff_map(const ConjugationSpec& conj, const TruncatedSeries& f) {
  if (std::holds_alternative<WeightedCompConjugation>(conj))
    throw unsupported_error("conjugation_coeff_map: weighted-composition conjugations are carried as data only");
  TruncatedSeries out(f.degree());
  if (std::holds_alternative<StandardConjugation>(conj)) {
    for (int k = 0; k <= f.degree(); ++k) out[k] = std::conj(f[k]);
    return out;
  }
  const auto& rot = std::get<RotationConjugation>(conj);
  Complex xik(1.0, 0.0);
  for (int k = 0; k <= f.degree(); ++k) {
    out[k] = rot.mu * xik * std::conj(f[k]);
    xik *= rot.xi;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical families
// ---------------------------------------------------------------------------

namespace {
void require_span_dim(const SpaceSpec& space, size_t got, const char* what) {
  if (static_cast<size_t>(space.dim) != got)
    throw argument_error(std::string(what) + ": need one entry per coordinate");
}
}  // namespace

CompDiffOp canonical_cs_symbols_j(const SpaceSpec& space, const MultiIndex& n,
                                  std::span<const Complex> phi0, std::span<const Complex> phi1,
                                  Complex amplitude) {
  require_span_dim(space, phi0.size(), "canonical_cs_symbols_j(phi0)");
  require_span_dim(space, phi1.size(), "canonical_cs_symbols_j(phi1)");
  require_dim_match(space, n.dim(), "canonical_cs_symbols_j(n)");
  if (amplitude == Complex(0.0, 0.0))
    throw argument_error("canonical_cs_symbols_j: amplitude must be nonzero");
  std::vector<Weight> weights;
  std::vector<LftSymbol> maps;
  for (int j = 0; j < space.dim; ++j) {
    Complex a = (j == 0) ? amplitude : Complex(1.0, 0.0);
    weights.emplace_back(WeightSymbol(a, n[j], phi0[static_cast<size_t>(j)], space.gamma + n[j]));
    maps.emplace_back(phi0[static_cast<size_t>(j)], phi1[static_cast<size_t>(j)],
                      phi0[static_cast<size_t>(j)]);
  }
  return CompDiffOp(space, n, std::move(weights), std::move(maps));
}

CompDiffOp canonical_sa_symbols(const SpaceSpec& space, const MultiIndex& n,
                                std::span<const Complex> phi0, std::span<const Complex> phi1,
                                Complex amplitude) {
  require_span_dim(space, phi0.size(), "canonical_sa_symbols(phi0)");
  require_span_dim(space, phi1.size(), "canonical_sa_symbols(phi1)");
  require_dim_match(space, n.dim(), "canonical_sa_symbols(n)");
  require_real(amplitude, "canonical_sa_symbols amplitude");
  if (amplitude == Complex(0.0, 0.0))
    throw argument_error("canonical_sa_symbols: amplitude must be nonzero");
  std::vector<Weight> weights;
  std::vector<LftSymbol> maps;
  for (int j = 0; j < space.dim; ++j) {
    require_real(phi1[static_cast<size_t>(j)], "canonical_sa_symbols phi'(0)");
    Complex a = (j == 0) ? amplitude : Complex(1.0, 0.0);
    Complex p0 = phi0[static_cast<size_t>(j)];
    weights.emplace_back(WeightSymbol(a, n[j], std::conj(p0), space.gamma + n[j]));
    maps.emplace_back(p0, phi1[static_cast<size_t>(j)], std::conj(p0));
  }
  return CompDiffOp(space, n, std::move(weights), std::move(maps));
}

GeneralizedSumOp canonical_cs_symbols_rotation(int gamma, Complex xi, Complex phi0, Complex phi1,
                                               std::span<const Complex> c,
                                               std::span<const Complex> a) {
  require_unimodular(xi, "canonical_cs_symbols_rotation xi");
  if (c.empty()) throw argument_error("canonical_cs_symbols_rotation: needs at least one c_j");
  if (!a.empty() && a.size() != c.size())
    throw argument_error("canonical_cs_symbols_rotation: a and c sizes differ");
  Complex pole = xi * phi0;
  std::vector<SumTerm> terms;
  for (size_t j = 0; j < c.size(); ++j) {
    int order = static_cast<int>(j) + 1;
    if (c[j] == Complex(0.0, 0.0)) continue;  // absent term
    Complex aj = a.empty() ? Complex(1.0, 0.0) : a[j];
    terms.push_back({aj, order, Weight(WeightSymbol(c[j], order, pole, gamma + order))});
  }
  if (terms.empty()) throw argument_error("canonical_cs_symbols_rotation: all c_j vanish");
  return GeneralizedSumOp(gamma, std::move(terms), LftSymbol(phi0, phi1, pole));
}

GeneralizedSumOp canonical_hermitian_symbols(int gamma, Complex phi0, Complex phi1,
                                             std::span<const Complex> c,
                                             std::span<const Complex> a) {
  require_real(phi1, "canonical_hermitian_symbols phi'(0)");
  if (c.empty()) throw argument_error("canonical_hermitian_symbols: needs at least one c_j");
  if (!a.empty() && a.size() != c.size())
    throw argument_error("canonical_hermitian_symbols: a and c sizes differ");
  Complex pole = std::conj(phi0);
  std::vector<SumTerm> terms;
  for (size_t j = 0; j < c.size(); ++j) {
    require_real(c[j], "canonical_hermitian_symbols c_j");
    int order = static_cast<int>(j) + 1;
    if (c[j] == Complex(0.0, 0.0)) continue;
    Complex aj(1.0, 0.0);
    if (!a.empty()) {
      require_real(a[j], "canonical_hermitian_symbols a_j");
      aj = a[j];
    }
    terms.push_back({aj, order, Weight(WeightSymbol(c[j], order, pole, gamma + order))});
  }
  if (terms.empty()) throw argument_error("canonical_hermitian_symbols: all c_j vanish");
  return GeneralizedSumOp(gamma, std::move(terms), LftSymbol(phi0, phi1, pole));
}

// ---------------------------------------------------------------------------
// Kernel-side closed forms
// ---------------------------------------------------------------------------

namespace {

// (T C_{mu,xi} K_w)(z); J is the mu = xi = 1 case (then valid in any dim).
Complex cs_lhs(const CompDiffOp& op, Complex mu, Complex xi, const PolyPoint& z, const PolyPoint& w) {
  Complex acc = mu * psi_eval(op, z);
  for (int j = 0; j < op.space.dim; ++j) {
    int nj = op.orders[j];
    Complex xw = xi * w[j];
    acc *= pochhammer(op.space.gamma, nj) * ipow(xw, nj) *
           ipow(1.0 - xw * op.maps[static_cast<size_t>(j)].eval(z[j]), -(op.space.gamma + nj));
  }
  return acc;
}

// (C_{mu,xi} T* K_w)(z).
Complex cs_rhs(const CompDiffOp& op, Complex mu, Complex xi, const PolyPoint& z, const PolyPoint& w) {
  Complex acc = mu * psi_eval(op, w);
  for (int j = 0; j < op.space.dim; ++j) {
    int nj = op.orders[j];
    Complex xz = xi * z[j];
    acc *= pochhammer(op.space.gamma, nj) * ipow(xz, nj) *
           ipow(1.0 - xz * op.maps[static_cast<size_t>(j)].eval(w[j]), -(op.space.gamma + nj));
  }
  return acc;
}

Complex cs_lhs(const GeneralizedSumOp& op, Complex mu, Complex xi, Complex z, Complex w) {
  Complex acc(0.0, 0.0);
  Complex phiz = op.map.eval(z);
  for (const SumTerm& t : op.terms) {
    Complex xw = xi * w;
    acc += t.coefficient * pochhammer(op.gamma, t.order) * mu * t.weight.eval(z) *
           ipow(xw, t.order) * ipow(1.0 - xw * phiz, -(op.gamma + t.order));
  }
  return acc;
}

Complex cs_rhs(const GeneralizedSumOp& op, Complex mu, Complex xi, Complex z, Complex w) {
  Complex acc(0.0, 0.0);
  Complex phiw = op.map.eval(w);
  for (const SumTerm& t : op.terms) {
    Complex xz = xi * z;
    acc += t.coefficient * pochhammer(op.gamma, t.order) * mu * t.weight.eval(w) *
           ipow(xz, t.order) * ipow(1.0 - xz * phiw, -(op.gamma + t.order));
  }
  return acc;
}

// (T* K_w)(z), the closed-form adjoint action.
Complex sa_adjoint_side(const CompDiffOp& op, const PolyPoint& z, const PolyPoint& w) {
  Complex acc = std::conj(psi_eval(op, w));
  for (int j = 0; j < op.space.dim; ++j) {
    int nj = op.orders[j];
    acc *= pochhammer(op.space.gamma, nj) * ipow(z[j], nj) *
           ipow(1.0 - z[j] * std::conj(op.maps[static_cast<size_t>(j)].eval(w[j])), -(op.space.gamma + nj));
  }
  return acc;
}

// (T K_w)(z), the direct action.
Complex sa_direct_side(const CompDiffOp& op, const PolyPoint& z, const PolyPoint& w) {
  Complex acc = psi_eval(op, z);
  for (int j = 0; j < op.space.dim; ++j) {
    int nj = op.orders[j];
    Complex cw = std::conj(w[j]);
    acc *= pochhammer(op.space.gamma, nj) * ipow(cw, nj) *
           ipow(1.0 - cw * op.maps[static_cast<size_t>(j)].eval(z[j]), -(op.space.gamma + nj));
  }
  return acc;
}

Complex sa_adjoint_side(const GeneralizedSumOp& op, Complex z, Complex w) {
  Complex acc(0.0, 0.0);
  Complex cphiw = std::conj(op.map.eval(w));
  for (const SumTerm& t : op.terms) {
    acc += std::conj(t.coefficient * t.weight.eval(w)) * pochhammer(op.gamma, t.order) *
           ipow(z, t.order) * ipow(1.0 - z * cphiw, -(op.gamma + t.order));
  }
  return acc;
}

Complex sa_direct_side(const GeneralizedSumOp& op, Complex z, Complex w) {
  Complex acc(0.0, 0.0);
  Complex phiz = op.map.eval(z);
  Complex cw = std::conj(w);
  for (const SumTerm& t : op.terms) {
    acc += t.coefficient * t.weight.eval(z) * pochhammer(op.gamma, t.order) * ipow(cw, t.order) *
           ipow(1.0 - cw * phiz, -(op.gamma + t.order));
  }
  return acc;
}

struct ResolvedConjugation {
  Complex mu, xi;
};

// Validates op/conj compatibility: J pairs with any operator; rotations only
// with dim = 1 operators; weighted-composition conjugations are data-only.
ResolvedConjugation resolve_conjugation(const OperatorSpec& op, const ConjugationSpec& conj) {
  if (std::holds_alternative<WeightedCompConjugation>(conj))
    throw unsupported_error("weighted-composition conjugations are carried as data only");
  if (std::holds_alternative<StandardConjugation>(conj)) return {Complex(1.0, 0.0), Complex(1.0, 0.0)};
  const auto& rot = std::get<RotationConjugation>(conj);
  if (operator_space(op).dim != 1)
    throw argument_error("rotation conjugations pair with dim = 1 operators only");
  return {rot.mu, rot.xi};
}

void require_in_polydisk(const CompDiffOp& op, const PolyPoint& w) {
  for (int j = 0; j < op.space.dim; ++j)
    if (!(std::abs(op.maps[static_cast<size_t>(j)].eval(w[j])) < 1.0))
      throw domain_error("adjoint_on_kernel: phi(w) is not in the polydisk");
}

}  // namespace

KernelEvaluator adjoint_on_kernel(const OperatorSpec& op, const PolyPoint& w) {
  if (const auto* cd = std::get_if<CompDiffOp>(&op)) {
    require_dim_match(cd->space, w.dim(), "adjoint_on_kernel(w)");
    require_in_polydisk(*cd, w);
    CompDiffOp local = *cd;
    return [local, w](const PolyPoint& z) { return sa_adjoint_side(local, z, w); };
  }
  const auto& gs = std::get<GeneralizedSumOp>(op);
  if (w.dim() != 1) throw argument_error("adjoint_on_kernel: generalized sums live on the disk");
  if (!(std::abs(gs.map.eval(w[0])) < 1.0))
    throw domain_error("adjoint_on_kernel: phi(w) is not in the disk");
  GeneralizedSumOp local = gs;
  return [local, w](const PolyPoint& z) { return sa_adjoint_side(local, z[0], w[0]); };
}

std::pair<KernelEvaluator, KernelEvaluator> apply_on_kernel(const OperatorSpec& op,
                                                            const ConjugationSpec& conj,
                                                            const PolyPoint& w) {
  ResolvedConjugation rc = resolve_conjugation(op, conj);
  if (const auto* cd = std::get_if<CompDiffOp>(&op)) {
    require_dim_match(cd->space, w.dim(), "apply_on_kernel(w)");
    CompDiffOp local = *cd;
    KernelEvaluator lhs = [local, rc, w](const PolyPoint& z) { return cs_lhs(local, rc.mu, rc.xi, z, w); };
    KernelEvaluator rhs = [local, rc, w](const PolyPoint& z) { return cs_rhs(local, rc.mu, rc.xi, z, w); };
    return {lhs, rhs};
  }
  const auto& gs = std::get<GeneralizedSumOp>(op);
  if (w.dim() != 1) throw argument_error("apply_on_kernel: generalized sums live on the disk");
  GeneralizedSumOp local = gs;
  KernelEvaluator lhs = [local, rc, w](const PolyPoint& z) { return cs_lhs(local, rc.mu, rc.xi, z[0], w[0]); };
  KernelEvaluator rhs = [local, rc, w](const PolyPoint& z) { return cs_rhs(local, rc.mu, rc.xi, z[0], w[0]); };
  return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// Defect sweeps
// ---------------------------------------------------------------------------

namespace {

void validate_sweep(const DefectSweep& sweep) {
  if (sweep.samples < 1) throw argument_error("defect sweep: samples must be >= 1");
  if (!(sweep.radius > 0.0) || !(sweep.radius <= kMaxDiskModulus))
    throw argument_error("defect sweep: radius must lie in (0, 1)");
}

PolyPoint sampled_point(int dim, std::uint64_t seed, std::uint64_t index, int stream_base, double radius) {
  std::vector<Complex> coords(static_cast<size_t>(dim));
  for (int j = 0; j < dim; ++j)
    coords[static_cast<size_t>(j)] = disk_sample(seed, index, stream_base + j, radius);
  return PolyPoint(std::move(coords));
}

double cs_residual(const OperatorSpec& op, const ResolvedConjugation& rc, const PolyPoint& z,
                   const PolyPoint& w) {
  if (const auto* cd = std::get_if<CompDiffOp>(&op))
    return std::abs(cs_lhs(*cd, rc.mu, rc.xi, z, w) - cs_rhs(*cd, rc.mu, rc.xi, z, w));
  const auto& gs = std::get<GeneralizedSumOp>(op);
  return std::abs(cs_lhs(gs, rc.mu, rc.xi, z[0], w[0]) - cs_rhs(gs, rc.mu, rc.xi, z[0], w[0]));
}

double sa_residual(const OperatorSpec& op, const PolyPoint& z, const PolyPoint& w) {
  if (const auto* cd = std::get_if<CompDiffOp>(&op))
    return std::abs(sa_adjoint_side(*cd, z, w) - sa_direct_side(*cd, z, w));
  const auto& gs = std::get<GeneralizedSumOp>(op);
  return std::abs(sa_adjoint_side(gs, z[0], w[0]) - sa_direct_side(gs, z[0], w[0]));
}

template <typename Residual>
double sweep_max_parallel(int samples, const Residual& residual) {
  double worst = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (int i = 0; i < samples; ++i) worst = std::max(worst, residual(i));
  return worst;
}

template <typename Residual>
double sweep_max_serial(int samples, const Residual& residual) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) worst = std::max(worst, residual(i));
  return worst;
}

}  // namespace

double cs_defect(const OperatorSpec& op, const ConjugationSpec& conj, const DefectSweep& sweep) {
  validate_sweep(sweep);
  ResolvedConjugation rc = resolve_conjugation(op, conj);
  int dim = operator_space(op).dim;
  return sweep_max_parallel(sweep.samples, [&](int i) {
    PolyPoint z = sampled_point(dim, sweep.seed, static_cast<std::uint64_t>(i), 0, sweep.radius);
    PolyPoint w = sampled_point(dim, sweep.seed, static_cast<std::uint64_t>(i), dim, sweep.radius);
    return cs_residual(op, rc, z, w);
  });
}

double cs_defect_serial(const OperatorSpec& op, const ConjugationSpec& conj, const DefectSweep& sweep) {
  validate_sweep(sweep);
  ResolvedConjugation rc = resolve_conjugation(op, conj);
  int dim = operator_space(op).dim;
  return sweep_max_serial(sweep.samples, [&](int i) {
    PolyPoint z = sampled_point(dim, sweep.seed, static_cast<std::uint64_t>(i), 0, sweep.radius);
    PolyPoint w = sampled_point(dim, sweep.seed, static_cast<std::uint64_t>(i), dim, sweep.radius);
    return cs_residual(op, rc, z, w);
  });
}

double sa_defect(const OperatorSpec& op, const DefectSweep& sweep) {
  validate_sweep(sweep);
  int dim = operator_space(op).dim;
  return sweep_max_parallel(sweep.samples, [&](int i) {
    PolyPoint z = sampled_point(dim, sweep.seed, static_cast<std::uint64_t>(i), 0, sweep.radius);
    PolyPoint w = sampled_point(dim, sweep.seed, static_cast<std::uint64_t>(i), dim, sweep.radius);
    return sa_residual(op, z, w);
  });
}

double sa_defect_serial(const OperatorSpec& op, const DefectSweep& sweep) {
  validate_sweep(sweep);
  int dim = operator_space(op).dim;
  return sweep_max_serial(sweep.samples, [&](int i) {
    PolyPoint z = sampled_point(dim, sweep.seed, static_cast<std::uint64_t>(i), 0, sweep.radius);
    PolyPoint w = sampled_point(dim, sweep.seed, static_cast<std::uint64_t>(i), dim, sweep.radius);
    return sa_residual(op, z, w);
  });
}

}  // namespace bkit
