#include <doctest.h>

#include <cmath>
#include <vector>

#include "bkit/kernels.hpp"
#include "bkit/operators.hpp"
#include "bkit/sampling.hpp"

using bkit::Complex;
using bkit::CompDiffOp;
using bkit::ConjugationSpec;
using bkit::GeneralizedSumOp;
using bkit::LftSymbol;
using bkit::MultiIndex;
using bkit::OperatorSpec;
using bkit::PolyPoint;
using bkit::RotationConjugation;
using bkit::SpaceSpec;
using bkit::StandardConjugation;
using bkit::TruncatedSeries;
using bkit::Weight;
using bkit::WeightSymbol;

namespace {

bkit::DefectSweep quick_sweep() {
  bkit::DefectSweep sweep;
  sweep.samples = 120;
  sweep.radius = 0.75;
  sweep.seed = 777;
  return sweep;
}

}  // namespace

TEST_CASE("operator construction rejects broken symbols") {
  SpaceSpec space(1, 2);
  // identically-zero weight
  CHECK_THROWS_AS(CompDiffOp(space, MultiIndex({1}),
                             {Weight::polynomial({Complex(0.0, 0.0)})},
                             {bkit::identity_lft()}),
                  bkit::argument_error);
  // expanding map
  CHECK_THROWS_AS(CompDiffOp(space, MultiIndex({0}), {Weight()},
                             {LftSymbol(Complex(0.6, 0.0), Complex(0.9, 0.0), Complex(0.0, 0.0))}),
                  bkit::symbol_rejection);
  // dimension mismatches
  CHECK_THROWS_AS(CompDiffOp(SpaceSpec(2, 1), MultiIndex({0}), {Weight()},
                             {bkit::identity_lft()}),
                  bkit::argument_error);
  // generalized sums need orders >= 1 and at least one term
  CHECK_THROWS_AS(GeneralizedSumOp(1, {{Complex(1.0, 0.0), 0, Weight()}},
                                   LftSymbol(Complex(0.0, 0.0), Complex(0.5, 0.0), Complex(0.0, 0.0))),
                  bkit::argument_error);
  CHECK_THROWS_AS(GeneralizedSumOp(1, {},
                                   LftSymbol(Complex(0.0, 0.0), Complex(0.5, 0.0), Complex(0.0, 0.0))),
                  bkit::argument_error);
}

TEST_CASE("conjugations validate and act on coefficients") {
  CHECK_THROWS_AS(RotationConjugation(Complex(0.9, 0.0), Complex(0.0, 1.0)),
                  bkit::argument_error);
  CHECK_THROWS_AS(RotationConjugation(Complex(1.0, 0.0), Complex(0.5, 0.5)),
                  bkit::argument_error);

  TruncatedSeries f(std::vector<Complex>{{1.0, 2.0}, {-0.5, 0.25}, {0.0, -1.0}});
  TruncatedSeries jf = bkit::conjugation_coeff_map(StandardConjugation{}, f);
  for (int k = 0; k <= 2; ++k) CHECK(jf[k] == std::conj(f[k]));

  Complex mu = std::polar(1.0, 0.4), xi = std::polar(1.0, -1.1);
  ConjugationSpec rot = RotationConjugation(mu, xi);
  TruncatedSeries cf = bkit::conjugation_coeff_map(rot, f);
  for (int k = 0; k <= 2; ++k)
    CHECK(std::abs(cf[k] - mu * bkit::ipow(xi, k) * std::conj(f[k])) < 1e-15);

  // involution and isometry up to rounding
  TruncatedSeries ccf = bkit::conjugation_coeff_map(rot, cf);
  for (int k = 0; k <= 2; ++k) CHECK(std::abs(ccf[k] - f[k]) < 1e-15);
  SpaceSpec space(1, 2);
  Complex n1 = bkit::hgamma_inner(space, f, f);
  Complex n2 = bkit::hgamma_inner(space, cf, cf);
  CHECK(std::abs(n1 - n2) < 1e-15 * std::abs(n1));

  // the weighted-composition conjugation is carried as data only
  bkit::WeightedCompConjugation awc{Weight(), bkit::identity_lft()};
  CHECK_THROWS_AS(bkit::conjugation_coeff_map(ConjugationSpec(awc), f),
                  bkit::unsupported_error);
}

TEST_CASE("identity composition is symmetric under the coefficient conjugation") {
  for (int gamma : {1, 2}) {
    OperatorSpec id = bkit::make_composition(SpaceSpec(1, gamma), {bkit::identity_lft()});
    CHECK(bkit::cs_defect(id, StandardConjugation{}, quick_sweep()) < 1e-13);
  }
}

TEST_CASE("canonical coupled symbols certify as complex symmetric") {
  // weights z^n (1 - phi(0) z)^(-gamma-n) with phi(0) coupled un-conjugated
  std::vector<Complex> p0{{0.2, 0.1}};
  std::vector<Complex> p1{{0.4, -0.1}};
  for (int gamma : {1, 2, 3}) {
    SpaceSpec space(1, gamma);
    CompDiffOp op =
        bkit::canonical_cs_symbols_j(space, MultiIndex({1}), p0, p1, Complex(0.8, 0.3));
    CHECK(bkit::cs_defect(op, StandardConjugation{}, quick_sweep()) < 1e-12);
  }
  // two variables, mixed orders
  SpaceSpec space2(2, 2);
  std::vector<Complex> phi0{{0.15, 0.0}, {0.1, -0.1}};
  std::vector<Complex> phi1{{0.35, 0.0}, {0.0, 0.3}};
  CompDiffOp op2 =
      bkit::canonical_cs_symbols_j(space2, MultiIndex({0, 2}), phi0, phi1, Complex(1.1, 0.0));
  CHECK(bkit::cs_defect(op2, StandardConjugation{}, quick_sweep()) < 1e-12);
}

TEST_CASE("breaking the weight coupling breaks the symmetry") {
  SpaceSpec space(1, 2);
  // conjugating the coupling pole moves the defect far above the fail band
  WeightSymbol wrong(Complex(1.0, 0.0), 1, std::conj(Complex(0.2, 0.1)), 3);
  LftSymbol map(Complex(0.2, 0.1), Complex(0.4, 0.0), Complex(0.2, 0.1));
  CompDiffOp op(space, MultiIndex({1}), {Weight(wrong)}, {map});
  CHECK(bkit::cs_defect(op, StandardConjugation{}, quick_sweep()) > bkit::kDefectFailAbove);

  // polynomial weight with psi(0) != 0 cannot be canonical for n >= 1
  CompDiffOp poly(space, MultiIndex({1}),
                  {Weight::polynomial({Complex(1.0, 0.0), Complex(0.3, 0.0), Complex(0.0, 0.2)})},
                  {map});
  CHECK(bkit::cs_defect(poly, StandardConjugation{}, quick_sweep()) > bkit::kDefectFailAbove);

  // perturbing a canonical weight by (1 + 0.05 z) re-breaks it
  std::vector<Complex> p0{{0.2, 0.1}};
  std::vector<Complex> p1{{0.4, 0.0}};
  CompDiffOp canon =
      bkit::canonical_cs_symbols_j(space, MultiIndex({1}), p0, p1, Complex(1.0, 0.0));
  auto weights = canon.weights;
  weights[0] = weights[0].times_polynomial({Complex(1.0, 0.0), Complex(0.05, 0.0)});
  CompDiffOp bumped(canon.space, canon.orders, weights, canon.maps);
  CHECK(bkit::cs_defect(bumped, StandardConjugation{}, quick_sweep()) > bkit::kDefectFailAbove);
}

TEST_CASE("canonical self-adjoint symbols certify and close variants fail") {
  std::vector<Complex> p0{{0.2, 0.15}};
  std::vector<Complex> p1_real{{0.4, 0.0}};
  std::vector<Complex> p1_bad{{0.4, 0.1}};
  for (int gamma : {1, 3}) {
    SpaceSpec space(1, gamma);
    // complex phi(0) is fine; phi'(0) and the amplitude must be real
    CompDiffOp op =
        bkit::canonical_sa_symbols(space, MultiIndex({1}), p0, p1_real, Complex(0.9, 0.0));
    CHECK(bkit::sa_defect(op, quick_sweep()) < 1e-12);
  }
  SpaceSpec space(1, 2);
  CHECK_THROWS_AS(
      bkit::canonical_sa_symbols(space, MultiIndex({1}), p0, p1_bad, Complex(1.0, 0.0)),
      bkit::argument_error);
  CHECK_THROWS_AS(
      bkit::canonical_sa_symbols(space, MultiIndex({1}), p0, p1_real, Complex(1.0, 0.2)),
      bkit::argument_error);
  // un-conjugated pole coupling is the complex-symmetric family, not this one
  WeightSymbol wrong(Complex(1.0, 0.0), 1, Complex(0.2, 0.15), 3);
  LftSymbol map(Complex(0.2, 0.15), Complex(0.4, 0.0), std::conj(Complex(0.2, 0.15)));
  CompDiffOp mismatched(space, MultiIndex({1}), {Weight(wrong)}, {map});
  CHECK(bkit::sa_defect(mismatched, quick_sweep()) > bkit::kDefectFailAbove);
}

TEST_CASE("rotation-conjugation family certifies for generalized sums") {
  Complex xi = std::polar(1.0, 2.0 * bkit::kPi / 5.0);
  Complex mu = std::polar(1.0, -0.3);
  std::vector<Complex> c{{0.7, 0.0}, {0.0, 0.4}};
  std::vector<Complex> a{{1.0, 0.0}, {0.6, 0.0}};
  for (int gamma : {1, 2}) {
    GeneralizedSumOp op = bkit::canonical_cs_symbols_rotation(gamma, xi, Complex(0.15, 0.05),
                                                              Complex(0.3, 0.1), c, a);
    CHECK(bkit::cs_defect(op, RotationConjugation(mu, xi), quick_sweep()) < 1e-12);
    // the conjugation factor mu cancels in the defect
    CHECK(bkit::cs_defect(op, RotationConjugation(Complex(1.0, 0.0), xi), quick_sweep()) < 1e-12);
    // a different rotation misses the coupling
    CHECK(bkit::cs_defect(op, RotationConjugation(mu, std::conj(xi)), quick_sweep()) >
          bkit::kDefectFailAbove);
  }
}

TEST_CASE("hermitian generalized sums certify and reject complex data") {
  std::vector<Complex> c{{0.6, 0.0}, {-0.25, 0.0}};
  std::vector<Complex> a{{1.0, 0.0}, {0.5, 0.0}};
  GeneralizedSumOp op =
      bkit::canonical_hermitian_symbols(2, Complex(0.2, 0.1), Complex(0.35, 0.0), c, a);
  CHECK(bkit::sa_defect(op, quick_sweep()) < 1e-12);
  std::vector<Complex> c_bad{{0.6, 0.1}};
  std::vector<Complex> c_ok{{0.6, 0.0}};
  CHECK_THROWS_AS(
      bkit::canonical_hermitian_symbols(2, Complex(0.2, 0.1), Complex(0.35, 0.1), c_ok),
      bkit::argument_error);
  CHECK_THROWS_AS(
      bkit::canonical_hermitian_symbols(2, Complex(0.2, 0.1), Complex(0.35, 0.0), c_bad),
      bkit::argument_error);
}

TEST_CASE("kernel-side application matches hand evaluation for a dilation") {
  // T = C_phi with phi = 0.5 z on the gamma = 2 space: T* K_w = K_{phi(w)}
  SpaceSpec space(1, 2);
  OperatorSpec op = bkit::make_composition(space, {LftSymbol(Complex(0.0, 0.0),
                                                             Complex(0.5, 0.0),
                                                             Complex(0.0, 0.0))});
  PolyPoint w(Complex(0.4, 0.3));
  auto adj = bkit::adjoint_on_kernel(op, w);
  for (int i = 0; i < 10; ++i) {
    Complex z = bkit::disk_sample(41, static_cast<std::uint64_t>(i), 0, 0.9);
    Complex expected = bkit::kernel_eval(space, PolyPoint(Complex(0.5, 0.0) * Complex(0.4, 0.3)),
                                         PolyPoint(z));
    CHECK(std::abs(adj(PolyPoint(z)) - expected) < 1e-13);
  }
}

TEST_CASE("defect sweeps reject the data-only conjugation") {
  OperatorSpec op = bkit::make_composition(SpaceSpec(1, 1), {bkit::identity_lft()});
  ConjugationSpec awc = bkit::WeightedCompConjugation{Weight(), bkit::identity_lft()};
  CHECK_THROWS_AS(bkit::cs_defect(op, awc, quick_sweep()), bkit::unsupported_error);
}
