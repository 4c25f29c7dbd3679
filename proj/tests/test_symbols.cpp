#include <doctest.h>

#include <cmath>
#include <vector>

#include "bkit/kernels.hpp"
#include "bkit/sampling.hpp"
#include "bkit/symbols.hpp"

using bkit::Complex;
using bkit::LftSymbol;
using bkit::TruncatedSeries;
using bkit::Weight;
using bkit::WeightSymbol;

TEST_CASE("linear-fractional symbols evaluate their closed form") {
  LftSymbol phi(Complex(0.3, 0.0), Complex(0.4, 0.0), Complex(0.3, 0.0));
  CHECK(phi.value_at_zero() == Complex(0.3, 0.0));
  CHECK(phi.derivative_at_zero() == Complex(0.4, 0.0));
  Complex z(0.2, 0.5);
  Complex expected = Complex(0.3, 0.0) + Complex(0.4, 0.0) * z / (1.0 - Complex(0.3, 0.0) * z);
  CHECK(std::abs(phi.eval(z) - expected) < 1e-16);
  CHECK_THROWS_AS(LftSymbol(Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(1.0, 0.0)),
                  bkit::argument_error);
}

TEST_CASE("identity and Blaschke factors") {
  LftSymbol id = bkit::identity_lft();
  CHECK(id.eval(Complex(0.3, -0.2)) == Complex(0.3, -0.2));

  Complex alpha(0.5, -0.3);
  LftSymbol b = bkit::blaschke_lft(alpha);
  for (int i = 0; i < 12; ++i) {
    Complex z = bkit::disk_sample(23, static_cast<std::uint64_t>(i), 0, 0.97);
    Complex expected = (z - alpha) / (1.0 - std::conj(alpha) * z);
    CHECK(std::abs(b.eval(z) - expected) < 1e-14);
  }
  // disk automorphism: boundary goes to the boundary
  for (int i = 0; i < 8; ++i) {
    Complex z = std::polar(1.0, 2.0 * bkit::kPi * i / 8.0);
    CHECK(std::abs(std::abs(b.eval(z)) - 1.0) < 1e-14);
  }
  // and alpha is sent to 0
  CHECK(std::abs(b.eval(alpha)) < 1e-16);
}

TEST_CASE("linear-fractional series expansion matches pointwise") {
  LftSymbol phi(Complex(0.1, 0.2), Complex(0.5, -0.1), Complex(0.0, 0.45));
  TruncatedSeries s = bkit::lft_to_series(phi, 64);
  CHECK(s[0] == phi.value_at_zero());
  CHECK(s[1] == phi.derivative_at_zero());
  for (int i = 0; i < 15; ++i) {
    // |c z| <= 0.27 keeps the degree-64 geometric tail below 1e-30
    Complex z = bkit::disk_sample(31, static_cast<std::uint64_t>(i), 1, 0.6);
    CHECK(std::abs(s.eval(z) - phi.eval(z)) < 1e-13);
  }
}

TEST_CASE("weight symbols evaluate and expand") {
  // 1.5 z^2 (1 - 0.3 z)^(-4)
  WeightSymbol sym(Complex(1.5, 0.0), 2, Complex(0.3, 0.0), 4);
  Complex z(0.4, 0.2);
  Complex expected = 1.5 * z * z * bkit::ipow(1.0 - 0.3 * z, -4);
  CHECK(std::abs(sym.eval(z) - expected) < 1e-14);
  TruncatedSeries s = sym.to_series(50);
  CHECK(s[0] == Complex(0.0, 0.0));
  CHECK(s[1] == Complex(0.0, 0.0));
  CHECK(std::abs(s[2] - Complex(1.5, 0.0)) == 0.0);
  CHECK(std::abs(s.eval(z) - expected) < 1e-12);

  CHECK_THROWS_AS(WeightSymbol(Complex(1.0, 0.0), -1, Complex(0.0, 0.0), 2),
                  bkit::argument_error);
  CHECK_THROWS_AS(WeightSymbol(Complex(1.0, 0.0), 0, Complex(0.0, 0.0), 0),
                  bkit::argument_error);
  CHECK_THROWS_AS(WeightSymbol(Complex(1.0, 0.0), 0, Complex(1.0, 0.0), 2),
                  bkit::argument_error);
}

TEST_CASE("weights compose symbol and polynomial parts") {
  Weight one;
  CHECK(one.eval(Complex(0.7, -0.6)) == Complex(1.0, 0.0));
  CHECK(!one.identically_zero());

  Weight poly = Weight::polynomial({Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(-2.0, 0.0)});
  Complex z(0.3, 0.1);
  CHECK(std::abs(poly.eval(z) - (1.0 - 2.0 * z * z)) < 1e-15);

  Weight zero = Weight::polynomial({Complex(0.0, 0.0), Complex(0.0, 0.0)});
  CHECK(zero.identically_zero());

  WeightSymbol sym(Complex(2.0, 0.0), 1, Complex(0.25, 0.0), 3);
  Weight w(sym);
  Weight bumped = w.times_polynomial({Complex(1.0, 0.0), Complex(0.05, 0.0)});
  CHECK(std::abs(bumped.eval(z) - sym.eval(z) * (1.0 + 0.05 * z)) < 1e-14);

  // series route agrees with pointwise evaluation
  TruncatedSeries s = bumped.to_series(60);
  CHECK(std::abs(s.eval(z) - bumped.eval(z)) < 1e-12);
}

TEST_CASE("self-map margins on the reference ring") {
  // phi(z) = a z attains sup 0.999 a on the sampling ring
  LftSymbol dilation(Complex(0.0, 0.0), Complex(0.3, 0.0), Complex(0.0, 0.0));
  CHECK(bkit::self_map_margin(dilation) == doctest::Approx(1.0 - 0.999 * 0.3).epsilon(1e-12));

  // Blaschke factor with real alpha: sup (rho + a) / (1 + rho a) at theta = pi,
  // margin (1 - rho)(1 - a)/(1 + rho a) = 3.334444814938316e-4
  CHECK(bkit::self_map_margin(bkit::blaschke_lft(Complex(0.5, 0.0))) ==
        doctest::Approx(3.334444814938316e-4).epsilon(1e-9));

  // triangle-inequality floor: margin >= 1 - |b0| - |b1| rho / (1 - |c| rho)
  LftSymbol phi(Complex(0.3, 0.0), Complex(0.4, 0.0), Complex(0.3, 0.0));
  double rho = 0.999;
  double floor = 1.0 - (0.3 + 0.4 * rho / (1.0 - 0.3 * rho));
  CHECK(bkit::self_map_margin(phi) >= floor - 1e-12);

  // expanding maps report a non-positive margin
  LftSymbol big(Complex(0.0, 0.0), Complex(1.2, 0.0), Complex(0.0, 0.0));
  CHECK(bkit::self_map_margin(big) < 0.0);

  // series route agrees with the closed-form route on the same ring
  TruncatedSeries s = bkit::lft_to_series(phi, 200);
  CHECK(std::abs(bkit::self_map_margin(s) - bkit::self_map_margin(phi)) < 1e-9);
}
