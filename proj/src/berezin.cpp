#include "bkit/berezin.hpp"

#include <cmath>
#include <limits>

#include "bkit/detail/parallel_map.hpp"
#include "bkit/kernels.hpp"

namespace bkit {

namespace {

double real_ipow(double x, int g) {
  double acc = 1.0;
  for (int i = 0; i < g; ++i) acc *= x;
  return acc;
}

Complex composition_value(int gamma, Complex w, Complex phi_w) {
  if (!(std::abs(phi_w) < 1.0)) throw domain_error("berezin_composition: phi(w) is not in the disk");
  return ipow((1.0 - std::norm(w)) / (1.0 - std::conj(w) * phi_w), gamma);
}

void require_gamma(int gamma) {
  if (gamma < 1) throw argument_error("berezin: gamma must be >= 1");
}

}  // namespace

Complex berezin_composition(int gamma, const LftSymbol& phi, DiskPoint w) {
  require_gamma(gamma);
  return composition_value(gamma, w.value(), phi.eval(w.value()));
}

Complex berezin_composition(int gamma, const TruncatedSeries& phi, DiskPoint w) {
  require_gamma(gamma);
  return composition_value(gamma, w.value(), phi.eval(w.value()));
}

Complex berezin_blaschke(int gamma, const BlaschkeParam& alpha, DiskPoint w) {
  require_gamma(gamma);
  Complex a = alpha.value();
  Complex ww = w.value();
  Complex numer = (1.0 - std::norm(ww)) * (1.0 - std::conj(a) * ww);
  Complex denom = 1.0 - std::norm(ww) + a * std::conj(ww) - std::conj(a) * ww;
  return ipow(numer / denom, gamma);
}

Complex berezin_elliptic(int gamma, const EllipticBeta& beta, double r) {
  require_gamma(gamma);
  if (!(r >= 0.0) || !(r < 1.0)) throw argument_error("berezin_elliptic: r must lie in [0, 1)");
  double r2 = r * r;
  return ipow(Complex(1.0 - r2, 0.0) / (1.0 - r2 * beta.value()), gamma);
}

Complex berezin_matrix(const OperatorMatrix& T, DiskPoint w) {
  const int size = T.size();
  const int gamma = T.space.gamma;
  const double rho = std::norm(w.value());  // |w|^2

  // Retention of the truncated kernel: sum_{k<N} binom(k+g-1,k) rho^k against
  // the closed form (1 - rho)^{-g}.
  double full = std::pow(1.0 - rho, -gamma);
  double partial = 0.0;
  double term = 1.0;  // binom(k+g-1,k) rho^k at k = 0
  for (int k = 0; k < size; ++k) {
    partial += term;
    term *= rho * (static_cast<double>(k + gamma) / static_cast<double>(k + 1));
  }
  constexpr double kRetention = 1.0 - 1e-8;
  if (partial < kRetention * full) {
    int required = size;
    double extended = partial;
    double t = term;
    constexpr int kCap = 1000000;
    while (extended < kRetention * full && required < kCap) {
      extended += t;
      t *= rho * (static_cast<double>(required + gamma) / static_cast<double>(required + 1));
      ++required;
    }
    throw precision_error(
        "berezin_matrix: truncated kernel keeps < 1 - 1e-8 of its norm at |w| = " +
            std::to_string(std::abs(w.value())) + "; a section of size " + std::to_string(required) +
            " would suffice",
        required < kCap ? required : 0);
  }

  Eigen::VectorXcd kappa(size);
  Complex cw = std::conj(w.value());
  Complex acc(1.0, 0.0);
  for (int k = 0; k < size; ++k) {
    kappa(k) = acc / std::sqrt(basis_norm_sq(T.space, MultiIndex({k})));
    acc *= cw;
  }
  Complex numer = (kappa.adjoint() * T.entries * kappa)(0, 0);
  double denom = kappa.squaredNorm();
  return numer / denom;
}

// ---------------------------------------------------------------------------
// Range clouds
// ---------------------------------------------------------------------------

namespace {

void validate_grid(const PolarGrid& grid) {
  if (grid.r_count < 2) throw argument_error("PolarGrid: r_count must be >= 2");
  if (grid.theta_count < 1) throw argument_error("PolarGrid: theta_count must be >= 1");
  if (!(grid.r_max >= 0.0) || !(grid.r_max <= kMaxDiskModulus))
    throw argument_error("PolarGrid: r_max must lie in [0, 1 - 1e-9]");
}

Complex source_value(int gamma, const BerezinSourceSpec& source, DiskPoint w) {
  if (const auto* alpha = std::get_if<BlaschkeParam>(&source)) return berezin_blaschke(gamma, *alpha, w);
  if (const auto* beta = std::get_if<EllipticBeta>(&source))
    return composition_value(gamma, w.value(), beta->value() * w.value());
  if (const auto* phi = std::get_if<LftSymbol>(&source)) return berezin_composition(gamma, *phi, w);
  return berezin_matrix(std::get<OperatorMatrix>(source), w);
}

template <typename ForLoop>
RangeCloud sample_cloud(int gamma, const BerezinSourceSpec& source, const PolarGrid& grid,
                        const ForLoop& loop) {
  validate_grid(grid);
  if (!std::holds_alternative<OperatorMatrix>(source)) require_gamma(gamma);
  RangeCloud cloud;
  cloud.grid = grid;
  cloud.samples.resize(static_cast<size_t>(grid.r_count) * static_cast<size_t>(grid.theta_count));
  const double r_step = grid.r_max / static_cast<double>(grid.r_count - 1);
  loop(grid.r_count * grid.theta_count, [&](int idx) {
    int i = idx / grid.theta_count;
    int j = idx % grid.theta_count;
    double r = r_step * static_cast<double>(i);
    double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid.theta_count);
    DiskPoint w(Complex(r * std::cos(theta), r * std::sin(theta)));
    cloud.samples[static_cast<size_t>(idx)] = {w.value(), source_value(gamma, source, w)};
  });
  return cloud;
}

}  // namespace

RangeCloud sample_berezin_range(int gamma, const BerezinSourceSpec& source, const PolarGrid& grid) {
  return sample_cloud(gamma, source, grid,
                      [](int count, auto&& body) { detail::parallel_for(count, body); });
}

RangeCloud sample_berezin_range_serial(int gamma, const BerezinSourceSpec& source, const PolarGrid& grid) {
  return sample_cloud(gamma, source, grid,
                      [](int count, auto&& body) { detail::serial_for(count, body); });
}

// ---------------------------------------------------------------------------
// Geometry witnesses
// ---------------------------------------------------------------------------

SymmetryWitness symmetry_witness(int gamma, const BlaschkeParam& alpha, DiskPoint w) {
  require_gamma(gamma);
  Complex a = alpha.value();
  Complex ww = w.value();
  if (a == Complex(0.0, 0.0) || ww == Complex(0.0, 0.0)) {
    // Transform is real here; the point is its own reflection.
    Complex v = berezin_blaschke(gamma, alpha, w);
    return {w, std::abs(std::conj(v) - v)};
  }
  DiskPoint lambda((std::norm(ww) / std::norm(a)) * (a * a / ww));
  double residual =
      std::abs(std::conj(berezin_blaschke(gamma, alpha, w)) - berezin_blaschke(gamma, alpha, lambda));
  return {lambda, residual};
}

double mirror_identity_defect(int gamma, const BlaschkeParam& alpha, DiskPoint w) {
  require_gamma(gamma);
  BlaschkeParam neg(-alpha.value());
  DiskPoint neg_w(-w.value());
  return std::abs(berezin_blaschke(gamma, alpha, w) - berezin_blaschke(gamma, neg, neg_w));
}

double real_slice_value(int gamma, const BlaschkeParam& alpha, double r) {
  require_gamma(gamma);
  double a = std::abs(alpha.value());
  if (a > 0.0 && !(std::abs(r) < 1.0 / a))
    throw domain_error("real_slice_value: need |r| < 1/|alpha|");
  return real_ipow(1.0 - r * a * a, gamma);
}

NonconvexityWitness nonconvexity_certificate(int gamma, const BlaschkeParam& alpha,
                                             const NonconvexSearchGrid& grid) {
  require_gamma(gamma);
  if (grid.theta_count < 8) throw argument_error("nonconvexity_certificate: theta_count must be >= 8");
  if (!(grid.initial_radius > 0.0) || !(grid.initial_radius <= kMaxDiskModulus))
    throw argument_error("nonconvexity_certificate: initial_radius must lie in (0, 1 - 1e-9]");
  if (alpha.value() == Complex(0.0, 0.0))
    throw search_error("nonconvexity_certificate: alpha = 0 collapses the range to {1}; no witness exists");

  const double floor_value = real_ipow(1.0 - std::abs(alpha.value()), gamma);
  const double target_re = floor_value - 0.01 * floor_value;

  double radius = grid.initial_radius;
  for (int ref = 0; ref <= grid.ring_refinements; ++ref) {
    for (int it = 0; it < grid.theta_count; ++it) {
      double theta = 2.0 * kPi * static_cast<double>(it) / static_cast<double>(grid.theta_count);
      DiskPoint z(radius * Complex(std::cos(theta), std::sin(theta)));
      Complex v = berezin_blaschke(gamma, alpha, z);
      if (v.imag() != 0.0 && v.real() < target_re) {
        // conj(v) is in the range too (reflection symmetry), so the segment
        // [v, conj(v)] has midpoint Re(v) strictly below every real value of
        // the transform.
        return {z.value(), v, std::conj(v), v.real(), floor_value, floor_value - v.real()};
      }
    }
    radius = std::min(1.0 - (1.0 - radius) / 10.0, kMaxDiskModulus);
  }
  throw search_error("nonconvexity_certificate: search grid exhausted without a witness");
}

ConvexityVerdict elliptic_convexity_verdict(int gamma, const EllipticBeta& beta, const PolarGrid& grid) {
  require_gamma(gamma);
  validate_grid(grid);
  Complex b = beta.value();
  const int count = grid.r_count;
  const double r_step = grid.r_max / static_cast<double>(count - 1);
  std::vector<Complex> curve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i)
    curve[static_cast<size_t>(i)] = berezin_elliptic(gamma, beta, r_step * static_cast<double>(i));

  if (b.imag() == 0.0) {
    // Real beta in [-1, 1]: the range is an interval on the real axis.
    ConvexityVerdict verdict;
    verdict.convex = true;
    verdict.real_min = curve[0].real();
    verdict.real_max = curve[0].real();
    for (const Complex& v : curve) {
      verdict.real_min = std::min(verdict.real_min, v.real());
      verdict.real_max = std::max(verdict.real_max, v.real());
    }
    return verdict;
  }

  // Non-real beta: the range is a genuinely curved arc; exhibit two samples
  // whose midpoint is far from every sample.
  auto local_resolution = [&](int q) {
    double res = 0.0;
    if (q > 0) res = std::max(res, std::abs(curve[static_cast<size_t>(q)] - curve[static_cast<size_t>(q - 1)]));
    if (q + 1 < count)
      res = std::max(res, std::abs(curve[static_cast<size_t>(q + 1)] - curve[static_cast<size_t>(q)]));
    return res;
  };
  const int stride = std::max(1, count / 8);
  for (int i = 0; i < count; i += stride) {
    if (std::abs(curve[static_cast<size_t>(i)].imag()) <= 1e-12) continue;
    for (int j = i + stride; j < count; j += stride) {
      if (std::abs(curve[static_cast<size_t>(j)].imag()) <= 1e-12) continue;
      Complex mid = 0.5 * (curve[static_cast<size_t>(i)] + curve[static_cast<size_t>(j)]);
      double best = std::numeric_limits<double>::infinity();
      int best_q = 0;
      for (int q = 0; q < count; ++q) {
        double d = std::abs(mid - curve[static_cast<size_t>(q)]);
        if (d < best) {
          best = d;
          best_q = q;
        }
      }
      double res = local_resolution(best_q);
      if (best > 10.0 * res) {
        ConvexityVerdict verdict;
        verdict.convex = false;
        verdict.sample_a = curve[static_cast<size_t>(i)];
        verdict.sample_b = curve[static_cast<size_t>(j)];
        verdict.midpoint = mid;
        verdict.midpoint_distance = best;
        verdict.resolution = res;
        return verdict;
      }
    }
  }
  throw search_error("elliptic_convexity_verdict: no midpoint violation found on the sampled curve");
}

}  // namespace bkit
