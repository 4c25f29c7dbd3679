#pragma once

#include <variant>
#include <vector>

#include "bkit/finite_section.hpp"
#include "bkit/symbols.hpp"
#include "bkit/types.hpp"

namespace bkit {

// Blaschke parameter: phi_alpha(z) = (z - alpha) / (1 - conj(alpha) z).
class BlaschkeParam {
 public:
  explicit BlaschkeParam(Complex alpha) : alpha_(alpha) {
    if (!(std::abs(alpha) < 1.0)) throw argument_error("BlaschkeParam: |alpha| must be < 1");
  }
  Complex value() const { return alpha_; }

 private:
  Complex alpha_;
};

// Elliptic parameter: phi(w) = beta w with |beta| <= 1.
class EllipticBeta {
 public:
  explicit EllipticBeta(Complex beta) : beta_(beta) {
    if (!(std::abs(beta) <= 1.0)) throw argument_error("EllipticBeta: |beta| must be <= 1");
  }
  Complex value() const { return beta_; }

 private:
  Complex beta_;
};

// Berezin transform of a composition operator at w:
//   [(1 - |w|^2) / (1 - conj(w) phi(w))]^gamma.
Complex berezin_composition(int gamma, const LftSymbol& phi, DiskPoint w);
Complex berezin_composition(int gamma, const TruncatedSeries& phi, DiskPoint w);

// Blaschke closed form
//   [(1 - |w|^2)(1 - conj(alpha) w) / (1 - |w|^2 + alpha conj(w) - conj(alpha) w)]^gamma;
// the denominator's imaginary part is 2 Im(alpha conj(w)), so it vanishes only
// on the boundary.
Complex berezin_blaschke(int gamma, const BlaschkeParam& alpha, DiskPoint w);

// Elliptic closed form (1 - r^2)^gamma / (1 - r^2 beta)^gamma; depends on |w|
// only.
Complex berezin_elliptic(int gamma, const EllipticBeta& beta, double r);

// <T kappa, kappa> / <kappa, kappa> with kappa the truncated kernel
// coefficient vector; a Rayleigh quotient of T, so it lies in W(T). Rejects w
// whose truncated kernel keeps less than 1 - 1e-8 of the norm, reporting the
// section size that would suffice.
Complex berezin_matrix(const OperatorMatrix& T, DiskPoint w);

// ---------------------------------------------------------------------------
// Range clouds
// ---------------------------------------------------------------------------

struct PolarGrid {
  int r_count = 200;
  int theta_count = 512;
  double r_max = 0.995;
};

struct BerezinSample {
  Complex w;
  Complex value;
};

struct RangeCloud {
  std::vector<BerezinSample> samples;  // size r_count * theta_count, row-major in r
  PolarGrid grid;
};

using BerezinSourceSpec = std::variant<BlaschkeParam, EllipticBeta, LftSymbol, OperatorMatrix>;

// Samples the Berezin transform over the polar grid (r ascending, then theta
// ascending within each ring). gamma is ignored for matrix sources, which
// carry their own space.
RangeCloud sample_berezin_range(int gamma, const BerezinSourceSpec& source, const PolarGrid& grid);
RangeCloud sample_berezin_range_serial(int gamma, const BerezinSourceSpec& source, const PolarGrid& grid);

// ---------------------------------------------------------------------------
// Geometry witnesses
// ---------------------------------------------------------------------------

// The reflected point lambda = (|w|^2 / |alpha|^2)(alpha^2 / w) satisfies
// |lambda| = |w| and conj(Ber(w)) = Ber(lambda); residual is the sampled
// violation. alpha = 0 or w = 0 fall back to lambda = w (the transform is
// real there).
struct SymmetryWitness {
  DiskPoint lambda;
  double residual;
};
SymmetryWitness symmetry_witness(int gamma, const BlaschkeParam& alpha, DiskPoint w);

// |Ber_alpha(w) - Ber_{-alpha}(-w)|.
double mirror_identity_defect(int gamma, const BlaschkeParam& alpha, DiskPoint w);

// Value on the alpha-line: Ber(r alpha) = (1 - r |alpha|^2)^gamma for
// r in (-1/|alpha|, 1/|alpha|); sweeps the open interval
// ((1-|alpha|)^gamma, (1+|alpha|)^gamma).
double real_slice_value(int gamma, const BlaschkeParam& alpha, double r);

// Nonconvexity certificate: a sample v with Im(v) != 0 and
// Re(v) < (1-|alpha|)^gamma - delta, delta = 0.01 (1-|alpha|)^gamma. Its
// conjugate is also in the range, so the midpoint Re(v) of the pair lies
// strictly below the real slice: the range is not convex.
struct NonconvexityWitness {
  Complex z;
  Complex value;
  Complex conj_partner;
  double midpoint;
  double real_slice_inf;
  double gap;
};

struct NonconvexSearchGrid {
  int theta_count = 256;
  double initial_radius = 0.999;
  int ring_refinements = 6;  // each refinement moves the ring 10x closer to the boundary
};

NonconvexityWitness nonconvexity_certificate(int gamma, const BlaschkeParam& alpha,
                                             const NonconvexSearchGrid& grid = {});

// Convexity verdict for the elliptic family: real beta in [-1, 1] gives a
// real segment; otherwise the range is a curve and a sampled pair whose
// midpoint is far from the cloud certifies nonconvexity.
struct ConvexityVerdict {
  bool convex;
  // convex case
  double real_min = 0.0, real_max = 0.0;
  // nonconvex case
  Complex sample_a, sample_b, midpoint;
  double midpoint_distance = 0.0;  // distance from midpoint to the sampled curve
  double resolution = 0.0;         // local sample spacing used for the 10x test
};

ConvexityVerdict elliptic_convexity_verdict(int gamma, const EllipticBeta& beta, const PolarGrid& grid);

}  // namespace bkit
