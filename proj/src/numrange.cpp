#include "bkit/numrange.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "bkit/detail/parallel_map.hpp"

namespace bkit {

Complex numrange_point(std::span<const CompositionTerm> terms, DiskPoint z) {
  if (terms.empty()) throw argument_error("numrange_point: needs at least one term");
  Complex zz = z.value();
  double kernel_factor = 1.0 - std::norm(zz);
  Complex acc(0.0, 0.0);
  for (const CompositionTerm& t : terms) {
    Complex phi_z = t.map.eval(zz);
    if (!(std::abs(phi_z) < 1.0)) throw domain_error("numrange_point: phi(z) is not in the disk");
    acc += std::conj(t.weight.eval(zz)) * kernel_factor / (1.0 - std::conj(zz) * phi_z);
  }
  return acc;
}

std::vector<double> boundary_decay_probe(std::span<const CompositionTerm> terms, Complex xi,
                                         std::span<const double> radii) {
  if (std::abs(std::abs(xi) - 1.0) > 1e-14)
    throw argument_error("boundary_decay_probe: xi must be unimodular to 1e-14");
  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) out.push_back(std::abs(numrange_point(terms, DiskPoint(r * xi))));
  return out;
}

namespace {

struct SupportSweep {
  std::vector<Complex> vertices;  // Rayleigh quotients at the top eigenvectors
  std::vector<double> support;    // h(theta) = lambda_max of the Hermitian part
};

// One angle of the sweep. theta rotates the plane so the top eigenvector of
// the Hermitian part supports W(T) in direction e^{i theta}.
void sweep_angle(const Eigen::MatrixXcd& T, double theta, Complex& vertex, double& support) {
  Complex rot = std::exp(Complex(0.0, -theta));
  Eigen::MatrixXcd A = rot * T;
  Eigen::MatrixXcd H = 0.5 * (A + A.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
  if (solver.info() != Eigen::Success)
    throw numerical_error("numerical_range_hull: eigensolver failed to converge");
  const int top = static_cast<int>(H.rows()) - 1;
  support = solver.eigenvalues()(top);
  Eigen::VectorXcd x = solver.eigenvectors().col(top);
  vertex = (x.adjoint() * T * x)(0, 0);
}

template <typename ForLoop>
SupportSweep run_sweep(const Eigen::MatrixXcd& T, int angles, const ForLoop& loop) {
  if (T.rows() != T.cols() || T.rows() < 1)
    throw argument_error("numerical_range_hull: matrix must be square and nonempty");
  if (angles < 8) throw argument_error("numerical_range_hull: need at least 8 angles");
  SupportSweep sweep;
  sweep.vertices.resize(static_cast<size_t>(angles));
  sweep.support.resize(static_cast<size_t>(angles));
  loop(angles, [&](int i) {
    double theta = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(angles);
    sweep_angle(T, theta, sweep.vertices[static_cast<size_t>(i)], sweep.support[static_cast<size_t>(i)]);
  });
  return sweep;
}

}  // namespace

std::vector<Complex> numerical_range_hull(const Eigen::MatrixXcd& T, int angles) {
  return run_sweep(T, angles, [](int count, auto&& body) { detail::parallel_for(count, body); }).vertices;
}

std::vector<Complex> numerical_range_hull_serial(const Eigen::MatrixXcd& T, int angles) {
  return run_sweep(T, angles, [](int count, auto&& body) { detail::serial_for(count, body); }).vertices;
}

bool polygon_is_convex(std::span<const Complex> vertices, double tol) {
  if (vertices.size() < 3) return true;
  // Scale-aware slack: cross products of consecutive edges may dip slightly
  // negative from solver noise, and collinear runs give exact zeros.
  double scale = 0.0;
  const size_t n = vertices.size();
  for (size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(vertices[i]));
  double slack = tol * std::max(scale * scale, 1e-30);
  for (size_t i = 0; i < n; ++i) {
    Complex a = vertices[i];
    Complex b = vertices[(i + 1) % n];
    Complex c = vertices[(i + 2) % n];
    Complex e1 = b - a;
    Complex e2 = c - b;
    double cross = e1.real() * e2.imag() - e1.imag() * e2.real();
    if (cross < -slack) return false;
  }
  return true;
}

double berezin_in_numrange_check(const OperatorMatrix& T, const RangeCloud& cloud, int angles) {
  SupportSweep sweep =
      run_sweep(T.entries, angles, [](int count, auto&& body) { detail::parallel_for(count, body); });
  double worst = -std::numeric_limits<double>::infinity();
  for (const BerezinSample& s : cloud.samples) {
    double sample_slack = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < angles; ++i) {
      double theta = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(angles);
      double projected = s.value.real() * std::cos(theta) + s.value.imag() * std::sin(theta);
      sample_slack = std::max(sample_slack, projected - sweep.support[static_cast<size_t>(i)]);
    }
    worst = std::max(worst, sample_slack);
  }
  return worst;
}

}  // namespace bkit
