#include "bkit/finite_section.hpp"

#include <cmath>

#include "bkit/kernels.hpp"

namespace bkit {

OperatorMatrix::OperatorMatrix(Eigen::MatrixXcd m, SpaceSpec s) : entries(std::move(m)), space(s) {
  if (entries.rows() != entries.cols()) throw argument_error("OperatorMatrix: must be square");
  if (entries.rows() < 1) throw argument_error("OperatorMatrix: must be at least 1 x 1");
  require_dim_match(space, 1, "OperatorMatrix");
}

namespace {

double falling_factorial(int k, int n) {
  double acc = 1.0;
  for (int i = 0; i < n; ++i) acc *= static_cast<double>(k - i);
  return acc;
}

// Shared phi-power table pw[m] = phi^m truncated at `degree`.
std::vector<TruncatedSeries> phi_powers(const LftSymbol& phi, int degree, int max_power) {
  std::vector<TruncatedSeries> pw;
  pw.reserve(static_cast<size_t>(max_power) + 1);
  TruncatedSeries one(degree);
  one[0] = Complex(1.0, 0.0);
  pw.push_back(one);
  TruncatedSeries phis = lft_to_series(phi, degree);
  for (int m = 1; m <= max_power; ++m) pw.push_back(series_mul(pw.back(), phis));
  return pw;
}

struct SectionTerm {
  Complex coefficient;
  int order;
  std::vector<TruncatedSeries> psi_phi_pow;  // psi * phi^m for m = 0..degree
};

void add_term_columns(Eigen::MatrixXcd& entries, const SectionTerm& term,
                      const std::vector<double>& norm_sqrt) {
  const int size = static_cast<int>(entries.rows());
  for (int k = term.order; k < size; ++k) {
    const TruncatedSeries& col = term.psi_phi_pow[static_cast<size_t>(k - term.order)];
    Complex scale = term.coefficient * falling_factorial(k, term.order) / norm_sqrt[static_cast<size_t>(k)];
    for (int m = 0; m < size; ++m)
      entries(m, k) += scale * col[m] * norm_sqrt[static_cast<size_t>(m)];
  }
}

}  // namespace

OperatorMatrix operator_matrix(const OperatorSpec& op, int size) {
  SpaceSpec space = operator_space(op);
  require_dim_match(space, 1, "operator_matrix");
  if (size < 1) throw argument_error("operator_matrix: size must be >= 1");
  const int degree = size - 1;

  std::vector<double> norm_sqrt(static_cast<size_t>(size));
  for (int m = 0; m < size; ++m)
    norm_sqrt[static_cast<size_t>(m)] = std::sqrt(basis_norm_sq(space, MultiIndex({m})));

  Eigen::MatrixXcd entries = Eigen::MatrixXcd::Zero(size, size);

  auto build_term = [&](Complex coefficient, int order, const Weight& weight,
                        const std::vector<TruncatedSeries>& pw) {
    SectionTerm term{coefficient, order, {}};
    TruncatedSeries psi = weight.to_series(degree);
    term.psi_phi_pow.reserve(static_cast<size_t>(degree) + 1);
    for (int m = 0; m <= degree; ++m) term.psi_phi_pow.push_back(series_mul(psi, pw[static_cast<size_t>(m)]));
    add_term_columns(entries, term, norm_sqrt);
  };

  if (const auto* cd = std::get_if<CompDiffOp>(&op)) {
    auto pw = phi_powers(cd->maps[0], degree, degree);
    build_term(Complex(1.0, 0.0), cd->orders[0], cd->weights[0], pw);
  } else {
    const auto& gs = std::get<GeneralizedSumOp>(op);
    auto pw = phi_powers(gs.map, degree, degree);
    for (const SumTerm& t : gs.terms) build_term(t.coefficient, t.order, t.weight, pw);
  }
  return OperatorMatrix(std::move(entries), space);
}

namespace {

int retained_block(const OperatorMatrix& T, int margin) {
  if (margin < 0 || margin >= T.size())
    throw argument_error("matrix defect: margin must lie in [0, size)");
  return T.size() - margin;
}

Complex rotation_xi(const ConjugationSpec& conj) {
  if (std::holds_alternative<WeightedCompConjugation>(conj))
    throw unsupported_error("matrix_cs_defect: weighted-composition conjugations are carried as data only");
  if (std::holds_alternative<StandardConjugation>(conj)) return Complex(1.0, 0.0);
  return std::get<RotationConjugation>(conj).xi;
}

}  // namespace

double matrix_cs_defect(const OperatorMatrix& T, const ConjugationSpec& conj, int margin) {
  // In the ON basis the conjugation acts as e_k -> mu xi^k e_k followed by
  // coefficient conjugation, so (C T* C)(m, k) = xi^m conj(xi^k) T(k, m);
  // mu cancels.
  Complex xi = rotation_xi(conj);
  const int block = retained_block(T, margin);
  std::vector<Complex> xipow(static_cast<size_t>(block));
  Complex acc(1.0, 0.0);
  for (int m = 0; m < block; ++m) {
    xipow[static_cast<size_t>(m)] = acc;
    acc *= xi;
  }
  double worst = 0.0;
  for (int m = 0; m < block; ++m)
    for (int k = 0; k < block; ++k) {
      Complex lhs = xipow[static_cast<size_t>(m)] * std::conj(xipow[static_cast<size_t>(k)]) * T.entries(k, m);
      worst = std::max(worst, std::abs(lhs - T.entries(m, k)));
    }
  return worst;
}

double matrix_cs_defect(const OperatorSpec& op, const ConjugationSpec& conj, int size, int margin) {
  if (std::holds_alternative<RotationConjugation>(conj) && operator_space(op).dim != 1)
    throw argument_error("matrix_cs_defect: rotation conjugations pair with dim = 1 operators only");
  return matrix_cs_defect(operator_matrix(op, size), conj, margin);
}

double matrix_sa_defect(const OperatorMatrix& T, int margin) {
  const int block = retained_block(T, margin);
  double worst = 0.0;
  for (int m = 0; m < block; ++m)
    for (int k = 0; k < block; ++k)
      worst = std::max(worst, std::abs(std::conj(T.entries(k, m)) - T.entries(m, k)));
  return worst;
}

double matrix_sa_defect(const OperatorSpec& op, int size, int margin) {
  return matrix_sa_defect(operator_matrix(op, size), margin);
}

}  // namespace bkit
