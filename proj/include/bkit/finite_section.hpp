#pragma once

#include <Eigen/Dense>

#include "bkit/operators.hpp"
#include "bkit/types.hpp"

namespace bkit {

// Finite section of an operator in the orthonormal basis e_k = z^k / ||z^k||:
// entries(m, k) = <T e_k, e_m>. dim = 1 only.
struct OperatorMatrix {
  Eigen::MatrixXcd entries;
  SpaceSpec space;

  OperatorMatrix(Eigen::MatrixXcd m, SpaceSpec s);
  int size() const { return static_cast<int>(entries.rows()); }
};

// Builds the N x N section by expanding T e_k in the jet algebra
// (differentiate, compose with phi via shared phi-powers, multiply by psi,
// rescale by the basis norms). Entries are exact through the section for
// polynomial inputs; only FP rounding remains.
OperatorMatrix operator_matrix(const OperatorSpec& op, int size);

// max |(C T* C - T)(m, k)| over the retained block m, k < size - margin,
// using the coefficient action of the conjugation on the ON basis.
double matrix_cs_defect(const OperatorSpec& op, const ConjugationSpec& conj, int size, int margin);
double matrix_cs_defect(const OperatorMatrix& T, const ConjugationSpec& conj, int margin);

// max |(T* - T)(m, k)| over the retained block.
double matrix_sa_defect(const OperatorSpec& op, int size, int margin);
double matrix_sa_defect(const OperatorMatrix& T, int margin);

}  // namespace bkit
