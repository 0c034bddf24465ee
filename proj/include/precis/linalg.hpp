#pragma once

#include <vector>

#include "precis/matrix.hpp"

namespace precis {

// A Cholesky pivot at or below kPdPivotRel times the largest diagonal entry
// classifies the matrix as not positive definite.
inline constexpr double kPdPivotRel = 1e-12;

CholeskyFactor cholesky_pd(const SymmetricMatrix& m);

// 2 * sum(log(diag(L))) for the Cholesky factor L of m.
double log_det_pd(const SymmetricMatrix& m);

// Inverse via Cholesky; result symmetrized by averaging.
SymmetricMatrix invert_pd(const SymmetricMatrix& m);

// Symmetric eigendecomposition (cyclic Jacobi). Eigenvalues ascending,
// eigenvectors in the corresponding columns.
struct EigenSym {
    std::vector<double> values;
    Matrix vectors;
};
EigenSym eigen_sym(const SymmetricMatrix& m);

// Spectral square root of a PSD matrix; eigenvalues below zero are clamped
// to zero before taking roots.
SymmetricMatrix sym_matrix_sqrt(const SymmetricMatrix& m);

Matrix matmul(const Matrix& a, const Matrix& b);

// sum_ij a_ij * b_ij == tr(A B) for symmetric A, B.
double trace_product_sym(const SymmetricMatrix& a, const SymmetricMatrix& b);

}  // namespace precis
