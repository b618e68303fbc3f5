#pragma once

#include <cstddef>
#include <vector>

namespace coverart {

// Eigendecomposition of a symmetric matrix via cyclic Jacobi rotations.
// A = V diag(values) V^T with eigenvectors in the COLUMNS of V (row-major
// n x n).  Values are sorted ascending.  Intended for the small matrices
// used here (n <= 64); throws beyond that or when A is not symmetric.
struct SymEig {
  std::vector<double> values;
  std::vector<double> vectors;
  size_t n = 0;
};

SymEig sym_eigen(const std::vector<double>& A, size_t n);

// helpers shared by the distance code; all matrices row-major n x n
std::vector<double> mat_mul(const std::vector<double>& A,
                            const std::vector<double>& B, size_t n);
std::vector<double> mat_transpose(const std::vector<double>& A, size_t n);
double mat_trace(const std::vector<double>& A, size_t n);

// Symmetric positive-semidefinite square root; eigenvalues below zero are
// clipped to zero before taking the root.
std::vector<double> spd_sqrt(const std::vector<double>& A, size_t n);

// Cholesky factor L (lower) of a positive-definite matrix; throws if a pivot
// falls below epsilon.
std::vector<double> cholesky(const std::vector<double>& A, size_t n,
                             double jitter = 0.0);

}  // namespace coverart
