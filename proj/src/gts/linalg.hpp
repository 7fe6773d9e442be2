#pragma once

#include <vector>

namespace gts {

// Dense helpers for the small (7x7) systems the fitter needs.

// Solves A x = b by Gaussian elimination with partial pivoting. A is n x n
// row-major and is consumed. Returns false when the matrix is numerically
// singular.
bool solve_dense(std::vector<double> a, std::vector<double> b, int n,
                 std::vector<double>& x);

// Eigenvalues of a symmetric matrix via cyclic Jacobi rotations, ascending.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

}  // namespace gts
