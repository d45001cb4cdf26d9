#pragma once

#include <Eigen/Dense>

namespace cliquemerge {

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column k pairs with values(k)
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for a symmetric matrix. Sweeps until the
/// off-diagonal Frobenius norm drops below `relative_tolerance` times its
/// initial value. Only the lower triangle is read.
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& m, double relative_tolerance = 1e-10,
                            int max_sweeps = 100);

/// Nearest positive semidefinite matrix in Frobenius norm: symmetrize,
/// clamp negative eigenvalues to zero, reassemble. Throws InputError on a
/// non-square or non-finite input.
Eigen::MatrixXd psd_project(const Eigen::MatrixXd& m);

}  // namespace cliquemerge
