#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>

namespace mixedisc {

/// Leading eigenpairs of a symmetric matrix, ordered by decreasing |lambda|.
///
/// Ordering ties break positive-before-negative, then by position in the
/// underlying decomposition. Each eigenvector has unit norm and a
/// deterministic sign: its entry of largest absolute value (lowest index on
/// ties) is positive.
struct EigenPairs {
  Eigen::VectorXd values;     // m entries, |values[0]| >= ... >= |values[m-1]|
  Eigen::MatrixXd vectors;    // n x m, unit-norm columns
  Eigen::VectorXd residuals;  // achieved ||M v - lambda v|| per pair
};

struct TopEigsOptions {
  double tol = 1e-10;            // relative residual bound
  int dense_threshold = 2048;    // n above this switches to Lanczos
  std::uint64_t lanczos_seed = 0x6d697865646973ull;  // start-vector seed
  int check_interval = 8;        // Ritz convergence test cadence
};

/// Top-m eigenpairs by magnitude of a symmetric matrix.
///
/// Dense symmetric eigendecomposition up to `dense_threshold`, Lanczos with
/// full reorthogonalization above it. Throws std::invalid_argument when m is
/// out of range or M is visibly asymmetric, std::runtime_error (with the
/// achieved residual) when Lanczos fails to converge.
EigenPairs top_eigs(const Eigen::MatrixXd& m, int count, const TopEigsOptions& opts = {});
EigenPairs top_eigs(const Eigen::SparseMatrix<double>& m, int count,
                    const TopEigsOptions& opts = {});

}  // namespace mixedisc
