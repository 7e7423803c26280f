#pragma once

#include <Eigen/SparseCore>

#include "mixedisc/graph.hpp"

namespace mixedisc {

/// Which degree statistic the ridge regularizer tau = c * d is based on.
enum class DMode { midrange, mean, max };

const char* to_string(DMode m);
DMode parse_d_mode(const std::string& s);

/// Symmetric graph Laplacian with ridge regularization,
/// L(i,j) = A(i,j) / sqrt((d(i)+tau) (d(j)+tau)).
struct RegularizedLaplacian {
  Eigen::SparseMatrix<double> values;
  double tau = 0.0;
};

/// Throws std::domain_error when tau == 0 and some node is isolated,
/// naming the node.
RegularizedLaplacian regularized_laplacian(const AdjacencyMatrix& a, double tau);

/// Dense counterpart for a symmetric nonnegative matrix with row-sum
/// degrees. Same zero-degree rule as the sparse version.
Eigen::MatrixXd regularized_laplacian_dense(const Eigen::MatrixXd& m, double tau);

/// tau = c * d with d selected by mode: (d_max+d_min)/2, mean, or d_max.
double default_tau(const DegreeVector& d, double c, DMode mode);
double default_tau(const AdjacencyMatrix& a, double c, DMode mode);

}  // namespace mixedisc
