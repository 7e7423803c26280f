#include "mixedisc/laplacian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mixedisc {

const char* to_string(DMode m) {
  switch (m) {
    case DMode::midrange: return "midrange";
    case DMode::mean: return "mean";
    case DMode::max: return "max";
  }
  return "?";
}

DMode parse_d_mode(const std::string& s) {
  if (s == "midrange") return DMode::midrange;
  if (s == "mean") return DMode::mean;
  if (s == "max") return DMode::max;
  throw std::invalid_argument("unknown d-mode '" + s + "' (expected midrange, mean, or max)");
}

namespace {

Eigen::VectorXd inv_sqrt_shifted(const Eigen::VectorXd& deg, double tau) {
  if (tau < 0.0) throw std::invalid_argument("tau must be nonnegative");
  Eigen::VectorXd s(deg.size());
  for (Eigen::Index i = 0; i < deg.size(); ++i) {
    const double dt = deg[i] + tau;
    if (dt <= 0.0) {
      throw std::domain_error("node " + std::to_string(i) +
                              " has zero degree and tau=0; the Laplacian scaling divides by zero");
    }
    s[i] = 1.0 / std::sqrt(dt);
  }
  return s;
}

}  // namespace

RegularizedLaplacian regularized_laplacian(const AdjacencyMatrix& a, double tau) {
  const DegreeVector d = degrees(a);
  Eigen::VectorXd s;
  if (a.edge_count() == 0 && tau > 0.0) {
    // all-zero matrix; scaling is irrelevant
    s = Eigen::VectorXd::Zero(a.node_count());
  } else {
    s = inv_sqrt_shifted(d.values, tau);
  }
  const std::int64_t n = a.node_count();
  Eigen::SparseMatrix<double> l(n, n);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(a.edge_count()) * 2);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int32_t j : a.neighbors(i)) trips.emplace_back(i, j, s[i] * s[j]);
  l.setFromTriplets(trips.begin(), trips.end());
  return {std::move(l), tau};
}

Eigen::MatrixXd regularized_laplacian_dense(const Eigen::MatrixXd& m, double tau) {
  const DegreeVector d = degrees(m);
  if (m.rows() > 0 && d.values.maxCoeff() == 0.0 && tau > 0.0) {
    return Eigen::MatrixXd::Zero(m.rows(), m.cols());
  }
  const Eigen::VectorXd s = inv_sqrt_shifted(d.values, tau);
  return s.asDiagonal() * m * s.asDiagonal();
}

double default_tau(const DegreeVector& d, double c, DMode mode) {
  if (c < 0.0) throw std::invalid_argument("c must be nonnegative");
  switch (mode) {
    case DMode::midrange: return c * 0.5 * (d.max + d.min);
    case DMode::mean: return c * d.mean;
    case DMode::max: return c * d.max;
  }
  return 0.0;
}

double default_tau(const AdjacencyMatrix& a, double c, DMode mode) {
  if (a.node_count() == 0) throw std::invalid_argument("graph is empty");
  return default_tau(degrees(a), c, mode);
}

}  // namespace mixedisc
