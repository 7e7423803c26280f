#include "mixedisc/dcmm.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mixedisc/rng.hpp"

namespace mixedisc {

void DcmmParams::validate() const {
  if (n < 1 || k < 1) throw std::invalid_argument("n and K must be positive");
  if (mixing.rows() != k || mixing.cols() != k) {
    throw std::invalid_argument("mixing matrix must be K x K");
  }
  if ((mixing - mixing.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("mixing matrix must be symmetric");
  }
  if (mixing.minCoeff() < 0.0 || mixing.maxCoeff() > 1.0) {
    throw std::invalid_argument("mixing matrix entries must lie in [0,1]");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(mixing);
  if (svd.singularValues()[k - 1] <= 1e-12) {
    throw std::invalid_argument("mixing matrix is singular");
  }
  if (theta.size() != n) throw std::invalid_argument("theta must have length n");
  if ((theta.array() <= 0.0).any()) throw std::invalid_argument("theta entries must be positive");
  if (pi.node_count() != n || pi.community_count() != k) {
    throw std::invalid_argument("membership matrix must be n x K");
  }
  const Eigen::MatrixXd profile = pi.rows() * mixing * pi.rows().transpose();
  const double theta_max = theta.maxCoeff();
  if (theta_max * theta_max * profile.maxCoeff() > 1.0 + 1e-12) {
    throw std::invalid_argument("edge probability exceeds 1: theta_max^2 * max(Pi P Pi') = " +
                                std::to_string(theta_max * theta_max * profile.maxCoeff()));
  }
}

Eigen::MatrixXd expected_adjacency(const DcmmParams& params, OmegaDiagonal diag) {
  params.validate();
  Eigen::MatrixXd omega =
      params.theta.asDiagonal() * (params.pi.rows() * params.mixing * params.pi.rows().transpose()) *
      params.theta.asDiagonal();
  if (omega.maxCoeff() > 1.0 + 1e-12) {
    throw std::invalid_argument("expected adjacency entry exceeds 1");
  }
  if (diag == OmegaDiagonal::zero) omega.diagonal().setZero();
  return omega;
}

AdjacencyMatrix sample_adjacency(const DcmmParams& params, std::uint64_t seed) {
  const Eigen::MatrixXd omega = expected_adjacency(params, OmegaDiagonal::zero);
  PhiloxRng rng(seed);
  EdgeList edges;
  for (int i = 0; i < params.n; ++i) {
    for (int j = i + 1; j < params.n; ++j) {
      if (rng.uniform01() < omega(i, j)) edges.emplace_back(i, j);
    }
  }
  return AdjacencyMatrix::build(params.n, edges);
}

Eigen::MatrixXd population_laplacian(const DcmmParams& params, double tau, OmegaDiagonal diag) {
  if (tau < 0.0) throw std::invalid_argument("tau must be nonnegative");
  const Eigen::MatrixXd omega = expected_adjacency(params, diag);
  const Eigen::VectorXd row_sums = omega.rowwise().sum();
  if (tau + row_sums.minCoeff() <= 0.0) {
    throw std::domain_error("zero expected degree with tau=0");
  }
  Eigen::VectorXd s(params.n);
  for (int i = 0; i < params.n; ++i) s[i] = 1.0 / std::sqrt(row_sums[i] + tau);
  return s.asDiagonal() * omega * s.asDiagonal();
}

namespace {

struct ExperimentFixed {
  double x, rho, z;
  int n0;
};

ExperimentFixed fixed_for(int id, double grid_point) {
  switch (id) {
    case 1: {
      const double n0 = grid_point;
      if (n0 < 40 || n0 > 160 || n0 != std::floor(n0)) {
        throw std::invalid_argument("experiment 1 requires integer n0 in [40, 160]");
      }
      return {0.4, 0.3, 4.0, static_cast<int>(n0)};
    }
    case 2:
      if (grid_point < 0.0 || grid_point > 0.4) {
        throw std::invalid_argument("experiment 2 requires rho in [0, 0.4]");
      }
      return {0.4, grid_point, 4.0, 100};
    case 3:
      if (grid_point < 0.0 || grid_point > 0.5) {
        throw std::invalid_argument("experiment 3 requires x in [0, 0.5]");
      }
      return {grid_point, 0.3, 4.0, 100};
    case 4:
      if (grid_point < 1.0 || grid_point > 8.0) {
        throw std::invalid_argument("experiment 4 requires z in [1, 8]");
      }
      return {0.4, 0.3, grid_point, 100};
    default:
      throw std::invalid_argument("experiment id must be 1, 2, 3, or 4");
  }
}

}  // namespace

DcmmParams experiment_params(int experiment_id, double grid_point, std::uint64_t seed, int n) {
  const ExperimentFixed f = fixed_for(experiment_id, grid_point);
  if (n < 12) throw std::invalid_argument("n too small for the simulation design");

  int n0 = f.n0;
  if (n != 500) {
    n0 = static_cast<int>(std::llround(static_cast<double>(f.n0) * n / 500.0));
  } else if ((n - 3 * n0) % 4 != 0) {
    throw std::invalid_argument("500 - 3*n0 must be divisible by 4, got n0=" + std::to_string(n0));
  }
  const int pure = 3 * n0;
  const int mixed = n - pure;
  if (mixed < 0) throw std::invalid_argument("3*n0 exceeds n");

  DcmmParams params;
  params.n = n;
  params.k = 3;
  params.mixing = Eigen::MatrixXd::Constant(3, 3, f.rho);
  params.mixing.diagonal().setConstant(0.8);

  Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(n, 3);
  for (int i = 0; i < pure; ++i) pi(i, i / std::max(n0, 1)) = 1.0;
  const double x = f.x;
  const Eigen::RowVector3d profiles[4] = {
      {x, x, 1.0 - 2.0 * x},
      {x, 1.0 - 2.0 * x, x},
      {1.0 - 2.0 * x, x, x},
      {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
  };
  const int q = mixed / 4;
  const int rem = mixed % 4;
  int row = pure;
  for (int g = 0; g < 4; ++g) {
    const int size = q + (g < rem ? 1 : 0);
    for (int s = 0; s < size; ++s) pi.row(row++) = profiles[g];
  }
  params.pi = MembershipMatrix(std::move(pi));

  // theta drawn in node order from a single stream, before any edge sampling
  PhiloxRng rng(seed);
  params.theta.resize(n);
  for (int i = 0; i < n; ++i) params.theta[i] = 1.0 / rng.uniform(1.0, f.z);
  params.validate();
  return params;
}

std::vector<double> experiment_default_grid(int experiment_id) {
  switch (experiment_id) {
    case 1: return {40, 60, 80, 100, 120, 140, 160};
    case 2: return {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4};
    case 3: return {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
    case 4: return {1, 2, 3, 4, 5, 6, 7, 8};
    default: throw std::invalid_argument("experiment id must be 1, 2, 3, or 4");
  }
}

}  // namespace mixedisc
