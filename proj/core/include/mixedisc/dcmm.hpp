#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "mixedisc/graph.hpp"
#include "mixedisc/membership.hpp"

namespace mixedisc {

/// Degree-corrected mixed membership model. Edges are independent
/// Bernoulli with P(edge ij) = theta(i) theta(j) pi_i' P pi_j.
struct DcmmParams {
  int n = 0;
  int k = 0;
  Eigen::MatrixXd mixing;   // K x K symmetric, entries in [0,1], nonsingular
  Eigen::VectorXd theta;    // length n, strictly positive
  MembershipMatrix pi;      // n x K row-stochastic

  /// Throws std::invalid_argument on any violated model constraint,
  /// including edge probabilities exceeding 1 (checked through
  /// theta_max^2 * max entry of Pi P Pi').
  void validate() const;
};

/// Whether the expected-adjacency bilinear form keeps its diagonal.
/// `zero` matches the no-self-loop network and is what the sampler uses;
/// `full` keeps the exact rank-K structure needed by population analyses.
enum class OmegaDiagonal { zero, full };

/// Omega(i,j) = theta(i) theta(j) sum_kl pi_i(k) pi_j(l) P(k,l).
Eigen::MatrixXd expected_adjacency(const DcmmParams& params,
                                   OmegaDiagonal diag = OmegaDiagonal::zero);

/// One network draw: each unordered pair is an independent Bernoulli with
/// its Omega probability. Bit-reproducible for a given seed.
AdjacencyMatrix sample_adjacency(const DcmmParams& params, std::uint64_t seed);

/// Population Laplacian: row sums of Omega shifted by tau, then the usual
/// two-sided inverse-sqrt scaling. Rank is exactly K in the `full` form.
Eigen::MatrixXd population_laplacian(const DcmmParams& params, double tau,
                                     OmegaDiagonal diag = OmegaDiagonal::full);

/// Simulation designs: n=500, K=3, first 3*n0 nodes pure, the rest split
/// over the mixed profiles (x,x,1-2x), (x,1-2x,x), (1-2x,x,x),
/// (1/3,1/3,1/3); P has diagonal 0.8 and off-diagonal rho; 1/theta(i)
/// drawn iid Uniform(1, z).
///
///   id 1 varies n0 in [40,160]   (fixed x=0.4, rho=0.3, z=4)
///   id 2 varies rho in [0,0.4]   (fixed x=0.4, n0=100, z=4)
///   id 3 varies x in [0,0.5]     (fixed n0=100, rho=0.3, z=4)
///   id 4 varies z in [1,8]       (fixed n0=100, rho=0.3, x=0.4)
///
/// `n` overrides the node count for reduced-scale runs; n0 then scales
/// proportionally and any remainder of the four-way mixed split goes to
/// the earliest profiles. theta is drawn from the given seed in node order.
DcmmParams experiment_params(int experiment_id, double grid_point, std::uint64_t seed,
                             int n = 500);

/// The published grid of the varied parameter for each experiment.
std::vector<double> experiment_default_grid(int experiment_id);

}  // namespace mixedisc
