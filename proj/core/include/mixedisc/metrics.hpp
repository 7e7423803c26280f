#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mixedisc/eigs.hpp"
#include "mixedisc/graph.hpp"
#include "mixedisc/laplacian.hpp"
#include "mixedisc/membership.hpp"

namespace mixedisc {

/// Minimum-cost perfect matching on a square cost matrix (Hungarian
/// algorithm, O(K^3)). Returns the matched column for each row.
std::vector<int> solve_assignment(const Eigen::MatrixXd& cost);

/// Mixed-Hamming error: min over column permutations O of
/// (1/n) * sum_ij |(Pi_hat O - Pi)(i,j)|. The objective decomposes over
/// matched columns, so the minimization is a K x K assignment problem.
double mixed_hamming(const MembershipMatrix& pi_hat, const MembershipMatrix& pi);

/// Hard labels by row argmax (ties to the lowest community), then the
/// permutation-minimal mismatch count and its rate.
std::pair<std::int64_t, double> hard_error_rate(const MembershipMatrix& pi_hat,
                                                const std::vector<int>& labels);

enum class MatrixSource { adjacency, laplacian };

const char* to_string(MatrixSource s);
MatrixSource parse_matrix_source(const std::string& s);

/// Weak/strong signal classification: a network is weak when
/// 1 - |lambda_{K+1} / lambda_K| <= 0.1 for the magnitude-ordered
/// eigenvalues of the chosen matrix (adjacency or regularized Laplacian).
struct SignalClassification {
  double ratio_gap = 0.0;
  bool is_weak = false;
  MatrixSource source = MatrixSource::adjacency;
  double lambda_k = 0.0;
  double lambda_k1 = 0.0;
  bool connected = true;  // the definition presumes connectivity; false is a warning
};

SignalClassification classify_from_eigenvalues(double lambda_k, double lambda_k1,
                                               MatrixSource source, bool connected);

/// Computes the top K+1 eigenvalues of the chosen matrix and classifies.
/// Throws std::domain_error when lambda_K is numerically zero.
SignalClassification classify_signal(MatrixSource source, const AdjacencyMatrix& a, int k,
                                     double c = 0.1, DMode d_mode = DMode::midrange,
                                     const TopEigsOptions& eig = {});

struct SummaryStats {
  std::int64_t n = 0;
  int k = 0;
  double mean_degree = 0.0;
  double density = 0.0;
  std::optional<double> overlap_fraction;  // absent when memberships are unknown
};

SummaryStats summary_stats(const AdjacencyMatrix& a, const MembershipMatrix* pi, int k);

}  // namespace mixedisc
