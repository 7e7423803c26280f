#include "mixedisc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mixedisc {

// Hungarian algorithm with row/column potentials. Standard shortest
// augmenting path formulation; indices are 1-based internally with row 0
// as the scratch slot.
std::vector<int> solve_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  if (cost.cols() != n) throw std::invalid_argument("assignment cost matrix must be square");
  if (n == 0) return {};
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0);  // match[col] = row occupying it
  std::vector<int> way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n);
  for (int j = 1; j <= n; ++j) {
    if (match[j] != 0) row_to_col[match[j] - 1] = j - 1;
  }
  return row_to_col;
}

double mixed_hamming(const MembershipMatrix& pi_hat, const MembershipMatrix& pi) {
  if (pi_hat.node_count() != pi.node_count() || pi_hat.community_count() != pi.community_count()) {
    throw std::invalid_argument("membership matrices must share dimensions");
  }
  const Eigen::Index k = pi.community_count();
  Eigen::MatrixXd cost(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index c = 0; c < k; ++c) {
      cost(j, c) = (pi_hat.rows().col(j) - pi.rows().col(c)).cwiseAbs().sum();
    }
  }
  const std::vector<int> perm = solve_assignment(cost);
  double total = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) total += cost(j, perm[j]);
  return total / static_cast<double>(pi.node_count());
}

std::pair<std::int64_t, double> hard_error_rate(const MembershipMatrix& pi_hat,
                                                const std::vector<int>& labels) {
  const Eigen::Index n = pi_hat.node_count();
  const int k = static_cast<int>(pi_hat.community_count());
  if (static_cast<Eigen::Index>(labels.size()) != n) {
    throw std::invalid_argument("label vector length does not match membership rows");
  }
  Eigen::MatrixXd confusion = Eigen::MatrixXd::Zero(k, k);
  const std::vector<int> hard = pi_hat.hard_labels();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (labels[i] < 0 || labels[i] >= k) {
      throw std::invalid_argument("label " + std::to_string(labels[i]) + " out of range");
    }
    confusion(hard[i], labels[i]) += 1.0;
  }
  // maximize matches == minimize (n - matches)
  const std::vector<int> perm = solve_assignment(-confusion);
  double matched = 0.0;
  for (int j = 0; j < k; ++j) matched += confusion(j, perm[j]);
  const auto mismatches = static_cast<std::int64_t>(std::llround(static_cast<double>(n) - matched));
  return {mismatches, static_cast<double>(mismatches) / static_cast<double>(n)};
}

const char* to_string(MatrixSource s) {
  return s == MatrixSource::adjacency ? "adjacency" : "laplacian";
}

MatrixSource parse_matrix_source(const std::string& s) {
  if (s == "adjacency") return MatrixSource::adjacency;
  if (s == "laplacian") return MatrixSource::laplacian;
  throw std::invalid_argument("unknown matrix source '" + s + "' (expected adjacency or laplacian)");
}

SignalClassification classify_from_eigenvalues(double lambda_k, double lambda_k1,
                                               MatrixSource source, bool connected) {
  if (lambda_k == 0.0) throw std::domain_error("lambda_K is zero; the signal ratio is undefined");
  SignalClassification c;
  c.lambda_k = lambda_k;
  c.lambda_k1 = lambda_k1;
  c.source = source;
  c.connected = connected;
  c.ratio_gap = 1.0 - std::abs(lambda_k1 / lambda_k);
  c.is_weak = c.ratio_gap <= 0.1;
  return c;
}

SignalClassification classify_signal(MatrixSource source, const AdjacencyMatrix& a, int k,
                                     double c, DMode d_mode, const TopEigsOptions& eig) {
  if (k + 1 > a.node_count()) throw std::invalid_argument("need K+1 <= n");
  EigenPairs pairs;
  if (source == MatrixSource::adjacency) {
    pairs = top_eigs(a.to_sparse(), k + 1, eig);
  } else {
    const double tau = default_tau(a, c, d_mode);
    pairs = top_eigs(regularized_laplacian(a, tau).values, k + 1, eig);
  }
  const double scale = std::abs(pairs.values[0]);
  if (std::abs(pairs.values[k - 1]) <= 1e-12 * std::max(scale, 1.0)) {
    throw std::domain_error("lambda_K is numerically zero; the signal ratio is undefined");
  }
  return classify_from_eigenvalues(pairs.values[k - 1], pairs.values[k], source, a.connected());
}

SummaryStats summary_stats(const AdjacencyMatrix& a, const MembershipMatrix* pi, int k) {
  SummaryStats s;
  s.n = a.node_count();
  s.k = k;
  if (s.n > 1) {
    const double e2 = 2.0 * static_cast<double>(a.edge_count());
    s.density = e2 / (static_cast<double>(s.n) * static_cast<double>(s.n - 1));
    s.mean_degree = e2 / static_cast<double>(s.n);
  }
  if (pi != nullptr) {
    if (pi->node_count() != s.n) throw std::invalid_argument("membership rows do not match node count");
    std::int64_t mixed = 0;
    for (Eigen::Index i = 0; i < pi->node_count(); ++i) {
      if (!pi->pure(i)) ++mixed;
    }
    s.overlap_fraction = s.n > 0 ? static_cast<double>(mixed) / static_cast<double>(s.n) : 0.0;
  }
  return s;
}

}  // namespace mixedisc
