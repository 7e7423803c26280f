#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

namespace mixedisc {

/// Row-stochastic n x K matrix; row i is node i's community weight PMF.
class MembershipMatrix {
 public:
  MembershipMatrix() = default;

  /// Validates nonnegativity and row sums of 1 within 1e-12.
  explicit MembershipMatrix(Eigen::MatrixXd rows);

  /// All-pure membership from hard labels in [0, K).
  static MembershipMatrix from_labels(const std::vector<int>& labels, int k);

  const Eigen::MatrixXd& rows() const { return rows_; }
  Eigen::Index node_count() const { return rows_.rows(); }
  Eigen::Index community_count() const { return rows_.cols(); }

  double purity(Eigen::Index i) const { return rows_.row(i).maxCoeff(); }

  /// True when row i is degenerate (one entry is 1 within 1e-9).
  bool pure(Eigen::Index i) const { return purity(i) >= 1.0 - 1e-9; }

  /// argmax per row, ties to the lowest community index.
  std::vector<int> hard_labels() const;

 private:
  Eigen::MatrixXd rows_;
};

/// Writes the `node,pi_1,...,pi_K` CSV with 12 significant digits.
void write_membership_csv(const std::string& path, const MembershipMatrix& m);

/// Reads the same schema back. With `normalize_rows`, raw nonnegative rows
/// (e.g. binary circle indicators) are divided by their row sum; a zero row
/// is an error listing the node.
MembershipMatrix read_membership_csv(const std::string& path, bool normalize_rows = false);

/// Single-column integer file of hard community labels.
std::vector<int> read_labels(const std::string& path);

}  // namespace mixedisc
