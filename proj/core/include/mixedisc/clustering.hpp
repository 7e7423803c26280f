#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

namespace mixedisc {

enum class ClusterMethod { kmeans, kmedian };

const char* to_string(ClusterMethod m);
ClusterMethod parse_cluster_method(const std::string& s);

/// K cluster centers over rows of an n x d point matrix.
struct ClusterCenters {
  Eigen::MatrixXd centers;  // K x d
  double inertia = 0.0;     // kmeans: sum of squared distances; kmedian: mean distance
  ClusterMethod method = ClusterMethod::kmeans;
};

struct ClusterOptions {
  int restarts = 10;
  int max_iter = 100;
  double tol = 1e-6;  // stop when the loss change drops below this
  std::uint64_t seed = 42;
};

/// Lloyd iterations with k-means++ seeding (probability proportional to
/// squared distance from the chosen centers). Best of `restarts` runs by
/// loss, ties to the earliest restart. An empty cluster is re-seeded at the
/// point farthest from its assigned center (lowest index on ties).
///
/// Throws std::invalid_argument when the points hold fewer than K distinct
/// rows.
ClusterCenters kmeans_pp(const Eigen::MatrixXd& points, int k, const ClusterOptions& opts = {});

/// Same search structure minimizing the mean Euclidean distance
/// (1/n) sum_i min_k ||x_i - v_k||; centers update by Weiszfeld iteration
/// toward the geometric median, skipping coincident points.
ClusterCenters kmedian(const Eigen::MatrixXd& points, int k, const ClusterOptions& opts = {});

/// Index of the nearest center to each row, ties to the lowest center.
std::vector<int> assign_to_centers(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers);

}  // namespace mixedisc
