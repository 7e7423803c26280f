#include "mixedisc/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mixedisc/rng.hpp"

namespace mixedisc {

const char* to_string(ClusterMethod m) {
  return m == ClusterMethod::kmeans ? "kmeans" : "kmedian";
}

ClusterMethod parse_cluster_method(const std::string& s) {
  if (s == "kmeans") return ClusterMethod::kmeans;
  if (s == "kmedian") return ClusterMethod::kmedian;
  throw std::invalid_argument("unknown clustering method '" + s + "' (expected kmeans or kmedian)");
}

std::vector<int> assign_to_centers(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers) {
  std::vector<int> assign(points.rows());
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    int best = 0;
    double best_d = (points.row(i) - centers.row(0)).squaredNorm();
    for (Eigen::Index k = 1; k < centers.rows(); ++k) {
      const double d = (points.row(i) - centers.row(k)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(k);
      }
    }
    assign[i] = best;
  }
  return assign;
}

namespace {

void require_distinct_rows(const Eigen::MatrixXd& points, int k) {
  std::vector<Eigen::Index> idx(points.rows());
  for (Eigen::Index i = 0; i < points.rows(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index c = 0; c < points.cols(); ++c) {
      if (points(a, c) != points(b, c)) return points(a, c) < points(b, c);
    }
    return false;
  });
  Eigen::Index distinct = points.rows() == 0 ? 0 : 1;
  for (Eigen::Index i = 1; i < points.rows(); ++i) {
    if (points.row(idx[i]) != points.row(idx[i - 1])) ++distinct;
  }
  if (distinct < k) {
    throw std::invalid_argument("cannot place " + std::to_string(k) + " centers: only " +
                                std::to_string(distinct) + " distinct points");
  }
}

Eigen::MatrixXd plus_plus_seed(const Eigen::MatrixXd& points, int k, PhiloxRng& rng) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd centers(k, points.cols());
  centers.row(0) = points.row(static_cast<Eigen::Index>(rng.uniform_index(n)));
  Eigen::VectorXd d2(n);
  for (Eigen::Index i = 0; i < n; ++i) d2[i] = (points.row(i) - centers.row(0)).squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index pick = 0;
    if (total > 0.0) {
      const double u = rng.uniform01() * total;
      double acc = 0.0;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2[i];
        if (u < acc) {
          pick = i;
          break;
        }
      }
    } else {
      // all mass covered; fall back to the first uncovered-by-value point
      pick = static_cast<Eigen::Index>(rng.uniform_index(n));
    }
    centers.row(c) = points.row(pick);
    for (Eigen::Index i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], (points.row(i) - centers.row(c)).squaredNorm());
    }
  }
  return centers;
}

// Farthest point from its own center, lowest index on ties.
Eigen::Index farthest_point(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers,
                            const std::vector<int>& assign) {
  Eigen::Index best = 0;
  double best_d = -1.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const double d = (points.row(i) - centers.row(assign[i])).squaredNorm();
    if (d > best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

double loss_kmeans(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers,
                   const std::vector<int>& assign) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    s += (points.row(i) - centers.row(assign[i])).squaredNorm();
  }
  return s;
}

double loss_kmedian(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers,
                    const std::vector<int>& assign) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    s += (points.row(i) - centers.row(assign[i])).norm();
  }
  return s / static_cast<double>(points.rows());
}

Eigen::RowVectorXd coordinate_median(const Eigen::MatrixXd& points,
                                     const std::vector<Eigen::Index>& members) {
  Eigen::RowVectorXd med(points.cols());
  std::vector<double> vals(members.size());
  for (Eigen::Index c = 0; c < points.cols(); ++c) {
    for (std::size_t m = 0; m < members.size(); ++m) vals[m] = points(members[m], c);
    std::sort(vals.begin(), vals.end());
    const std::size_t h = vals.size() / 2;
    med[c] = (vals.size() % 2 == 1) ? vals[h] : 0.5 * (vals[h - 1] + vals[h]);
  }
  return med;
}

// Weiszfeld iteration for the geometric median of the member rows.
Eigen::RowVectorXd geometric_median(const Eigen::MatrixXd& points,
                                    const std::vector<Eigen::Index>& members) {
  Eigen::RowVectorXd y = coordinate_median(points, members);
  for (int it = 0; it < 100; ++it) {
    Eigen::RowVectorXd num = Eigen::RowVectorXd::Zero(points.cols());
    double den = 0.0;
    for (Eigen::Index m : members) {
      const double d = (points.row(m) - y).norm();
      if (d < 1e-12) continue;  // coincident point: skip its term
      num += points.row(m) / d;
      den += 1.0 / d;
    }
    if (den == 0.0) break;  // every member coincides with y
    const Eigen::RowVectorXd next = num / den;
    const double move = (next - y).norm();
    y = next;
    if (move < 1e-10) break;
  }
  return y;
}

template <typename LossFn, typename UpdateFn>
ClusterCenters cluster_once(const Eigen::MatrixXd& points, int k, const ClusterOptions& opts,
                            std::uint64_t restart_stream, LossFn loss, UpdateFn update,
                            ClusterMethod method) {
  PhiloxRng rng(opts.seed, restart_stream);
  Eigen::MatrixXd centers = plus_plus_seed(points, k, rng);
  std::vector<int> assign = assign_to_centers(points, centers);
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.max_iter; ++it) {
    // gather members, re-seeding any cluster that lost all its points
    std::vector<std::vector<Eigen::Index>> members(k);
    for (Eigen::Index i = 0; i < points.rows(); ++i) members[assign[i]].push_back(i);
    bool reseeded = false;
    for (int c = 0; c < k; ++c) {
      if (members[c].empty()) {
        centers.row(c) = points.row(farthest_point(points, centers, assign));
        reseeded = true;
      }
    }
    if (reseeded) {
      assign = assign_to_centers(points, centers);
      prev = std::numeric_limits<double>::infinity();
      continue;
    }
    for (int c = 0; c < k; ++c) centers.row(c) = update(points, members[c]);
    assign = assign_to_centers(points, centers);
    const double cur = loss(points, centers, assign);
    if (std::abs(prev - cur) <= opts.tol) {
      prev = cur;
      break;
    }
    prev = cur;
  }
  return {std::move(centers), loss(points, centers, assign), method};
}

template <typename LossFn, typename UpdateFn>
ClusterCenters best_of_restarts(const Eigen::MatrixXd& points, int k, const ClusterOptions& opts,
                                LossFn loss, UpdateFn update, ClusterMethod method) {
  if (points.rows() < k || k < 1) throw std::invalid_argument("need at least K points");
  require_distinct_rows(points, k);
  ClusterCenters best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, opts.restarts); ++r) {
    ClusterCenters c = cluster_once(points, k, opts, static_cast<std::uint64_t>(r), loss, update, method);
    if (c.inertia < best.inertia) best = std::move(c);  // strict: ties keep earliest
  }
  return best;
}

}  // namespace

ClusterCenters kmeans_pp(const Eigen::MatrixXd& points, int k, const ClusterOptions& opts) {
  auto update = [](const Eigen::MatrixXd& pts, const std::vector<Eigen::Index>& members) {
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(pts.cols());
    for (Eigen::Index m : members) mean += pts.row(m);
    return Eigen::RowVectorXd(mean / static_cast<double>(members.size()));
  };
  return best_of_restarts(points, k, opts, loss_kmeans, update, ClusterMethod::kmeans);
}

ClusterCenters kmedian(const Eigen::MatrixXd& points, int k, const ClusterOptions& opts) {
  auto update = [](const Eigen::MatrixXd& pts, const std::vector<Eigen::Index>& members) {
    return geometric_median(pts, members);
  };
  return best_of_restarts(points, k, opts, loss_kmedian, update, ClusterMethod::kmedian);
}

}  // namespace mixedisc
