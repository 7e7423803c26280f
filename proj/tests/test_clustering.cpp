#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "mixedisc/clustering.hpp"
#include "mixedisc/rng.hpp"

using namespace mixedisc;

namespace {

// m copies of each of k distinct points
Eigen::MatrixXd repeated_points(const Eigen::MatrixXd& distinct, int copies) {
  Eigen::MatrixXd pts(distinct.rows() * copies, distinct.cols());
  for (Eigen::Index i = 0; i < distinct.rows(); ++i)
    for (int c = 0; c < copies; ++c) pts.row(i * copies + c) = distinct.row(i);
  return pts;
}

Eigen::MatrixXd gaussian_blobs(const Eigen::MatrixXd& means, int per_blob, double sigma,
                               std::uint64_t seed) {
  PhiloxRng rng(seed);
  Eigen::MatrixXd pts(means.rows() * per_blob, means.cols());
  Eigen::Index row = 0;
  for (Eigen::Index b = 0; b < means.rows(); ++b) {
    for (int i = 0; i < per_blob; ++i) {
      for (Eigen::Index c = 0; c < means.cols(); ++c) {
        // Box-Muller
        const double u1 = 1.0 - rng.uniform01();
        const double u2 = rng.uniform01();
        const double g = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        pts(row, c) = means(b, c) + sigma * g;
      }
      ++row;
    }
  }
  return pts;
}

// rows of `a` and `b` matched greedily by nearest distance
double max_center_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < b.rows(); ++j) best = std::min(best, (a.row(i) - b.row(j)).norm());
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_CASE("kmeans recovers repeated distinct points exactly") {
  Eigen::MatrixXd distinct(3, 2);
  distinct << 0, 0, 5, 5, -4, 2;
  const auto pts = repeated_points(distinct, 7);
  const ClusterCenters c = kmeans_pp(pts, 3);
  CHECK(c.inertia == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(max_center_distance(distinct, c.centers) < 1e-12);
}

TEST_CASE("kmeans with K=1 returns the mean") {
  Eigen::MatrixXd pts(4, 1);
  pts << 1, 2, 3, 10;
  const ClusterCenters c = kmeans_pp(pts, 1);
  CHECK(c.centers(0, 0) == doctest::Approx(4.0));
}

TEST_CASE("kmeans finds well-separated blob means") {
  Eigen::MatrixXd means(3, 2);
  means << 0, 0, 10, 0, 0, 10;
  const auto pts = gaussian_blobs(means, 200, 0.5, 2024);
  const ClusterCenters c = kmeans_pp(pts, 3);
  CHECK(max_center_distance(means, c.centers) < 0.1);
}

TEST_CASE("kmedian recovers repeated distinct points exactly") {
  Eigen::MatrixXd distinct(2, 3);
  distinct << 1, 0, 0, 0, 1, 0;
  const auto pts = repeated_points(distinct, 5);
  const ClusterCenters c = kmedian(pts, 2);
  CHECK(c.inertia == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(max_center_distance(distinct, c.centers) < 1e-9);
}

TEST_CASE("geometric median resists the outlier that drags the mean") {
  Eigen::MatrixXd pts(3, 1);
  pts << -1, 0, 10;
  const ClusterCenters med = kmedian(pts, 1);
  const ClusterCenters mean = kmeans_pp(pts, 1);
  CHECK(mean.centers(0, 0) == doctest::Approx(3.0));
  CHECK(std::abs(med.centers(0, 0)) < 0.01);  // 1-D geometric median is the middle point
}

TEST_CASE("kmedian finds blob medians") {
  Eigen::MatrixXd means(3, 2);
  means << 0, 0, 10, 0, 0, 10;
  const auto pts = gaussian_blobs(means, 200, 0.5, 99);
  const ClusterCenters c = kmedian(pts, 3);
  CHECK(max_center_distance(means, c.centers) < 0.1);
}

TEST_CASE("same seed gives identical centers") {
  const auto pts = gaussian_blobs(Eigen::MatrixXd::Random(4, 3), 50, 1.0, 5);
  ClusterOptions opts;
  opts.seed = 31337;
  const ClusterCenters a = kmeans_pp(pts, 4, opts);
  const ClusterCenters b = kmeans_pp(pts, 4, opts);
  CHECK(a.centers == b.centers);
  CHECK(a.inertia == b.inertia);
}

TEST_CASE("centers are distinct and their Gram matrix is invertible") {
  Eigen::MatrixXd means(3, 4);
  means << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0;
  const auto pts = gaussian_blobs(means, 100, 0.05, 12);
  for (const ClusterCenters& c : {kmeans_pp(pts, 3), kmedian(pts, 3)}) {
    for (Eigen::Index i = 0; i < 3; ++i)
      for (Eigen::Index j = i + 1; j < 3; ++j)
        CHECK((c.centers.row(i) - c.centers.row(j)).norm() > 1e-8);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.centers * c.centers.transpose());
    CHECK(es.eigenvalues()[0] > 1e-10);
  }
}

TEST_CASE("fewer distinct points than K is an error") {
  Eigen::MatrixXd pts(6, 2);
  pts << 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2;
  CHECK_THROWS_AS(kmeans_pp(pts, 3), std::invalid_argument);
  CHECK_THROWS_AS(kmedian(pts, 3), std::invalid_argument);
  CHECK_NOTHROW(kmeans_pp(pts, 2));
}

TEST_CASE("empty-cluster reseeding still yields K centers") {
  // two tight far-apart groups but K=4: some restart inevitably lands
  // multiple centers in one group and must re-seed
  Eigen::MatrixXd means(2, 2);
  means << 0, 0, 100, 100;
  auto pts = gaussian_blobs(means, 30, 0.1, 8);
  ClusterOptions opts;
  opts.restarts = 3;
  const ClusterCenters c = kmeans_pp(pts, 4, opts);
  CHECK(c.centers.rows() == 4);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = i + 1; j < 4; ++j)
      CHECK((c.centers.row(i) - c.centers.row(j)).norm() > 1e-8);
}
