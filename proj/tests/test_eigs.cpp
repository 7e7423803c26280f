#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "mixedisc/eigs.hpp"
#include "support/jacobi_oracle.hpp"
#include "support/test_util.hpp"

using namespace mixedisc;
using testsupport::jacobi_eig;
using testsupport::max_subspace_angle;
using testsupport::random_symmetric;

TEST_CASE("identity matrix") {
  const EigenPairs p = top_eigs(Eigen::MatrixXd::Identity(4, 4), 2);
  CHECK(p.values[0] == doctest::Approx(1.0));
  CHECK(p.values[1] == doctest::Approx(1.0));
  CHECK(p.residuals.maxCoeff() < 1e-12);
  CHECK(p.vectors.col(0).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("magnitude ordering picks 3 then -2 from diag(3, 1, -2)") {
  Eigen::MatrixXd m = Eigen::Vector3d(3, 1, -2).asDiagonal();
  const EigenPairs p = top_eigs(m, 2);
  CHECK(p.values[0] == doctest::Approx(3.0));
  CHECK(p.values[1] == doctest::Approx(-2.0));
}

TEST_CASE("exact magnitude tie puts the positive eigenvalue first") {
  Eigen::MatrixXd m = Eigen::Vector3d(-2, 0.5, 2).asDiagonal();
  const EigenPairs p = top_eigs(m, 2);
  CHECK(p.values[0] == doctest::Approx(2.0));
  CHECK(p.values[1] == doctest::Approx(-2.0));
}

TEST_CASE("sign convention: the largest-magnitude entry is positive") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Eigen::MatrixXd m = random_symmetric(17, seed);
    const EigenPairs p = top_eigs(m, 6);
    for (int j = 0; j < 6; ++j) {
      Eigen::Index arg = 0;
      p.vectors.col(j).cwiseAbs().maxCoeff(&arg);
      CHECK(p.vectors(arg, j) > 0.0);
    }
  }
}

TEST_CASE("matches the Jacobi oracle on random matrices") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Eigen::Index n = 10 + 5 * static_cast<Eigen::Index>(seed);
    const Eigen::MatrixXd m = random_symmetric(n, seed * 31);
    const auto oracle = jacobi_eig(m);
    const int top = 4;
    const EigenPairs p = top_eigs(m, top);

    // oracle values reordered by magnitude
    std::vector<double> mags(oracle.values.data(), oracle.values.data() + n);
    std::sort(mags.begin(), mags.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
    for (int k = 0; k < top; ++k) CHECK(p.values[k] == doctest::Approx(mags[k]).epsilon(1e-10));

    // subspace spanned by the top-m oracle vectors
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return std::abs(oracle.values[a]) > std::abs(oracle.values[b]);
    });
    Eigen::MatrixXd oq(n, top);
    for (int k = 0; k < top; ++k) oq.col(k) = oracle.vectors.col(idx[k]);
    CHECK(max_subspace_angle(p.vectors, oq) < 1e-6);
  }
}

TEST_CASE("full spectrum at n=50 matches the oracle") {
  const Eigen::MatrixXd m = random_symmetric(50, 777);
  const auto oracle = jacobi_eig(m);
  const EigenPairs p = top_eigs(m, 50);
  Eigen::VectorXd sorted_impl = p.values;
  std::sort(sorted_impl.data(), sorted_impl.data() + 50);
  for (int k = 0; k < 50; ++k) CHECK(sorted_impl[k] == doctest::Approx(oracle.values[k]).epsilon(1e-10));
}

TEST_CASE("residual bound holds") {
  const Eigen::MatrixXd m = random_symmetric(30, 4242);
  const EigenPairs p = top_eigs(m, 5);
  const double scale = std::abs(p.values[0]);
  CHECK(p.residuals.maxCoeff() <= 1e-10 * std::max(scale, 1.0) * 10);
}

TEST_CASE("Lanczos path agrees with the dense path") {
  // force Lanczos by lowering the dense threshold
  const Eigen::MatrixXd m = random_symmetric(120, 2024);
  TopEigsOptions opts;
  opts.dense_threshold = 50;
  const EigenPairs lz = top_eigs(m, 5, opts);
  const EigenPairs dn = top_eigs(m, 5);
  for (int k = 0; k < 5; ++k) {
    CHECK(lz.values[k] == doctest::Approx(dn.values[k]).epsilon(1e-9));
  }
  CHECK(max_subspace_angle(lz.vectors, dn.vectors) < 1e-6);
  CHECK(lz.residuals.maxCoeff() < 1e-7);
}

TEST_CASE("Lanczos handles a sparse graph Laplacian-like matrix") {
  // sparse random symmetric with ~1% fill
  const Eigen::Index n = 400;
  PhiloxRng rng(99);
  std::vector<Eigen::Triplet<double>> trips;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (rng.uniform01() < 0.01) {
        const double v = rng.uniform(0.1, 1.0);
        trips.emplace_back(i, j, v);
        trips.emplace_back(j, i, v);
      }
    }
  }
  Eigen::SparseMatrix<double> s(n, n);
  s.setFromTriplets(trips.begin(), trips.end());
  TopEigsOptions opts;
  opts.dense_threshold = 100;
  const EigenPairs lz = top_eigs(s, 3, opts);
  const EigenPairs dn = top_eigs(Eigen::MatrixXd(s), 3);
  for (int k = 0; k < 3; ++k) CHECK(lz.values[k] == doctest::Approx(dn.values[k]).epsilon(1e-9));
}

TEST_CASE("zero matrix converges via breakdown handling") {
  TopEigsOptions opts;
  opts.dense_threshold = 2;
  const EigenPairs p = top_eigs(Eigen::MatrixXd::Zero(10, 10), 3, opts);
  CHECK(p.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("bad arguments") {
  CHECK_THROWS_AS(top_eigs(Eigen::MatrixXd::Identity(3, 3), 0), std::invalid_argument);
  CHECK_THROWS_AS(top_eigs(Eigen::MatrixXd::Identity(3, 3), 4), std::invalid_argument);
  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 0, 0;
  CHECK_THROWS_AS(top_eigs(asym, 1), std::invalid_argument);
}
