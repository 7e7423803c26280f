#include "mixedisc/eigs.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mixedisc/rng.hpp"

namespace mixedisc {
namespace {

// Indices of the top-m entries by |value|; exact magnitude ties put the
// positive eigenvalue first, then lower source index.
std::vector<int> magnitude_order(const Eigen::VectorXd& values, int m) {
  std::vector<int> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    const double ma = std::abs(values[a]), mb = std::abs(values[b]);
    if (ma != mb) return ma > mb;
    if (values[a] != values[b]) return values[a] > values[b];
    return a < b;
  });
  idx.resize(m);
  return idx;
}

// Entry of largest absolute value gets a positive sign; ties break to the
// lowest row index.
void canonicalize_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index best = 0;
    double best_abs = std::abs(vectors(0, j));
    for (Eigen::Index i = 1; i < vectors.rows(); ++i) {
      const double a = std::abs(vectors(i, j));
      if (a > best_abs) {
        best_abs = a;
        best = i;
      }
    }
    if (vectors(best, j) < 0.0) vectors.col(j) = -vectors.col(j);
  }
}

template <typename MatVec>
Eigen::VectorXd compute_residuals(const MatVec& mv, const Eigen::VectorXd& values,
                                  const Eigen::MatrixXd& vectors) {
  Eigen::VectorXd r(values.size());
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    r[k] = (mv(vectors.col(k)) - values[k] * vectors.col(k)).norm();
  }
  return r;
}

void check_square_and_count(Eigen::Index rows, Eigen::Index cols, int m) {
  if (rows != cols) throw std::invalid_argument("matrix must be square");
  if (m < 1 || m > rows) throw std::invalid_argument("eigenpair count out of range");
}

EigenPairs dense_top_eigs(const Eigen::MatrixXd& m, int count) {
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale > 0.0 && (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw std::invalid_argument("matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("dense symmetric eigendecomposition failed");
  }
  const auto order = magnitude_order(es.eigenvalues(), count);
  EigenPairs out;
  out.values.resize(count);
  out.vectors.resize(m.rows(), count);
  for (int k = 0; k < count; ++k) {
    out.values[k] = es.eigenvalues()[order[k]];
    out.vectors.col(k) = es.eigenvectors().col(order[k]);
  }
  canonicalize_signs(out.vectors);
  out.residuals = compute_residuals(
      [&m](const Eigen::VectorXd& v) -> Eigen::VectorXd { return m.selfadjointView<Eigen::Lower>() * v; },
      out.values, out.vectors);
  return out;
}

// Lanczos with full reorthogonalization. The Krylov basis is kept dense;
// magnitude-leading eigenvalues sit at the ends of the spectrum, which is
// exactly where Lanczos converges first.
EigenPairs lanczos_top_eigs(const Eigen::SparseMatrix<double>& m, int count,
                            const TopEigsOptions& opts) {
  const Eigen::Index n = m.rows();
  const int max_steps = static_cast<int>(n);
  PhiloxRng rng(opts.lanczos_seed);

  int capacity = static_cast<int>(std::min<Eigen::Index>(n, 4 * count + 64));
  Eigen::MatrixXd basis(n, capacity);
  std::vector<double> alpha, beta;  // beta[j] links v_j and v_{j+1}

  auto random_unit_orthogonal = [&](int cols) {
    Eigen::VectorXd v(n);
    while (true) {
      for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
      if (cols > 0) v -= basis.leftCols(cols) * (basis.leftCols(cols).transpose() * v);
      const double nrm = v.norm();
      if (nrm > 1e-8) return Eigen::VectorXd(v / nrm);
    }
  };

  basis.col(0) = random_unit_orthogonal(0);
  int j = 0;
  double matrix_scale = 0.0;
  Eigen::VectorXd ritz_values;
  Eigen::MatrixXd ritz_small;
  std::vector<int> wanted;

  auto ritz_converged = [&](int steps) {
    // Tridiagonal T from alpha/beta, dense solve at Krylov size.
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(steps, steps);
    for (int i = 0; i < steps; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < steps) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    ritz_values = es.eigenvalues();
    ritz_small = es.eigenvectors();
    matrix_scale = std::max(std::abs(ritz_values[0]), std::abs(ritz_values[steps - 1]));
    if (steps < count) return false;
    wanted = magnitude_order(ritz_values, count);
    const double last_beta = beta.empty() ? 0.0 : beta.back();
    for (int k : wanted) {
      const double est = std::abs(last_beta * ritz_small(steps - 1, k));
      if (est > opts.tol * std::max(matrix_scale, 1e-300)) return false;
    }
    return true;
  };

  bool converged = false;
  while (j < max_steps) {
    Eigen::VectorXd w = m * basis.col(j);
    const double a = basis.col(j).dot(w);
    alpha.push_back(a);
    w -= a * basis.col(j);
    if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
    // full reorthogonalization, repeated once to flush rounding
    w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
    w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
    double b = w.norm();
    const int steps = j + 1;
    if (steps == max_steps) {
      ritz_converged(steps);  // populate Ritz pairs; Krylov space is exact here
      converged = true;
      break;
    }
    if (steps == capacity) {
      capacity = static_cast<int>(std::min<Eigen::Index>(n, 2 * capacity));
      basis.conservativeResize(Eigen::NoChange, capacity);
    }
    if (b < 1e-13 * std::max(matrix_scale, 1.0)) {
      // invariant subspace: check what we have, otherwise restart direction
      if (ritz_converged(steps)) {
        converged = true;
        break;
      }
      basis.col(j + 1) = random_unit_orthogonal(steps);
      beta.push_back(0.0);
    } else {
      basis.col(j + 1) = w / b;
      beta.push_back(b);
      if (steps >= count + 2 && steps % opts.check_interval == 0 && ritz_converged(steps)) {
        converged = true;
        break;
      }
    }
    ++j;
  }
  const int steps = static_cast<int>(alpha.size());
  if (!converged && !ritz_converged(steps)) {
    double worst = 0.0;
    const double last_beta = beta.size() >= static_cast<std::size_t>(steps) ? beta[steps - 1] : 0.0;
    for (int k : wanted) worst = std::max(worst, std::abs(last_beta * ritz_small(steps - 1, k)));
    throw std::runtime_error("Lanczos did not converge within " + std::to_string(steps) +
                             " steps; achieved residual " + std::to_string(worst));
  }

  wanted = magnitude_order(ritz_values, count);
  EigenPairs out;
  out.values.resize(count);
  out.vectors.resize(n, count);
  for (int k = 0; k < count; ++k) {
    out.values[k] = ritz_values[wanted[k]];
    Eigen::VectorXd y = basis.leftCols(steps) * ritz_small.col(wanted[k]);
    out.vectors.col(k) = y / y.norm();
  }
  canonicalize_signs(out.vectors);
  out.residuals = compute_residuals(
      [&m](const Eigen::VectorXd& v) -> Eigen::VectorXd { return m * v; }, out.values,
      out.vectors);
  const double res_bound = 100.0 * opts.tol * std::max(matrix_scale, 1e-300);
  for (Eigen::Index k = 0; k < out.residuals.size(); ++k) {
    if (out.residuals[k] > res_bound && out.residuals[k] > 1e-12) {
      throw std::runtime_error("Lanczos residual check failed; achieved residual " +
                               std::to_string(out.residuals[k]));
    }
  }
  return out;
}

}  // namespace

EigenPairs top_eigs(const Eigen::MatrixXd& m, int count, const TopEigsOptions& opts) {
  check_square_and_count(m.rows(), m.cols(), count);
  if (m.rows() <= opts.dense_threshold) return dense_top_eigs(m, count);
  return lanczos_top_eigs(m.sparseView(), count, opts);
}

EigenPairs top_eigs(const Eigen::SparseMatrix<double>& m, int count, const TopEigsOptions& opts) {
  check_square_and_count(m.rows(), m.cols(), count);
  if (m.rows() <= opts.dense_threshold) return dense_top_eigs(Eigen::MatrixXd(m), count);
  return lanczos_top_eigs(m, count, opts);
}

}  // namespace mixedisc
