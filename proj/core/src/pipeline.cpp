#include "mixedisc/pipeline.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace mixedisc {

const char* to_string(NormMode m) { return m == NormMode::l1 ? "l1" : "l2"; }

NormMode parse_norm_mode(const std::string& s) {
  if (s == "l1") return NormMode::l1;
  if (s == "l2") return NormMode::l2;
  throw std::invalid_argument("unknown norm mode '" + s + "' (expected l1 or l2)");
}

namespace {

SpectralEmbedding finish_embedding(EigenPairs eigs, double tau, double zero_row_tol) {
  SpectralEmbedding emb;
  emb.tau = tau;
  emb.eigenvalues = eigs.values;
  emb.x_hat = eigs.vectors * eigs.values.asDiagonal();
  emb.x_star = emb.x_hat;
  for (Eigen::Index i = 0; i < emb.x_star.rows(); ++i) {
    const double nrm = emb.x_star.row(i).norm();
    if (nrm <= zero_row_tol) {
      emb.zero_rows.push_back(i);
      emb.x_star.row(i).setZero();
      emb.x_star(i, 0) = 1.0;
    } else {
      emb.x_star.row(i) /= nrm;
    }
  }
  return emb;
}

void check_embed_pre(Eigen::Index n, int k, bool has_mass) {
  if (k < 1) throw std::invalid_argument("K must be at least 1");
  if (k + 1 > n) throw std::invalid_argument("need K+1 <= n");
  if (!has_mass) throw std::invalid_argument("graph has no edges");
}

}  // namespace

SpectralEmbedding isc_embed(const AdjacencyMatrix& a, int k, double c, DMode d_mode,
                            const TopEigsOptions& eig, double zero_row_tol) {
  check_embed_pre(a.node_count(), k, a.edge_count() > 0);
  const double tau = default_tau(a, c, d_mode);
  const RegularizedLaplacian l = regularized_laplacian(a, tau);
  return finish_embedding(top_eigs(l.values, k + 1, eig), tau, zero_row_tol);
}

SpectralEmbedding isc_embed_dense(const Eigen::MatrixXd& m, int k, double c, DMode d_mode,
                                  const TopEigsOptions& eig, double zero_row_tol) {
  const DegreeVector d = degrees(m);
  check_embed_pre(m.rows(), k, m.rows() > 0 && d.max > 0.0);
  const double tau = default_tau(d, c, d_mode);
  const Eigen::MatrixXd l = regularized_laplacian_dense(m, tau);
  return finish_embedding(top_eigs(l, k + 1, eig), tau, zero_row_tol);
}

MembershipEstimate mr_reconstruct(const Eigen::MatrixXd& x_star, const ClusterCenters& centers,
                                  NormMode norm) {
  const Eigen::MatrixXd& v = centers.centers;
  if (v.cols() != x_star.cols()) {
    throw std::invalid_argument("embedding and centers have different widths");
  }
  const Eigen::Index k = v.rows();
  const Eigen::MatrixXd gram = v * v.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const double lo = es.eigenvalues()[0];
  const double hi = es.eigenvalues()[k - 1];
  if (lo <= 0.0 || hi / lo > 1e12) {
    throw std::runtime_error("cluster centers are singular (VV' condition number over 1e12)");
  }

  // Y = max(0, X* V' (VV')^{-1}), computed through a Cholesky solve
  Eigen::MatrixXd y = gram.ldlt().solve(v * x_star.transpose()).transpose();
  y = y.cwiseMax(0.0);

  MembershipEstimate out;
  out.y_hat = y;
  Eigen::MatrixXd pi(y.rows(), k);
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    const double row_sum = y.row(i).sum();
    if (row_sum <= 0.0) {
      // nothing survived clipping: hard-assign to the nearest center
      out.fallback_nodes.push_back(i);
      Eigen::Index nearest = 0;
      double best = (x_star.row(i) - v.row(0)).squaredNorm();
      for (Eigen::Index c = 1; c < k; ++c) {
        const double d = (x_star.row(i) - v.row(c)).squaredNorm();
        if (d < best) {
          best = d;
          nearest = c;
        }
      }
      pi.row(i).setZero();
      pi(i, nearest) = 1.0;
      continue;
    }
    if (norm == NormMode::l1) {
      pi.row(i) = y.row(i) / row_sum;
    } else {
      const Eigen::RowVectorXd unit = y.row(i) / y.row(i).norm();
      pi.row(i) = unit / unit.sum();
    }
  }
  // flush rounding so rows sum to 1 exactly enough for the PMF invariant
  for (Eigen::Index i = 0; i < pi.rows(); ++i) pi.row(i) /= pi.row(i).sum();
  out.pi_hat = MembershipMatrix(std::move(pi));
  return out;
}

namespace {

MixedIscResult run_pipeline(SpectralEmbedding emb, int k, const IscSettings& s) {
  const ClusterOptions copts{s.restarts, s.max_iter, s.cluster_tol, s.seed};
  MixedIscResult result;
  result.centers = (s.method == ClusterMethod::kmeans) ? kmeans_pp(emb.x_star, k, copts)
                                                       : kmedian(emb.x_star, k, copts);
  result.estimate = mr_reconstruct(emb.x_star, result.centers, s.norm);
  const double lambda_k = emb.eigenvalues[k - 1];
  const double lambda_k1 = emb.eigenvalues[k];
  result.eigengap_warning = !(lambda_k > 0.0) || !(lambda_k > std::abs(lambda_k1));
  result.embedding = std::move(emb);
  return result;
}

}  // namespace

MixedIscResult mixed_isc(const AdjacencyMatrix& a, int k, const IscSettings& settings) {
  return run_pipeline(isc_embed(a, k, settings.c, settings.d_mode, settings.eig, settings.zero_row_tol),
                      k, settings);
}

MixedIscResult mixed_isc_dense(const Eigen::MatrixXd& m, int k, const IscSettings& settings) {
  return run_pipeline(
      isc_embed_dense(m, k, settings.c, settings.d_mode, settings.eig, settings.zero_row_tol), k,
      settings);
}

}  // namespace mixedisc
