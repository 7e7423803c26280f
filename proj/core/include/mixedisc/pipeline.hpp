#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "mixedisc/clustering.hpp"
#include "mixedisc/eigs.hpp"
#include "mixedisc/graph.hpp"
#include "mixedisc/laplacian.hpp"
#include "mixedisc/membership.hpp"

namespace mixedisc {

/// How reconstructed coefficient rows are normalized into PMFs.
enum class NormMode { l1, l2 };

const char* to_string(NormMode m);
NormMode parse_norm_mode(const std::string& s);

/// Spectral embedding: the K+1 magnitude-leading eigenpairs of the
/// regularized Laplacian, eigenvectors scaled by their eigenvalues, plus
/// the row-normalized copy used for clustering.
struct SpectralEmbedding {
  Eigen::MatrixXd x_hat;         // n x (K+1), column j = lambda_j * eigvec_j
  Eigen::MatrixXd x_star;        // n x (K+1), unit-norm rows
  Eigen::VectorXd eigenvalues;   // K+1, magnitude order
  double tau = 0.0;
  std::vector<std::int64_t> zero_rows;  // nodes whose x_hat row vanished
};

struct MembershipEstimate {
  MembershipMatrix pi_hat;
  Eigen::MatrixXd y_hat;  // clipped projection coefficients, n x K
  std::vector<std::int64_t> fallback_nodes;  // rows where Y clipped to all-zero
};

struct IscSettings {
  double c = 0.1;
  DMode d_mode = DMode::midrange;
  ClusterMethod method = ClusterMethod::kmeans;
  NormMode norm = NormMode::l1;
  int restarts = 10;
  int max_iter = 100;
  double cluster_tol = 1e-6;
  std::uint64_t seed = 42;
  TopEigsOptions eig;
  double zero_row_tol = 1e-12;  // x_hat row norms below this are flagged
};

/// Everything mixed_isc produces: the estimate plus run diagnostics.
struct MixedIscResult {
  MembershipEstimate estimate;
  SpectralEmbedding embedding;
  ClusterCenters centers;
  /// Set when the magnitude-ordered spectrum violates the expected shape
  /// (K-th value not positive or not strictly above |(K+1)-th|) — the
  /// regime where estimates degrade.
  bool eigengap_warning = false;
};

/// Embedding steps: tau from the degree statistics, regularized Laplacian,
/// K+1 leading eigenpairs, eigenvalue weighting, row normalization. A row
/// of x_hat with vanishing norm (isolated node) is replaced by the first
/// standard basis vector and flagged.
SpectralEmbedding isc_embed(const AdjacencyMatrix& a, int k, double c, DMode d_mode,
                            const TopEigsOptions& eig = {}, double zero_row_tol = 1e-12);

/// Same pipeline on a symmetric nonnegative matrix (e.g. an expected
/// adjacency) with row-sum degrees.
SpectralEmbedding isc_embed_dense(const Eigen::MatrixXd& m, int k, double c, DMode d_mode,
                                  const TopEigsOptions& eig = {}, double zero_row_tol = 1e-12);

/// Membership reconstruction: project x_star rows onto the span of the
/// centers via V'(VV')^{-1}, clip negatives, normalize rows into PMFs.
/// A row whose clipped coefficients are all zero falls back to the
/// indicator of its nearest center and is flagged.
///
/// Throws std::runtime_error when VV' has condition number above 1e12.
MembershipEstimate mr_reconstruct(const Eigen::MatrixXd& x_star, const ClusterCenters& centers,
                                  NormMode norm = NormMode::l1);

MixedIscResult mixed_isc(const AdjacencyMatrix& a, int k, const IscSettings& settings = {});
MixedIscResult mixed_isc_dense(const Eigen::MatrixXd& m, int k, const IscSettings& settings = {});

}  // namespace mixedisc
