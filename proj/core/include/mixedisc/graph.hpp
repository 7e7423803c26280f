#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mixedisc {

using EdgeList = std::vector<std::pair<std::int64_t, std::int64_t>>;

/// Undirected simple graph stored as compressed sparse rows.
///
/// Invariants: symmetric, binary, zero diagonal. Duplicate input pairs and
/// both orientations of the same pair collapse to a single edge.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;

  /// Builds from an edge list. Throws std::invalid_argument on
  /// out-of-range endpoints or self-loops, naming the offending pair.
  static AdjacencyMatrix build(std::int64_t n, const EdgeList& edges);

  std::int64_t node_count() const { return n_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(col_idx_.size()) / 2; }

  std::int64_t degree(std::int64_t i) const { return row_ptr_[i + 1] - row_ptr_[i]; }

  /// Sorted neighbor ids of node i.
  std::span<const std::int32_t> neighbors(std::int64_t i) const {
    return {col_idx_.data() + row_ptr_[i],
            static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
  }

  bool has_edge(std::int64_t i, std::int64_t j) const;

  Eigen::SparseMatrix<double> to_sparse() const;
  Eigen::MatrixXd to_dense() const;

  /// True when the graph is connected (empty and single-node graphs count
  /// as connected).
  bool connected() const;

 private:
  std::int64_t n_ = 0;
  std::vector<std::int64_t> row_ptr_ = {0};
  std::vector<std::int32_t> col_idx_;
};

/// Node degrees plus their max/min/mean.
struct DegreeVector {
  Eigen::VectorXd values;
  double max = 0.0;
  double min = 0.0;
  double mean = 0.0;
};

DegreeVector degrees(const AdjacencyMatrix& a);

/// Row sums of a symmetric nonnegative matrix, same summary fields. Used
/// when a pipeline runs on a dense expected-adjacency matrix instead of an
/// observed network.
DegreeVector degrees(const Eigen::MatrixXd& m);

/// Parses the one-edge-per-line text format: two whitespace-separated
/// nonnegative integer ids, `#` lines ignored, duplicates and both
/// orientations tolerated. Node ids need not be contiguous.
///
/// Returns the raw pairs in original id space. Throws std::runtime_error
/// with the line number on malformed input.
EdgeList read_edge_list(const std::string& path);

/// Remaps arbitrary nonnegative ids to the contiguous range [0, n).
/// `original_ids[k]` is the input id now called k; ids are assigned in
/// ascending order of the original id.
struct RemappedEdges {
  EdgeList edges;
  std::vector<std::int64_t> original_ids;
};
RemappedEdges remap_node_ids(const EdgeList& raw);

void write_edge_list(const std::string& path, const AdjacencyMatrix& a);

}  // namespace mixedisc
