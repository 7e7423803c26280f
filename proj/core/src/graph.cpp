#include "mixedisc/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace mixedisc {

AdjacencyMatrix AdjacencyMatrix::build(std::int64_t n, const EdgeList& edges) {
  if (n < 0) throw std::invalid_argument("node count must be nonnegative");
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  pairs.reserve(edges.size());
  for (const auto& [i, j] : edges) {
    if (i < 0 || i >= n || j < 0 || j >= n) {
      throw std::invalid_argument("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                                  ") out of range for n=" + std::to_string(n));
    }
    if (i == j) {
      throw std::invalid_argument("self-loop (" + std::to_string(i) + ", " + std::to_string(j) +
                                  ") is not allowed");
    }
    const auto a = static_cast<std::int32_t>(std::min(i, j));
    const auto b = static_cast<std::int32_t>(std::max(i, j));
    pairs.emplace_back(a, b);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  AdjacencyMatrix m;
  m.n_ = n;
  m.row_ptr_.assign(n + 1, 0);
  for (const auto& [a, b] : pairs) {
    ++m.row_ptr_[a + 1];
    ++m.row_ptr_[b + 1];
  }
  for (std::int64_t i = 0; i < n; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
  m.col_idx_.resize(pairs.size() * 2);
  std::vector<std::int64_t> fill(m.row_ptr_.begin(), m.row_ptr_.end() - 1);
  for (const auto& [a, b] : pairs) {
    m.col_idx_[fill[a]++] = b;
    m.col_idx_[fill[b]++] = a;
  }
  // neighbor lists come out sorted because the pairs were sorted
  return m;
}

bool AdjacencyMatrix::has_edge(std::int64_t i, std::int64_t j) const {
  auto ns = neighbors(i);
  return std::binary_search(ns.begin(), ns.end(), static_cast<std::int32_t>(j));
}

Eigen::SparseMatrix<double> AdjacencyMatrix::to_sparse() const {
  Eigen::SparseMatrix<double> s(n_, n_);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(col_idx_.size());
  for (std::int64_t i = 0; i < n_; ++i)
    for (std::int32_t j : neighbors(i)) trips.emplace_back(i, j, 1.0);
  s.setFromTriplets(trips.begin(), trips.end());
  return s;
}

Eigen::MatrixXd AdjacencyMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n_, n_);
  for (std::int64_t i = 0; i < n_; ++i)
    for (std::int32_t j : neighbors(i)) d(i, j) = 1.0;
  return d;
}

bool AdjacencyMatrix::connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(n_, 0);
  std::queue<std::int64_t> q;
  q.push(0);
  seen[0] = 1;
  std::int64_t visited = 1;
  while (!q.empty()) {
    const std::int64_t u = q.front();
    q.pop();
    for (std::int32_t v : neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++visited;
        q.push(v);
      }
    }
  }
  return visited == n_;
}

DegreeVector degrees(const AdjacencyMatrix& a) {
  const std::int64_t n = a.node_count();
  DegreeVector d;
  d.values.resize(n);
  for (std::int64_t i = 0; i < n; ++i) d.values[i] = static_cast<double>(a.degree(i));
  if (n > 0) {
    d.max = d.values.maxCoeff();
    d.min = d.values.minCoeff();
    d.mean = d.values.mean();
  }
  return d;
}

DegreeVector degrees(const Eigen::MatrixXd& m) {
  DegreeVector d;
  d.values = m.rowwise().sum();
  if (m.rows() > 0) {
    d.max = d.values.maxCoeff();
    d.min = d.values.minCoeff();
    d.mean = d.values.mean();
  }
  return d;
}

EdgeList read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list '" + path + "'");
  EdgeList edges;
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    std::int64_t i, j;
    if (!(ss >> i >> j) || i < 0 || j < 0) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected two nonnegative integers, got '" + line + "'");
    }
    std::string extra;
    if (ss >> extra) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": trailing tokens after edge '" + line + "'");
    }
    edges.emplace_back(i, j);
  }
  return edges;
}

RemappedEdges remap_node_ids(const EdgeList& raw) {
  std::vector<std::int64_t> ids;
  ids.reserve(raw.size() * 2);
  for (const auto& [i, j] : raw) {
    ids.push_back(i);
    ids.push_back(j);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  RemappedEdges out;
  out.original_ids = ids;
  out.edges.reserve(raw.size());
  auto index_of = [&ids](std::int64_t v) {
    return static_cast<std::int64_t>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
  };
  for (const auto& [i, j] : raw) out.edges.emplace_back(index_of(i), index_of(j));
  return out;
}

void write_edge_list(const std::string& path, const AdjacencyMatrix& a) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write edge list '" + path + "'");
  for (std::int64_t i = 0; i < a.node_count(); ++i)
    for (std::int32_t j : a.neighbors(i))
      if (i < j) out << i << ' ' << j << '\n';
}

}  // namespace mixedisc
