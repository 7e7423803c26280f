#include "mixedisc/membership.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mixedisc {

MembershipMatrix::MembershipMatrix(Eigen::MatrixXd rows) : rows_(std::move(rows)) {
  for (Eigen::Index i = 0; i < rows_.rows(); ++i) {
    if ((rows_.row(i).array() < 0.0).any()) {
      throw std::invalid_argument("membership row " + std::to_string(i) + " has a negative entry");
    }
    const double s = rows_.row(i).sum();
    if (std::abs(s - 1.0) > 1e-12) {
      throw std::invalid_argument("membership row " + std::to_string(i) + " sums to " +
                                  std::to_string(s) + ", expected 1");
    }
  }
}

MembershipMatrix MembershipMatrix::from_labels(const std::vector<int>& labels, int k) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()), k);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= k) {
      throw std::invalid_argument("label " + std::to_string(labels[i]) + " out of range at node " +
                                  std::to_string(i));
    }
    m(static_cast<Eigen::Index>(i), labels[i]) = 1.0;
  }
  return MembershipMatrix(std::move(m));
}

std::vector<int> MembershipMatrix::hard_labels() const {
  std::vector<int> labels(rows_.rows());
  for (Eigen::Index i = 0; i < rows_.rows(); ++i) {
    int best = 0;
    for (Eigen::Index k = 1; k < rows_.cols(); ++k) {
      if (rows_(i, k) > rows_(i, best)) best = static_cast<int>(k);
    }
    labels[i] = best;
  }
  return labels;
}

void write_membership_csv(const std::string& path, const MembershipMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write membership CSV '" + path + "'");
  out << "node";
  for (Eigen::Index k = 0; k < m.community_count(); ++k) out << ",pi_" << (k + 1);
  out << '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < m.node_count(); ++i) {
    out << i;
    for (Eigen::Index k = 0; k < m.community_count(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.12g", m.rows()(i, k));
      out << ',' << buf;
    }
    out << '\n';
  }
}

MembershipMatrix read_membership_csv(const std::string& path, bool normalize_rows) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open membership CSV '" + path + "'");
  std::string line;
  std::vector<std::vector<double>> rows;
  std::vector<Eigen::Index> zero_rows;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::istringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (first) {
      first = false;
      if (!cells.empty() && cells[0] == "node") continue;  // header
    }
    if (cells.size() < 2) throw std::runtime_error(path + ": membership row needs node id and K values");
    std::vector<double> vals;
    for (std::size_t c = 1; c < cells.size(); ++c) vals.push_back(std::stod(cells[c]));
    rows.push_back(std::move(vals));
  }
  if (rows.empty()) throw std::runtime_error(path + ": no membership rows");
  const Eigen::Index k = static_cast<Eigen::Index>(rows[0].size());
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), k);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != k) {
      throw std::runtime_error(path + ": ragged membership rows");
    }
    for (Eigen::Index c = 0; c < k; ++c) m(i, c) = rows[i][c];
    const double s = m.row(i).sum();
    if (normalize_rows) {
      if (s <= 0.0) {
        zero_rows.push_back(i);
      } else {
        m.row(i) /= s;
      }
    } else {
      // tolerate the rounding of a 12-digit CSV round trip, nothing more
      if (std::abs(s - 1.0) > 1e-6) {
        throw std::runtime_error(path + ": membership row " + std::to_string(i) + " sums to " +
                                 std::to_string(s) + ", expected 1");
      }
      m.row(i) /= s;
    }
  }
  if (!zero_rows.empty()) {
    std::string msg = path + ": rows with zero circle membership:";
    for (Eigen::Index i : zero_rows) msg += " " + std::to_string(i);
    throw std::runtime_error(msg);
  }
  return MembershipMatrix(std::move(m));
}

std::vector<int> read_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open label file '" + path + "'");
  std::vector<int> labels;
  int v;
  while (in >> v) labels.push_back(v);
  if (labels.empty()) throw std::runtime_error(path + ": no labels read");
  return labels;
}

}  // namespace mixedisc
