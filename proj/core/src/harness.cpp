#include "mixedisc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mixedisc/metrics.hpp"
#include "mixedisc/rng.hpp"

namespace mixedisc {
namespace {

// Fan-out over [0, count) with results written by task index, so the
// output is identical for any worker count.
void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& body) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, static_cast<int>(std::min<std::int64_t>(threads, count)));
  if (threads == 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      while (true) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= count) break;
        body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ResultRow score_one(const DcmmParams& params, std::uint64_t edge_seed, std::uint64_t cluster_seed,
                    const IscSettings& algo, double grid_value, int rep) {
  ResultRow row;
  row.grid_value = grid_value;
  row.repetition = rep;
  const auto start = std::chrono::steady_clock::now();
  try {
    const AdjacencyMatrix a = sample_adjacency(params, edge_seed);
    IscSettings settings = algo;
    settings.seed = cluster_seed;
    const MixedIscResult res = mixed_isc(a, params.k, settings);
    row.mixed_hamming = mixed_hamming(res.estimate.pi_hat, params.pi);
  } catch (const std::exception& e) {
    row.mixed_hamming = std::nan("");
    row.diagnostics = e.what();
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

void compute_aggregates(ResultTable& table) {
  table.aggregates.clear();
  std::vector<double> grid_values;
  for (const auto& r : table.rows) {
    if (grid_values.empty() || grid_values.back() != r.grid_value) {
      if (std::find(grid_values.begin(), grid_values.end(), r.grid_value) == grid_values.end()) {
        grid_values.push_back(r.grid_value);
      }
    }
  }
  for (double g : grid_values) {
    ResultAggregate agg;
    agg.grid_value = g;
    double sum = 0.0;
    std::int64_t count = 0;
    for (const auto& r : table.rows) {
      if (r.grid_value == g && !std::isnan(r.mixed_hamming)) {
        sum += r.mixed_hamming;
        ++count;
      }
    }
    if (count > 0) {
      agg.mean = sum / static_cast<double>(count);
      double ss = 0.0;
      for (const auto& r : table.rows) {
        if (r.grid_value == g && !std::isnan(r.mixed_hamming)) {
          ss += (r.mixed_hamming - agg.mean) * (r.mixed_hamming - agg.mean);
        }
      }
      agg.sd = count > 1 ? std::sqrt(ss / static_cast<double>(count - 1)) : 0.0;
    } else {
      agg.mean = std::nan("");
      agg.sd = std::nan("");
    }
    table.aggregates.push_back(agg);
  }
}

std::string raw_csv(const ResultTable& table, bool include_timing) {
  std::string out = "grid_value,rep,mixed_hamming,seconds\n";
  for (const auto& r : table.rows) {
    out += format_double(r.grid_value);
    out += ',' + std::to_string(r.repetition);
    out += ',' + format_double(r.mixed_hamming);
    out += ',' + format_double(include_timing ? r.seconds : 0.0);
    out += '\n';
  }
  return out;
}

std::string aggregate_csv(const ResultTable& table) {
  std::string out = "grid_value,mean,sd\n";
  for (const auto& a : table.aggregates) {
    out += format_double(a.grid_value);
    out += ',' + format_double(a.mean);
    out += ',' + format_double(a.sd);
    out += '\n';
  }
  return out;
}

ResultTable run_experiment(const ExperimentConfig& config) {
  if (config.repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  std::vector<double> grid = config.grid.empty() ? experiment_default_grid(config.experiment_id)
                                                 : config.grid;
  const std::int64_t reps = config.repetitions;
  const std::int64_t total = static_cast<std::int64_t>(grid.size()) * reps;
  ResultTable table;
  table.rows.resize(total);
  parallel_for(total, config.threads, [&](std::int64_t task) {
    const auto g = static_cast<std::uint64_t>(task / reps);
    const auto r = static_cast<std::uint64_t>(task % reps);
    const std::uint64_t theta_rep = config.fix_theta ? 0 : r;
    ResultRow row;
    try {
      const DcmmParams params = experiment_params(
          config.experiment_id, grid[g],
          PhiloxRng::derive_stream({config.base_seed, g, theta_rep, 0}), config.n);
      row = score_one(params, PhiloxRng::derive_stream({config.base_seed, g, r, 1}),
                      PhiloxRng::derive_stream({config.base_seed, g, r, 2}), config.algo, grid[g],
                      static_cast<int>(r));
    } catch (const std::exception& e) {
      row.grid_value = grid[g];
      row.repetition = static_cast<int>(r);
      row.mixed_hamming = std::nan("");
      row.diagnostics = e.what();
    }
    table.rows[task] = std::move(row);
  });
  compute_aggregates(table);
  return table;
}

ResultTable run_sampling(const DcmmParams& params, int repetitions, std::uint64_t base_seed,
                         const IscSettings& algo, int threads) {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  params.validate();
  ResultTable table;
  table.rows.resize(repetitions);
  parallel_for(repetitions, threads, [&](std::int64_t r) {
    table.rows[r] = score_one(params, PhiloxRng::derive_stream({base_seed, 0, static_cast<std::uint64_t>(r), 1}),
                              PhiloxRng::derive_stream({base_seed, 0, static_cast<std::uint64_t>(r), 2}),
                              algo, 0.0, static_cast<int>(r));
  });
  compute_aggregates(table);
  return table;
}

std::map<DMode, ResultTable> tau_sweep_network(const AdjacencyMatrix& a,
                                               const MembershipMatrix* truth, int k,
                                               const std::vector<double>& c_grid,
                                               const std::vector<DMode>& d_modes,
                                               const IscSettings& base) {
  std::map<DMode, ResultTable> out;
  for (DMode mode : d_modes) {
    ResultTable table;
    for (double c : c_grid) {
      if (c < 0.0) throw std::invalid_argument("c must be nonnegative");
      ResultRow row;
      row.grid_value = c;
      row.repetition = 0;
      const auto start = std::chrono::steady_clock::now();
      try {
        IscSettings settings = base;
        settings.c = c;
        settings.d_mode = mode;
        const MixedIscResult res = mixed_isc(a, k, settings);
        if (truth != nullptr) {
          row.mixed_hamming = mixed_hamming(res.estimate.pi_hat, *truth);
        } else {
          row.mixed_hamming = std::nan("");
          row.diagnostics = "no ground truth";
        }
      } catch (const std::exception& e) {
        row.mixed_hamming = std::nan("");
        row.diagnostics = e.what();
      }
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      table.rows.push_back(std::move(row));
    }
    compute_aggregates(table);
    out.emplace(mode, std::move(table));
  }
  return out;
}

std::map<DMode, ResultTable> tau_sweep_experiment(const ExperimentConfig& config,
                                                  const std::vector<double>& c_grid,
                                                  const std::vector<DMode>& d_modes) {
  if (config.grid.size() != 1) {
    throw std::invalid_argument("tau sweep over an experiment needs exactly one grid point");
  }
  std::map<DMode, ResultTable> out;
  for (DMode mode : d_modes) {
    ResultTable merged;
    for (double c : c_grid) {
      ExperimentConfig run = config;
      run.algo.c = c;
      run.algo.d_mode = mode;
      // seeds depend only on (base_seed, grid index, rep): every (c, mode)
      // cell sees the same sampled networks
      ResultTable t = run_experiment(run);
      for (auto& row : t.rows) {
        row.grid_value = c;
        merged.rows.push_back(std::move(row));
      }
    }
    compute_aggregates(merged);
    out.emplace(mode, std::move(merged));
  }
  return out;
}

IngestedNetwork ingest_network(const std::string& edge_path, const std::string& truth_path) {
  const RemappedEdges remapped = remap_node_ids(read_edge_list(edge_path));
  IngestedNetwork net;
  net.original_ids = remapped.original_ids;
  const auto n = static_cast<std::int64_t>(remapped.original_ids.size());
  net.adjacency = AdjacencyMatrix::build(n, remapped.edges);
  if (!truth_path.empty()) {
    MembershipMatrix truth = read_membership_csv(truth_path, /*normalize_rows=*/true);
    if (truth.node_count() != n) {
      throw std::runtime_error("ground truth has " + std::to_string(truth.node_count()) +
                               " rows but the network has " + std::to_string(n) + " nodes");
    }
    net.truth = std::move(truth);
  }
  return net;
}

DcmmParams read_dcmm_config(const std::string& path, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  DcmmParams params;
  std::string pi_path, theta_spec;
  std::vector<std::string> matrix_lines;
  int matrix_rows_expected = -1;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    if (matrix_rows_expected > 0) {
      matrix_lines.push_back(line);
      --matrix_rows_expected;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error(path + ": expected key=value, got '" + line + "'");
    const std::string key = line.substr(first, eq - first);
    const std::string value = line.substr(eq + 1);
    if (key == "n") {
      params.n = std::stoi(value);
    } else if (key == "K") {
      params.k = std::stoi(value);
      matrix_rows_expected = -1;
    } else if (key == "P") {
      if (params.k < 1) throw std::runtime_error(path + ": K must come before P");
      matrix_rows_expected = params.k;
      if (!value.empty() && value.find_first_not_of(" \t") != std::string::npos) {
        matrix_lines.push_back(value);
        --matrix_rows_expected;
      }
    } else if (key == "theta") {
      theta_spec = value;
    } else if (key == "pi") {
      pi_path = value;
    } else {
      throw std::runtime_error(path + ": unknown key '" + key + "'");
    }
  }
  if (params.n < 1 || params.k < 1) throw std::runtime_error(path + ": n and K are required");
  if (static_cast<int>(matrix_lines.size()) != params.k) {
    throw std::runtime_error(path + ": P must provide K rows");
  }
  params.mixing.resize(params.k, params.k);
  for (int r = 0; r < params.k; ++r) {
    std::istringstream ss(matrix_lines[r]);
    for (int c = 0; c < params.k; ++c) {
      if (!(ss >> params.mixing(r, c))) throw std::runtime_error(path + ": P row " + std::to_string(r) + " is short");
    }
  }
  if (theta_spec.empty()) throw std::runtime_error(path + ": theta is required");
  const auto colon = theta_spec.find(':');
  if (theta_spec.rfind("uniform_inverse", 0) == 0 && colon != std::string::npos) {
    const double z = std::stod(theta_spec.substr(colon + 1));
    if (z < 1.0) throw std::runtime_error(path + ": uniform_inverse needs z >= 1");
    PhiloxRng rng(seed);
    params.theta.resize(params.n);
    for (int i = 0; i < params.n; ++i) params.theta[i] = 1.0 / rng.uniform(1.0, z);
  } else {
    std::istringstream ss(theta_spec);
    params.theta.resize(params.n);
    for (int i = 0; i < params.n; ++i) {
      if (!(ss >> params.theta[i])) throw std::runtime_error(path + ": theta needs n inline values");
    }
  }
  if (pi_path.empty()) throw std::runtime_error(path + ": pi is required");
  const std::filesystem::path resolved =
      std::filesystem::path(pi_path).is_absolute()
          ? std::filesystem::path(pi_path)
          : std::filesystem::path(path).parent_path() / pi_path;
  params.pi = read_membership_csv(resolved.string());
  params.validate();
  return params;
}

void write_dcmm_config(const std::string& path, const DcmmParams& params,
                       const std::string& pi_csv_path) {
  params.validate();
  write_membership_csv(pi_csv_path, params.pi);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config '" + path + "'");
  out << "n=" << params.n << '\n' << "K=" << params.k << '\n' << "P=\n";
  char buf[64];
  for (int r = 0; r < params.k; ++r) {
    for (int c = 0; c < params.k; ++c) {
      std::snprintf(buf, sizeof(buf), "%.12g", params.mixing(r, c));
      out << buf << (c + 1 == params.k ? "\n" : " ");
    }
  }
  out << "theta=";
  for (int i = 0; i < params.n; ++i) {
    std::snprintf(buf, sizeof(buf), "%.12g", params.theta[i]);
    out << buf << (i + 1 == params.n ? "\n" : " ");
  }
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  std::filesystem::path rel =
      parent.empty() ? std::filesystem::path(pi_csv_path)
                     : std::filesystem::relative(pi_csv_path, parent);
  if (rel.empty()) rel = pi_csv_path;
  out << "pi=" << rel.string() << '\n';
}

}  // namespace mixedisc
