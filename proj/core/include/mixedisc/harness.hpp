#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mixedisc/dcmm.hpp"
#include "mixedisc/graph.hpp"
#include "mixedisc/membership.hpp"
#include "mixedisc/pipeline.hpp"

namespace mixedisc {

/// One simulation campaign: a grid of the experiment's varied parameter,
/// repetitions per grid point, and the algorithm settings.
struct ExperimentConfig {
  int experiment_id = 1;
  std::vector<double> grid;  // empty selects the experiment's default grid
  int repetitions = 50;
  std::uint64_t base_seed = 42;
  IscSettings algo;
  int n = 500;
  bool fix_theta = false;  // reuse one theta draw across repetitions
  int threads = 0;         // 0 = hardware concurrency

  /// Reduced-scale profile (n=300, 10 repetitions) for fast runs.
  void apply_desk_profile() {
    n = 300;
    repetitions = 10;
  }
};

struct ResultRow {
  double grid_value = 0.0;
  int repetition = 0;
  double mixed_hamming = 0.0;  // NaN when the repetition failed
  double seconds = 0.0;
  std::string diagnostics;  // error text on failure, else empty
};

struct ResultAggregate {
  double grid_value = 0.0;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation over successful repetitions
};

struct ResultTable {
  std::vector<ResultRow> rows;
  std::vector<ResultAggregate> aggregates;
};

/// Recomputes the per-grid-value mean/sd from the raw rows.
void compute_aggregates(ResultTable& table);

/// Raw rows as CSV.
///
/// The seconds column is written as 0 unless `include_timing` is set:
/// emitted files are bit-reproducible functions of the configuration, and
/// wall-clock times are not. In-memory rows always carry the measurement.
std::string raw_csv(const ResultTable& table, bool include_timing = false);
std::string aggregate_csv(const ResultTable& table);

/// Runs the full campaign: per (grid value, repetition) draws a model
/// instance, samples a network, runs the pipeline, and scores the
/// mixed-Hamming error against the true memberships. Repetition failures
/// are recorded in their row rather than thrown. Deterministic for a given
/// config, independent of thread count.
ResultTable run_experiment(const ExperimentConfig& config);

/// Same contract for a fixed model instance instead of a named experiment
/// design (theta in `params` is kept as-is across repetitions).
ResultTable run_sampling(const DcmmParams& params, int repetitions, std::uint64_t base_seed,
                         const IscSettings& algo, int threads = 0);

/// Regularizer sweep on one observed network: one row per c value, one
/// table per degree mode. Rows are scored when ground truth is present.
/// Per-row failures (e.g. c=0 with an isolated node) are recorded in the
/// row.
std::map<DMode, ResultTable> tau_sweep_network(const AdjacencyMatrix& a,
                                               const MembershipMatrix* truth, int k,
                                               const std::vector<double>& c_grid,
                                               const std::vector<DMode>& d_modes,
                                               const IscSettings& base);

/// Regularizer sweep on a simulation design: the config must have exactly
/// one grid point; each (c, d_mode) reruns its repetitions with identical
/// per-repetition seeds so the sweep compares on the same sampled networks.
std::map<DMode, ResultTable> tau_sweep_experiment(const ExperimentConfig& config,
                                                  const std::vector<double>& c_grid,
                                                  const std::vector<DMode>& d_modes);

struct IngestedNetwork {
  AdjacencyMatrix adjacency;
  std::optional<MembershipMatrix> truth;
  std::vector<std::int64_t> original_ids;  // original id of each remapped node
};

/// Loads an edge-list file (ids remapped to [0,n) in ascending original
/// order) and optionally a ground-truth membership CSV whose raw rows are
/// normalized into PMFs.
IngestedNetwork ingest_network(const std::string& edge_path,
                               const std::string& truth_path = "");

/// Plain-text model description: `n=`, `K=`, `P=` followed by K matrix
/// rows, `theta=` (inline values or `uniform_inverse:z`), `pi=` (path to a
/// membership CSV, resolved relative to the config file). The seed draws
/// theta when it is given as a distribution.
DcmmParams read_dcmm_config(const std::string& path, std::uint64_t seed);
void write_dcmm_config(const std::string& path, const DcmmParams& params,
                       const std::string& pi_csv_path);

}  // namespace mixedisc
