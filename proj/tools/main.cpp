#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "mixedisc/dcmm.hpp"
#include "mixedisc/harness.hpp"
#include "mixedisc/metrics.hpp"
#include "mixedisc/pipeline.hpp"

using namespace mixedisc;
using nlohmann::json;

namespace {

struct AlgoFlags {
  double c = 0.1;
  std::string d_mode = "midrange";
  std::string clustering = "kmeans";
  std::string norm = "l1";
  int restarts = 10;
  std::uint64_t seed = 42;

  void attach(CLI::App* cmd) {
    cmd->add_option("--c", c, "regularizer scale tau = c * d")->check(CLI::NonNegativeNumber);
    cmd->add_option("--d-mode", d_mode, "degree statistic for tau")
        ->check(CLI::IsMember({"midrange", "mean", "max"}));
    cmd->add_option("--clustering", clustering, "center-hunting method")
        ->check(CLI::IsMember({"kmeans", "kmedian"}));
    cmd->add_option("--norm", norm, "PMF normalization")->check(CLI::IsMember({"l1", "l2"}));
    cmd->add_option("--restarts", restarts, "clustering restarts")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "random seed");
  }

  IscSettings settings() const {
    IscSettings s;
    s.c = c;
    s.d_mode = parse_d_mode(d_mode);
    s.method = parse_cluster_method(clustering);
    s.norm = parse_norm_mode(norm);
    s.restarts = restarts;
    s.seed = seed;
    return s;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

void write_mapping_if_nontrivial(const std::string& out_prefix,
                                 const std::vector<std::int64_t>& original_ids) {
  bool identity = true;
  for (std::size_t i = 0; i < original_ids.size(); ++i) {
    if (original_ids[i] != static_cast<std::int64_t>(i)) {
      identity = false;
      break;
    }
  }
  if (identity) return;
  std::string csv = "node,original_id\n";
  for (std::size_t i = 0; i < original_ids.size(); ++i) {
    csv += std::to_string(i) + ',' + std::to_string(original_ids[i]) + '\n';
  }
  const std::string path = out_prefix + "_mapping.csv";
  write_text(path, csv);
  std::cerr << "note: node ids were remapped; mapping written to " << path << "\n";
}

std::string stem_of(const std::string& path) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
  return path.substr(0, dot);
}

int run_detect(const std::string& input, int k, const AlgoFlags& algo, const std::string& out,
               const std::string& diag_out, const std::string& truth_path) {
  const IngestedNetwork net = ingest_network(input, truth_path);
  const MixedIscResult res = mixed_isc(net.adjacency, k, algo.settings());
  write_membership_csv(out, res.estimate.pi_hat);
  write_mapping_if_nontrivial(stem_of(out), net.original_ids);

  json diag;
  diag["n"] = net.adjacency.node_count();
  diag["k"] = k;
  diag["tau"] = res.embedding.tau;
  diag["eigenvalues"] = std::vector<double>(
      res.embedding.eigenvalues.data(),
      res.embedding.eigenvalues.data() + res.embedding.eigenvalues.size());
  diag["clustering_loss"] = res.centers.inertia;
  diag["clustering_method"] = to_string(res.centers.method);
  diag["zero_embedding_rows"] = res.embedding.zero_rows;
  diag["fallback_nodes"] = res.estimate.fallback_nodes;
  diag["eigengap_warning"] = res.eigengap_warning;
  if (net.truth.has_value()) {
    diag["mixed_hamming"] = mixed_hamming(res.estimate.pi_hat, *net.truth);
  }
  if (res.eigengap_warning) {
    std::cerr << "warning: lambda_K does not dominate |lambda_{K+1}|; "
                 "estimates may be unstable in this regime\n";
  }
  const std::string text = diag.dump(2) + "\n";
  if (diag_out.empty()) {
    std::cout << text;
  } else {
    write_text(diag_out, text);
  }
  return 0;
}

int run_simulate(int experiment, const std::vector<double>& grid, int reps, std::uint64_t seed,
                 const std::string& profile, int n, int threads, bool fix_theta,
                 const AlgoFlags& algo, std::string out, bool timing, const std::string& params_path,
                 const CLI::App* cmd) {
  ResultTable table;
  if (!params_path.empty()) {
    const DcmmParams params = read_dcmm_config(params_path, seed);
    if (out.empty()) out = "custom";
    table = run_sampling(params, reps, seed, algo.settings(), threads);
  } else {
    ExperimentConfig cfg;
    cfg.experiment_id = experiment;
    cfg.grid = grid;
    cfg.repetitions = reps;
    cfg.base_seed = seed;
    cfg.algo = algo.settings();
    cfg.n = n;
    cfg.fix_theta = fix_theta;
    cfg.threads = threads;
    if (profile == "desk") {
      cfg.apply_desk_profile();
      if (cmd->count("--reps") > 0) cfg.repetitions = reps;
      if (cmd->count("--n") > 0) cfg.n = n;
    }
    if (out.empty()) out = "experiment" + std::to_string(experiment);
    table = run_experiment(cfg);
  }
  write_text(out + "_raw.csv", raw_csv(table, timing));
  write_text(out + "_agg.csv", aggregate_csv(table));
  std::int64_t failures = 0;
  double seconds = 0.0;
  for (const auto& r : table.rows) {
    if (!r.diagnostics.empty()) ++failures;
    seconds += r.seconds;
  }
  std::cerr << table.rows.size() << " repetitions in " << fmt(seconds) << " s";
  if (failures > 0) std::cerr << " (" << failures << " failed)";
  std::cerr << "; results in " << out << "_raw.csv, " << out << "_agg.csv\n";
  return 0;
}

int run_classify(const std::string& input, int k, const std::string& matrix, const AlgoFlags& algo) {
  const IngestedNetwork net = ingest_network(input);
  const SignalClassification c =
      classify_signal(parse_matrix_source(matrix), net.adjacency, k, algo.c,
                      parse_d_mode(algo.d_mode));
  if (!c.connected) {
    std::cerr << "warning: the network is disconnected; the weak-signal "
                 "definition presumes a connected network\n";
  }
  std::cout << "source=" << to_string(c.source) << "\n"
            << "lambda_K=" << fmt(c.lambda_k) << "\n"
            << "lambda_K1=" << fmt(c.lambda_k1) << "\n"
            << "gap=" << fmt(c.ratio_gap) << "\n"
            << "signal=" << (c.is_weak ? "weak" : "strong") << "\n";
  return 0;
}

int run_stats(const std::string& input, const std::string& truth_path, int k) {
  const IngestedNetwork net = ingest_network(input, truth_path);
  const MembershipMatrix* pi = net.truth.has_value() ? &*net.truth : nullptr;
  const int k_eff = k > 0 ? k : (pi != nullptr ? static_cast<int>(pi->community_count()) : 0);
  const SummaryStats s = summary_stats(net.adjacency, pi, k_eff);
  std::cout << "n=" << s.n << "\n";
  if (s.k > 0) std::cout << "k=" << s.k << "\n";
  std::cout << "mean_degree=" << fmt(s.mean_degree) << "\n"
            << "density=" << fmt(s.density) << "\n";
  if (s.overlap_fraction.has_value()) std::cout << "overlap_fraction=" << fmt(*s.overlap_fraction) << "\n";
  return 0;
}

int run_sweep(const std::string& input, const std::string& truth_path, int k, int experiment,
              double grid_point, const std::vector<double>& c_grid,
              const std::vector<std::string>& d_mode_names, int reps, std::uint64_t seed, int n,
              int threads, const AlgoFlags& algo, std::string out, bool timing) {
  std::vector<DMode> modes;
  for (const auto& name : d_mode_names) modes.push_back(parse_d_mode(name));
  std::map<DMode, ResultTable> tables;
  if (!input.empty()) {
    const IngestedNetwork net = ingest_network(input, truth_path);
    const MembershipMatrix* truth = net.truth.has_value() ? &*net.truth : nullptr;
    tables = tau_sweep_network(net.adjacency, truth, k, c_grid, modes, algo.settings());
    if (out.empty()) out = "sweep";
  } else {
    ExperimentConfig cfg;
    cfg.experiment_id = experiment;
    cfg.grid = {grid_point};
    cfg.repetitions = reps;
    cfg.base_seed = seed;
    cfg.algo = algo.settings();
    cfg.n = n;
    cfg.threads = threads;
    tables = tau_sweep_experiment(cfg, c_grid, modes);
    if (out.empty()) out = "sweep_experiment" + std::to_string(experiment);
  }
  for (const auto& [mode, table] : tables) {
    const std::string base = out + "_" + to_string(mode);
    write_text(base + "_raw.csv", raw_csv(table, timing));
    write_text(base + "_agg.csv", aggregate_csv(table));
    std::cerr << "wrote " << base << "_raw.csv, " << base << "_agg.csv\n";
  }
  return 0;
}

int run_eval(const std::string& estimate_path, const std::string& truth_path,
             const std::string& labels_path) {
  const MembershipMatrix estimate = read_membership_csv(estimate_path);
  const MembershipMatrix truth = read_membership_csv(truth_path, /*normalize_rows=*/true);
  std::cout << "mixed_hamming=" << fmt(mixed_hamming(estimate, truth)) << "\n";
  const std::vector<int> labels =
      labels_path.empty() ? truth.hard_labels() : read_labels(labels_path);
  const auto [count, rate] = hard_error_rate(estimate, labels);
  std::cout << "hard_errors=" << count << "\n"
            << "hard_error_rate=" << fmt(rate) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed membership community detection by improved spectral clustering"};
  app.require_subcommand(1);

  // detect
  auto* detect = app.add_subcommand("detect", "estimate memberships for a network");
  std::string detect_input, detect_out = "membership.csv", detect_diag, detect_truth;
  int detect_k = 0;
  AlgoFlags detect_algo;
  detect->add_option("--input", detect_input, "edge list file")->required();
  detect->add_option("--k", detect_k, "number of communities")->required()->check(CLI::PositiveNumber);
  detect->add_option("--out", detect_out, "membership CSV path");
  detect->add_option("--diag-out", detect_diag, "diagnostics JSON path (default: stdout)");
  detect->add_option("--truth", detect_truth, "ground-truth membership CSV (adds score to diagnostics)");
  detect_algo.attach(detect);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run a simulation experiment");
  int sim_experiment = 0, sim_reps = 50, sim_n = 500, sim_threads = 0;
  std::vector<double> sim_grid;
  std::string sim_profile, sim_out, sim_params;
  bool sim_fix_theta = false, sim_timing = false;
  AlgoFlags sim_algo;
  simulate->add_option("--experiment", sim_experiment, "experiment id 1-4")
      ->check(CLI::Range(1, 4));
  simulate->add_option("--params", sim_params, "custom model config file (instead of --experiment)");
  simulate->add_option("--grid", sim_grid, "override the varied-parameter grid");
  simulate->add_option("--reps", sim_reps, "repetitions per grid value")->check(CLI::PositiveNumber);
  simulate->add_option("--n", sim_n, "node count override");
  simulate->add_option("--profile", sim_profile, "named profile")->check(CLI::IsMember({"desk"}));
  simulate->add_option("--threads", sim_threads, "worker threads (0 = hardware)");
  simulate->add_flag("--fix-theta", sim_fix_theta, "reuse one theta draw across repetitions");
  simulate->add_flag("--timing", sim_timing, "write wall times into the CSV (not bit-reproducible)");
  simulate->add_option("--out", sim_out, "output prefix");
  sim_algo.attach(simulate);

  // classify
  auto* classify = app.add_subcommand("classify", "weak/strong signal classification");
  std::string cls_input, cls_matrix = "adjacency";
  int cls_k = 0;
  AlgoFlags cls_algo;
  classify->add_option("--input", cls_input, "edge list file")->required();
  classify->add_option("--k", cls_k, "number of communities")->required()->check(CLI::PositiveNumber);
  classify->add_option("--matrix", cls_matrix, "matrix the definition reads")
      ->check(CLI::IsMember({"adjacency", "laplacian"}));
  cls_algo.attach(classify);

  // stats
  auto* stats = app.add_subcommand("stats", "network summary statistics");
  std::string stats_input, stats_truth;
  int stats_k = 0;
  stats->add_option("--input", stats_input, "edge list file")->required();
  stats->add_option("--truth", stats_truth, "ground-truth membership CSV");
  stats->add_option("--k", stats_k, "number of communities");

  // sweep-tau
  auto* sweep = app.add_subcommand("sweep-tau", "sensitivity of the estimate to the regularizer");
  std::string sw_input, sw_truth, sw_out;
  int sw_k = 0, sw_experiment = 0, sw_reps = 10, sw_n = 500, sw_threads = 0;
  double sw_grid_point = 0.4;
  std::vector<double> sw_c_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0,
                                   1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0};
  std::vector<std::string> sw_modes = {"midrange"};
  bool sw_timing = false;
  AlgoFlags sw_algo;
  sweep->add_option("--input", sw_input, "edge list file (network mode)");
  sweep->add_option("--truth", sw_truth, "ground-truth membership CSV");
  sweep->add_option("--k", sw_k, "number of communities (network mode)");
  sweep->add_option("--experiment", sw_experiment, "experiment id (simulation mode)")
      ->check(CLI::Range(1, 4));
  sweep->add_option("--grid-point", sw_grid_point, "varied-parameter value (simulation mode)");
  sweep->add_option("--c-grid", sw_c_grid, "c values to sweep");
  sweep->add_option("--d-modes", sw_modes, "degree statistics to sweep")
      ->check(CLI::IsMember({"midrange", "mean", "max"}));
  sweep->add_option("--reps", sw_reps, "repetitions (simulation mode)")->check(CLI::PositiveNumber);
  sweep->add_option("--n", sw_n, "node count override (simulation mode)");
  sweep->add_option("--threads", sw_threads, "worker threads");
  sweep->add_flag("--timing", sw_timing, "write wall times into the CSV (not bit-reproducible)");
  sweep->add_option("--out", sw_out, "output prefix");
  sw_algo.attach(sweep);

  // eval
  auto* eval = app.add_subcommand("eval", "score an estimate against ground truth");
  std::string ev_estimate, ev_truth, ev_labels;
  eval->add_option("--estimate", ev_estimate, "estimated membership CSV")->required();
  eval->add_option("--truth", ev_truth, "ground-truth membership CSV")->required();
  eval->add_option("--labels", ev_labels, "hard label file (default: truth argmax)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (detect->parsed()) {
      return run_detect(detect_input, detect_k, detect_algo, detect_out, detect_diag, detect_truth);
    }
    if (simulate->parsed()) {
      if (sim_experiment == 0 && sim_params.empty()) {
        std::cerr << "error: simulate needs --experiment or --params\n";
        return 1;
      }
      return run_simulate(sim_experiment, sim_grid, sim_reps, sim_algo.seed, sim_profile, sim_n,
                          sim_threads, sim_fix_theta, sim_algo, sim_out, sim_timing, sim_params,
                          simulate);
    }
    if (classify->parsed()) return run_classify(cls_input, cls_k, cls_matrix, cls_algo);
    if (stats->parsed()) return run_stats(stats_input, stats_truth, stats_k);
    if (sweep->parsed()) {
      if (sw_input.empty() && sw_experiment == 0) {
        std::cerr << "error: sweep-tau needs --input or --experiment\n";
        return 1;
      }
      if (!sw_input.empty() && sw_k <= 0) {
        std::cerr << "error: network-mode sweep-tau needs --k\n";
        return 1;
      }
      return run_sweep(sw_input, sw_truth, sw_k, sw_experiment, sw_grid_point, sw_c_grid, sw_modes,
                       sw_reps, sw_algo.seed, sw_n, sw_threads, sw_algo, sw_out, sw_timing);
    }
    if (eval->parsed()) return run_eval(ev_estimate, ev_truth, ev_labels);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
