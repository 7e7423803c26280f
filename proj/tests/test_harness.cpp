#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "mixedisc/harness.hpp"
#include "mixedisc/metrics.hpp"
#include "support/test_util.hpp"

using namespace mixedisc;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.experiment_id = 3;
  cfg.grid = {0.0};
  cfg.repetitions = 5;
  cfg.base_seed = 11;
  cfg.n = 120;
  return cfg;
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("run_experiment produces one row per repetition plus an aggregate") {
  const ResultTable t = run_experiment(small_config());
  CHECK(t.rows.size() == 5);
  REQUIRE(t.aggregates.size() == 1);
  CHECK(t.aggregates[0].grid_value == 0.0);
  for (const auto& row : t.rows) {
    CHECK(!std::isnan(row.mixed_hamming));
    CHECK(row.seconds > 0.0);
  }
}

TEST_CASE("aggregates are recomputable from the raw rows") {
  ResultTable t = run_experiment(small_config());
  const double mean = t.aggregates[0].mean;
  const double sd = t.aggregates[0].sd;
  double sum = 0.0;
  for (const auto& r : t.rows) sum += r.mixed_hamming;
  const double mean2 = sum / static_cast<double>(t.rows.size());
  double ss = 0.0;
  for (const auto& r : t.rows) ss += (r.mixed_hamming - mean2) * (r.mixed_hamming - mean2);
  CHECK(std::abs(mean - mean2) < 1e-12);
  CHECK(std::abs(sd - std::sqrt(ss / (static_cast<double>(t.rows.size()) - 1))) < 1e-12);
}

TEST_CASE("identical configs give identical tables regardless of threads") {
  ExperimentConfig a = small_config();
  a.threads = 1;
  ExperimentConfig b = small_config();
  b.threads = 4;
  const ResultTable ta = run_experiment(a);
  const ResultTable tb = run_experiment(b);
  CHECK(raw_csv(ta) == raw_csv(tb));
  CHECK(aggregate_csv(ta) == aggregate_csv(tb));
  // and the same config twice is bit-identical
  const ResultTable tc = run_experiment(a);
  CHECK(raw_csv(ta) == raw_csv(tc));
}

TEST_CASE("default grid produces one aggregate row per published value") {
  ExperimentConfig cfg;
  cfg.experiment_id = 2;
  cfg.repetitions = 1;
  cfg.n = 60;
  cfg.base_seed = 3;
  const ResultTable t = run_experiment(cfg);
  CHECK(t.rows.size() == 9);
  CHECK(t.aggregates.size() == 9);
  CHECK(t.aggregates.front().grid_value == 0.0);
  CHECK(t.aggregates.back().grid_value == doctest::Approx(0.4));
}

TEST_CASE("fixed theta reuses one draw across repetitions") {
  ExperimentConfig cfg = small_config();
  cfg.fix_theta = true;
  const ResultTable t = run_experiment(cfg);
  CHECK(t.rows.size() == 5);  // structural: runs fine; scores vary only by edges
}

TEST_CASE("csv serialization shape and timing suppression") {
  ResultTable t;
  t.rows.push_back({0.4, 0, 0.125, 3.5, ""});
  t.rows.push_back({0.4, 1, std::nan(""), 1.0, "boom"});
  compute_aggregates(t);
  const std::string raw = raw_csv(t);
  CHECK(raw == "grid_value,rep,mixed_hamming,seconds\n0.4,0,0.125,0\n0.4,1,nan,0\n");
  const std::string timed = raw_csv(t, true);
  CHECK(timed.find("3.5") != std::string::npos);
  const std::string agg = aggregate_csv(t);
  CHECK(agg == "grid_value,mean,sd\n0.4,0.125,0\n");
}

TEST_CASE("failed repetitions are recorded, not fatal") {
  // K+1 > n forces a per-repetition failure
  DcmmParams p = testsupport::random_dcsbm(3, 3, 5);
  const ResultTable t = run_sampling(p, 2, 9, IscSettings{});
  CHECK(t.rows.size() == 2);
  for (const auto& r : t.rows) {
    CHECK(std::isnan(r.mixed_hamming));
    CHECK(!r.diagnostics.empty());
  }
}

TEST_CASE("tau sweep over one network yields a row per c and mode") {
  const DcmmParams p = testsupport::random_dcsbm(60, 3, 21);
  const AdjacencyMatrix a = sample_adjacency(p, 3);
  const auto tables = tau_sweep_network(a, &p.pi, 3, {0.1},
                                        {DMode::midrange, DMode::mean, DMode::max}, IscSettings{});
  CHECK(tables.size() == 3);
  for (const auto& [mode, table] : tables) {
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0].grid_value == 0.1);
    CHECK(!std::isnan(table.rows[0].mixed_hamming));
  }
}

TEST_CASE("tau sweep records the division-by-zero row for c=0 with an isolated node") {
  const auto a = AdjacencyMatrix::build(4, {{0, 1}, {1, 2}});  // node 3 isolated
  const auto tables = tau_sweep_network(a, nullptr, 1, {0.0}, {DMode::midrange}, IscSettings{});
  const ResultTable& t = tables.at(DMode::midrange);
  REQUIRE(t.rows.size() == 1);
  CHECK(std::isnan(t.rows[0].mixed_hamming));
  CHECK(t.rows[0].diagnostics.find("zero degree") != std::string::npos);
}

TEST_CASE("tau sweep over an experiment reuses the same sampled networks per cell") {
  ExperimentConfig cfg = small_config();
  cfg.grid = {0.4};
  cfg.repetitions = 3;
  const auto tables = tau_sweep_experiment(cfg, {0.05, 0.1}, {DMode::midrange});
  const ResultTable& t = tables.at(DMode::midrange);
  CHECK(t.rows.size() == 6);  // 2 c-values x 3 reps
  CHECK(t.aggregates.size() == 2);
}

TEST_CASE("ingest parses a triangle") {
  TempFile f("harness_tri.tmp");
  {
    std::ofstream out(f.path);
    out << "0 1\n1 2\n2 0\n";
  }
  const IngestedNetwork net = ingest_network(f.path);
  CHECK(net.adjacency.node_count() == 3);
  CHECK(net.adjacency.edge_count() == 3);
  CHECK(!net.truth.has_value());
}

TEST_CASE("ingest remaps sparse ids and reports the mapping") {
  TempFile f("harness_remap.tmp");
  {
    std::ofstream out(f.path);
    out << "10 20\n20 30\n";
  }
  const IngestedNetwork net = ingest_network(f.path);
  CHECK(net.adjacency.node_count() == 3);
  CHECK(net.original_ids == std::vector<std::int64_t>{10, 20, 30});
}

TEST_CASE("ground truth circles are row-normalized on load") {
  TempFile edges("harness_gt_edges.tmp");
  TempFile truth("harness_gt_truth.tmp");
  {
    std::ofstream out(edges.path);
    out << "0 1\n1 2\n";
  }
  {
    std::ofstream out(truth.path);
    out << "node,pi_1,pi_2\n0,1,1\n1,1,0\n2,0,2\n";
  }
  const IngestedNetwork net = ingest_network(edges.path, truth.path);
  REQUIRE(net.truth.has_value());
  CHECK(net.truth->rows()(0, 0) == doctest::Approx(0.5));
  CHECK(net.truth->rows()(0, 1) == doctest::Approx(0.5));
  CHECK(net.truth->rows()(2, 1) == doctest::Approx(1.0));
}

TEST_CASE("all-zero ground truth row is rejected with the node listed") {
  TempFile edges("harness_gt0_edges.tmp");
  TempFile truth("harness_gt0_truth.tmp");
  {
    std::ofstream out(edges.path);
    out << "0 1\n1 2\n";
  }
  {
    std::ofstream out(truth.path);
    out << "0,1,0\n1,0,0\n2,0,1\n";
  }
  CHECK_THROWS_WITH_AS(ingest_network(edges.path, truth.path), doctest::Contains("1"),
                       std::runtime_error);
}

TEST_CASE("ground truth row count must match the network") {
  TempFile edges("harness_gtn_edges.tmp");
  TempFile truth("harness_gtn_truth.tmp");
  {
    std::ofstream out(edges.path);
    out << "0 1\n1 2\n";
  }
  {
    std::ofstream out(truth.path);
    out << "0,1,0\n1,0,1\n";
  }
  CHECK_THROWS_AS(ingest_network(edges.path, truth.path), std::runtime_error);
}

TEST_CASE("ingested sample matches the sampler's own bookkeeping") {
  const DcmmParams p = testsupport::random_dcmm(40, 3, 33);
  const AdjacencyMatrix a = sample_adjacency(p, 77);
  TempFile edges("harness_book_edges.tmp");
  TempFile truth("harness_book_truth.tmp");
  write_edge_list(edges.path, a);
  write_membership_csv(truth.path, p.pi);
  const IngestedNetwork net = ingest_network(edges.path, truth.path);
  const SummaryStats direct = summary_stats(a, &p.pi, 3);
  const SummaryStats loaded = summary_stats(net.adjacency, &*net.truth, 3);
  CHECK(loaded.n == direct.n);
  CHECK(loaded.density == doctest::Approx(direct.density));
  CHECK(*loaded.overlap_fraction == doctest::Approx(*direct.overlap_fraction));
}

TEST_CASE("model config round trip") {
  const DcmmParams p = testsupport::random_dcmm(20, 3, 55);
  TempFile cfg("harness_cfg.tmp");
  TempFile picsv("harness_cfg_pi.tmp");
  write_dcmm_config(cfg.path, p, picsv.path);
  const DcmmParams q = read_dcmm_config(cfg.path, 1);
  CHECK(q.n == p.n);
  CHECK(q.k == p.k);
  CHECK((q.mixing - p.mixing).cwiseAbs().maxCoeff() < 1e-11);
  CHECK((q.theta - p.theta).cwiseAbs().maxCoeff() < 1e-11);
  CHECK((q.pi.rows() - p.pi.rows()).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("model config with distribution theta draws from the seed") {
  TempFile cfg("harness_cfg2.tmp");
  TempFile picsv("harness_cfg2_pi.tmp");
  {
    const auto pi = MembershipMatrix::from_labels({0, 1, 0, 1}, 2);
    write_membership_csv(picsv.path, pi);
    std::ofstream out(cfg.path);
    out << "n=4\nK=2\nP=\n0.8 0.2\n0.2 0.8\ntheta=uniform_inverse:4\npi=" << picsv.path << "\n";
  }
  const DcmmParams a = read_dcmm_config(cfg.path, 7);
  const DcmmParams b = read_dcmm_config(cfg.path, 7);
  const DcmmParams c = read_dcmm_config(cfg.path, 8);
  CHECK(a.theta == b.theta);
  CHECK(a.theta != c.theta);
  CHECK((a.theta.array() <= 1.0).all());
  CHECK((a.theta.array() >= 0.25).all());
}
