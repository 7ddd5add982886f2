#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "zipfit/montecarlo.hpp"

using namespace zipfit;

namespace {

SimulationConfig small_config(double gamma, std::int64_t n,
                              SupportSpec support = SupportSpec::finite(20)) {
  SimulationConfig c;
  c.gamma = gamma;
  c.n = n;
  c.support = support;
  c.replicates = 1000;
  c.repetitions = 1;
  c.base_seed = 2024;
  c.workers = 1;
  return c;
}

}  // namespace

TEST_CASE("quantile index is floor(R q), zero-based") {
  CHECK(quantile_index(50000, 0.9) == 45000);
  CHECK(quantile_index(50000, 0.95) == 47500);
  CHECK(quantile_index(50000, 0.99) == 49500);
  CHECK(quantile_index(50000, 0.999) == 49950);
  CHECK(quantile_index(100, 0.95) == 95);
  CHECK(quantile_index(10, 0.999) == 9);
  CHECK(quantile_index(7, 0.5) == 3);
  CHECK_THROWS_AS(quantile_index(0, 0.5), std::invalid_argument);

  std::vector<double> stats(100);
  for (std::size_t i = 0; i < stats.size(); ++i) {
    stats[i] = static_cast<double>(99 - i);
  }
  const std::vector<double> levels{0.5, 0.9};
  CHECK(quantiles(stats, levels) == std::vector<double>{50.0, 90.0});
}

TEST_CASE("property: quantiles match selection oracle") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> size_dist(1, 3000);
  std::uniform_real_distribution<double> value_dist(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> stats(size_dist(rng));
    for (double& s : stats) {
      s = value_dist(rng);
    }
    const std::vector<double> got = quantiles(stats, kStandardLevels);
    for (std::size_t i = 0; i < kStandardLevels.size(); ++i) {
      REQUIRE(got[i] == oracle::select_quantile(stats, kStandardLevels[i]));
    }
  }
}

TEST_CASE("invalid quantile levels") {
  const std::vector<double> stats{0.1, 0.2};
  for (const std::vector<double>& bad :
       {std::vector<double>{}, {0.0}, {1.0}, {0.9, 0.5}, {0.5, 0.5}}) {
    CHECK_THROWS_AS(quantiles(stats, bad), std::invalid_argument);
  }
  CHECK_THROWS_AS(quantiles(std::vector<double>{}, kStandardLevels),
                  std::invalid_argument);
}

TEST_CASE("replicate on a known sample") {
  const SupportSpec support = SupportSpec::finite(2);
  const ReplicateOutcome r =
      fit_and_test(Sample({1, 1, 2}), support, {}, LogTable(2));
  CHECK(std::abs(r.gamma_hat - 1.0) < 1e-5);
  CHECK(r.ks < 1e-5);
}

TEST_CASE("replicates are reproducible and independent of workers") {
  SimulationConfig c = small_config(1.5, 50);
  const ReplicateOutcome a = run_replicate(c, 17);
  const ReplicateOutcome b = run_replicate(c, 17);
  CHECK(a.ks == b.ks);
  CHECK(a.gamma_hat == b.gamma_hat);
  CHECK(a.replicate_index == 17);
  CHECK(run_replicate(c, 18).ks != a.ks);

  const Simulator one(c);
  c.workers = 4;
  const Simulator four(c);
  CHECK(one.run_statistics(0) == four.run_statistics(0));
  CHECK(one.run_statistics(1) != one.run_statistics(0));
  CHECK_THROWS_AS(run_replicate(c, c.replicates), std::invalid_argument);
}

TEST_CASE("repetition cutoffs are the order statistics of the replicates") {
  const SimulationConfig c = small_config(1.0, 100);
  const Simulator sim(c);
  CHECK(sim.run_repetition(0) ==
        oracle::select_quantiles(sim.run_statistics(0), c.quantiles));
}

TEST_CASE("cutoffs average the per-repetition quantiles") {
  SimulationConfig c = small_config(2.0, 30, SupportSpec::unbounded());
  c.repetitions = 3;
  const Simulator sim(c);
  std::vector<double> expected(c.quantiles.size(), 0.0);
  for (int r = 0; r < 3; ++r) {
    const std::vector<double> q =
        oracle::select_quantiles(sim.run_statistics(r), c.quantiles);
    for (std::size_t i = 0; i < q.size(); ++i) {
      expected[i] += q[i];
    }
  }
  const std::vector<double> got = run_simulation(c);
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(std::abs(got[i] - expected[i] / 3.0) < 1e-15);
  }
}

TEST_CASE("different seeds give close but distinct cutoffs") {
  SimulationConfig c = small_config(2.0, 100, SupportSpec::unbounded());
  const std::vector<double> first = run_simulation(c);
  c.base_seed = 2025;
  const std::vector<double> second = run_simulation(c);
  CHECK(first != second);
  CHECK(std::abs(first[0] - second[0]) < 0.01);
}

TEST_CASE("a single-cell table matches the direct simulation") {
  const SimulationConfig c = small_config(1.25, 40, SupportSpec::unbounded());
  int calls = 0;
  const CutoffTable table =
      build_table({{40}, {1.25}}, c, [&](const CutoffRow&) { ++calls; });
  CHECK(calls == 1);
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0].cutoffs == run_simulation(c));
  CHECK(table.replicates == c.replicates);
  CHECK(table.seed == c.base_seed);
}

TEST_CASE("table rows are gamma-major and structurally monotone") {
  SimulationConfig c = small_config(1.0, 10);
  c.replicates = 2000;
  const CutoffTable table = build_table({{10, 100, 1000}, {1.0, 3.0}}, c);
  REQUIRE(table.rows.size() == 6);
  CHECK(table.rows[0].gamma == 1.0);
  CHECK(table.rows[2].n == 1000);
  CHECK(table.rows[3].gamma == 3.0);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& cut = table.rows[r].cutoffs;
    CHECK(std::is_sorted(cut.begin(), cut.end()));
    if (table.rows[r].n != 10) {
      CHECK(cut[0] < table.rows[r - 1].cutoffs[0]);
    }
  }
  CHECK(table.lookup(3.0, 100, 0.95) == table.rows[4].cutoffs[1]);
  CHECK_THROWS_AS(table.lookup(2.0, 100, 0.95), std::out_of_range);
  CHECK_THROWS_AS(table.lookup(3.0, 100, 0.5), std::out_of_range);
  CHECK(table.find(3.004, 100) == &table.rows[4]);
  CHECK(table.find(3.006, 100) == nullptr);
}

TEST_CASE("cutoffs fall with gamma on unbounded support") {
  SimulationConfig c = small_config(1.5, 100, SupportSpec::unbounded());
  c.replicates = 10000;
  const CutoffTable table = build_table({{100}, {1.5, 2.5, 4.0}}, c);
  CHECK(table.rows[0].cutoffs[0] > table.rows[1].cutoffs[0]);
  CHECK(table.rows[1].cutoffs[0] > table.rows[2].cutoffs[0]);
}

TEST_CASE("replicates without a root are retried on a second stream") {
  // n = 2 on K = 2: the draw {2, 2} has no estimate.
  SimulationConfig c = small_config(1.0, 2, SupportSpec::finite(2));
  const ZipfSampler sampler(ZipfModel(1.0, c.support));
  auto draw = [&](std::int64_t stream_index) {
    RandomStream stream(c.base_seed, 0, static_cast<std::uint64_t>(stream_index));
    std::vector<std::int64_t> v(2);
    sampler.fill(v, stream);
    return v;
  };
  std::int64_t index = 0;
  while (draw(index) != std::vector<std::int64_t>{2, 2} ||
         draw(index + (std::int64_t{1} << 32)) ==
             std::vector<std::int64_t>{2, 2}) {
    ++index;
  }
  REQUIRE(index < c.replicates);
  const Sample retry(draw(index + (std::int64_t{1} << 32)));
  const ReplicateOutcome expected =
      fit_and_test(retry, c.support, c.mle, LogTable(2));
  const ReplicateOutcome got = run_replicate(c, index);
  CHECK(got.ks == expected.ks);
  CHECK(got.gamma_hat == expected.gamma_hat);
  CHECK(got.replicate_index == index);

  // n = 1 on K = 2 never has a root: every replicate fails twice.
  SimulationConfig hopeless = small_config(1.0, 1, SupportSpec::finite(2));
  CHECK_THROWS_AS(run_replicate(hopeless, 0), SimulationError);
  CHECK_THROWS_AS(run_simulation(hopeless), SimulationError);
  CHECK_THROWS_AS(build_table({{1}, {1.0}}, hopeless), SimulationError);
}

TEST_CASE("configuration validation") {
  CHECK_NOTHROW(small_config(1.0, 10).validate());
  auto check_rejected = [](auto mutate) {
    SimulationConfig c = small_config(1.0, 10);
    mutate(c);
    CHECK_THROWS(c.validate());
    CHECK_THROWS(Simulator{c});
  };
  check_rejected([](SimulationConfig& c) { c.n = 0; });
  check_rejected([](SimulationConfig& c) { c.replicates = 99; });
  check_rejected([](SimulationConfig& c) { c.repetitions = 0; });
  check_rejected([](SimulationConfig& c) { c.quantiles = {}; });
  check_rejected([](SimulationConfig& c) { c.quantiles = {0.99, 0.9}; });
  check_rejected([](SimulationConfig& c) { c.gamma = std::nan(""); });
  check_rejected([](SimulationConfig& c) {
    c.support = SupportSpec::unbounded();
    c.gamma = 1.0;
  });
  check_rejected([](SimulationConfig& c) {
    c.support = SupportSpec::unbounded();
    c.gamma = 2.0;
    c.sampling_horizon = 1;
  });
  check_rejected([](SimulationConfig& c) { c.mle.absolute_tolerance = -1.0; });

  // Negative exponents are valid generating models on finite support.
  SimulationConfig negative = small_config(-0.5, 10);
  CHECK_NOTHROW(negative.validate());
}
