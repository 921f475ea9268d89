#include <cmath>
#include <numeric>

#include "crossfire/network_sim.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace crossfire;
using namespace crossfire::sim;
using agent::ControllerKind;

namespace {

SimConfig small(int horizon, std::uint64_t seed = 42) {
  SimConfig c;
  c.horizon = horizon;
  c.seed = seed;
  return c;
}

double window_mean(const RunResult& r, int first, int last) {  // 1-based, inclusive
  double s = 0.0;
  for (int k = first; k <= last; ++k) s += r.cycles[static_cast<std::size_t>(k - 1)].network_delay;
  return s / (last - first + 1);
}

// Frozen once from this implementation: fixed_time(60), seed 42, 1000 cycles, defaults.
constexpr double kGoldenFixedDelay = 0x1.13383387bd70dp+5;  // 34.402442036122103 s

}  // namespace

TEST_CASE("star topology") {
  const auto t = Topology::star();
  REQUIRE(t.size() == 5);
  CHECK(t.neighbors(0) == std::vector<std::size_t>{1, 2, 3, 4});
  for (std::size_t i = 1; i < 5; ++i) CHECK(t.neighbors(i) == std::vector<std::size_t>{0});
  CHECK(t.edges().size() == 4);
  CHECK_THROWS_AS(Topology::from_edges(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Topology::from_edges(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Topology::from_edges(3, {{0, 3}}), std::invalid_argument);
}

TEST_CASE("config validation") {
  auto c = small(0);
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = small(10);
  c.capacity = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK_NOTHROW(small(1).validate());
}

TEST_CASE("volume generation") {
  Rng rng(42);
  double sum = 0.0;
  const int draws = 100000;
  int taken = 0;
  while (taken < draws) {
    for (const auto& v : generate_volumes(rng, 5, 0, 3500)) {
      REQUIRE(v.ns >= 0);
      REQUIRE(v.ns <= 3500);
      REQUIRE(v.we >= 0);
      REQUIRE(v.we <= 3500);
      sum += v.ns;
      ++taken;
    }
  }
  const double mean = sum / taken;
  CHECK(std::abs(mean - 1750.0) <= 35.0);

  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) {
    const auto x = generate_volumes(a, 5, 0, 3500), y = generate_volumes(b, 5, 0, 3500);
    for (std::size_t k = 0; k < 5; ++k) {
      REQUIRE(x[k].ns == y[k].ns);
      REQUIRE(x[k].we == y[k].we);
    }
  }
}

TEST_CASE("empty network") {
  auto c = small(5);
  c.volume_max = 0;
  const auto models = default_models(c);
  const double r00 = models->reward(0, 0);
  for (auto k : {ControllerKind::fixed_time, ControllerKind::fuzzy, ControllerKind::game_fql}) {
    const auto r = run(c, {{k}}, models);
    for (const auto& cyc : r.cycles) {
      CHECK(cyc.network_delay == 0.0);
      for (const auto& n : cyc.nodes) {
        CHECK(n.delay == 0.0);
        CHECK(n.reward == r00);
      }
    }
  }
}

TEST_CASE("fixed-time network leaves learner state untouched") {
  Network net(small(20), {{ControllerKind::fixed_time}}, default_models(small(20)));
  for (int i = 0; i < 20; ++i) {
    const auto rec = net.step_cycle();
    for (const auto& n : rec.nodes) CHECK(n.green_ns == 60.0);
  }
  for (const auto& a : net.agents()) {
    CHECK(a.update_count() == 0);
    CHECK_FALSE(a.learns());
  }
}

TEST_CASE("single intersection matches a hand trace") {
  SimConfig c = small(3, 17);
  c.topology = Topology::from_edges(1, {});
  const auto models = default_models(c);
  Network net(c, {{ControllerKind::fuzzy_q_learning}}, models);

  Rng vol = Rng::derive(17, 0);
  agent::Agent twin({ControllerKind::fuzzy_q_learning}, models, Rng::derive(17, 1));
  double ns = static_cast<double>(vol.uniform_int(0, 3500));
  double we = static_cast<double>(vol.uniform_int(0, 3500));
  double delay_sum = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const auto rec = net.step_cycle();
    const auto sched = twin.decide(ns, we);
    const double g = sched.green_ns();
    const double d_ns = oracle::hcm_delay(100, g / 100, ns / 3500);
    const double d_we = oracle::hcm_delay(100, (100 - g) / 100, we / 3500);
    const double d = ns + we > 0 ? (d_ns * ns + d_we * we) / (ns + we) : 0.0;
    const double next_ns = static_cast<double>(vol.uniform_int(0, 3500));
    const double next_we = static_cast<double>(vol.uniform_int(0, 3500));
    const auto out = twin.learn_step(d, {}, next_ns, next_we);
    delay_sum += d;

    REQUIRE(rec.cycle == k);
    REQUIRE(rec.nodes.size() == 1);
    const auto& n = rec.nodes[0];
    CHECK(n.volumes.ns == ns);
    CHECK(n.volumes.we == we);
    CHECK(n.green_ns == g);
    CHECK(n.delay == doctest::Approx(d).epsilon(1e-12));
    CHECK(n.reward == doctest::Approx(out.own_reward).epsilon(1e-12));
    CHECK(n.received.empty());
    CHECK(rec.network_delay == doctest::Approx(d).epsilon(1e-12));
    CHECK(rec.running_mean == doctest::Approx(delay_sum / k).epsilon(1e-12));
    ns = next_ns;
    we = next_we;
  }
  const auto* a = net.agents()[0].rule_base();
  const auto* b = twin.rule_base();
  for (std::size_t i = 0; i < a->rule_count(); ++i)
    for (std::size_t j = 0; j < a->action_count(); ++j) CHECK(a->q(i, j) == doctest::Approx(b->q(i, j)).epsilon(1e-12));
}

TEST_CASE("run shape and determinism") {
  const auto one = run(small(1), {{ControllerKind::fuzzy}}, default_models(small(1)));
  CHECK(one.cycles.size() == 1);
  CHECK(one.total_average_delay == one.cycles[0].network_delay);

  const auto c = small(200, 7);
  const auto a = run(c, {{ControllerKind::game_fql}}, default_models(c));
  const auto b = run(c, {{ControllerKind::game_fql}}, default_models(c));
  CHECK(a.total_average_delay == b.total_average_delay);
  CHECK(a.volume_hash == b.volume_hash);
  CHECK(a.delay_series() == b.delay_series());
  for (std::size_t k = 0; k < a.cycles.size(); ++k) {
    for (std::size_t i = 0; i < 5; ++i) {
      REQUIRE(a.cycles[k].nodes[i].green_ns == b.cycles[k].nodes[i].green_ns);
      REQUIRE(a.cycles[k].nodes[i].reward == b.cycles[k].nodes[i].reward);
    }
  }
}

TEST_CASE("volume stream does not depend on the controller") {
  const auto c = small(100, 3);
  const auto models = default_models(c);
  const auto h = run(c, {{ControllerKind::fixed_time}}, models).volume_hash;
  for (auto k : {ControllerKind::fuzzy, ControllerKind::q_learning, ControllerKind::fuzzy_q_learning,
                 ControllerKind::game_fql}) {
    CHECK(run(c, {{k}}, models).volume_hash == h);
  }
  CHECK(run(small(100, 4), {{ControllerKind::fixed_time}}, models).volume_hash != h);
}

TEST_CASE("golden fixed-time delay") {
  const auto c = small(1000, 42);
  const auto r = run(c, {{ControllerKind::fixed_time, 60.0}}, default_models(c));
  CHECK(r.total_average_delay == kGoldenFixedDelay);
}

TEST_CASE("cycle structure and exchange counts") {
  const auto c = small(50);
  Network net(c, {{ControllerKind::game_fql}}, default_models(c));
  for (int k = 0; k < 50; ++k) {
    const auto rec = net.step_cycle();
    double weighted = 0.0, vol = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      const auto& n = rec.nodes[i];
      REQUIRE(n.green_ns >= 20.0);
      REQUIRE(n.green_ns <= 80.0);
      REQUIRE(n.reward >= -3.0);
      REQUIRE(n.reward <= 3.0);
      REQUIRE(n.received.size() == (i == 0 ? 4u : 1u));
      for (const auto& ex : n.received) {
        REQUIRE(ex.weight.has_value());
        REQUIRE(*ex.weight >= 0.0);
        REQUIRE(*ex.weight <= 1.0);
        REQUIRE(ex.reward == rec.nodes[ex.neighbor].reward);
      }
      weighted += n.delay * (n.volumes.ns + n.volumes.we);
      vol += n.volumes.ns + n.volumes.we;
    }
    // each node emits one exchange per neighbor
    std::vector<int> emitted(5, 0);
    for (const auto& n : rec.nodes)
      for (const auto& ex : n.received) ++emitted[ex.neighbor];
    CHECK(emitted == std::vector<int>{4, 1, 1, 1, 1});
    CHECK(rec.network_delay == doctest::Approx(weighted / vol).epsilon(1e-12));
  }
}

TEST_CASE("game FQL with exchanges disabled reproduces FQL") {
  const auto c = small(300, 11);
  const auto models = default_models(c);
  const auto g = run(c, {{ControllerKind::game_fql}}, models, false);
  const auto f = run(c, {{ControllerKind::fuzzy_q_learning}}, models);
  CHECK(g.total_average_delay == f.total_average_delay);
  for (std::size_t k = 0; k < g.cycles.size(); ++k)
    for (std::size_t i = 0; i < 5; ++i) REQUIRE(g.cycles[k].nodes[i].green_ns == f.cycles[k].nodes[i].green_ns);
}

TEST_CASE("learning trend: late game FQL delay does not exceed early delay") {
  for (std::uint64_t seed = 42; seed < 47; ++seed) {
    const auto c = small(1000, seed);
    const auto r = run(c, {{ControllerKind::game_fql}}, default_models(c));
    const double early = window_mean(r, 1, 100);
    const double late = window_mean(r, 900, 1000);
    CAPTURE(seed);
    CHECK(late <= early);
  }
}

TEST_CASE("per-node controller assignment") {
  const auto c = small(10);
  std::vector<agent::ControllerSpec> mixed{{ControllerKind::fixed_time, 40.0},
                                           {ControllerKind::fuzzy},
                                           {ControllerKind::q_learning},
                                           {ControllerKind::fuzzy_q_learning},
                                           {ControllerKind::game_fql}};
  const auto r = run(c, mixed, default_models(c));
  for (const auto& cyc : r.cycles) CHECK(cyc.nodes[0].green_ns == 40.0);
  CHECK_THROWS_AS(run(c, {{ControllerKind::fuzzy}, {ControllerKind::fuzzy}}, default_models(c)), std::invalid_argument);
}
