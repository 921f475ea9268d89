#include <algorithm>
#include <filesystem>
#include <string>

#include "crossfire/experiment.hpp"
#include "doctest.h"

using namespace crossfire;
using namespace crossfire::experiment;
using agent::ControllerKind;

namespace {

std::string config_error_where(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.where();
  }
  return "<no error>";
}

std::size_t count(const std::string& hay, std::string_view needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

ExperimentConfig tiny(std::vector<ControllerKind> kinds, std::vector<std::uint64_t> seeds, int horizon) {
  ExperimentConfig cfg;
  for (auto k : kinds) cfg.roster.push_back({k});
  cfg.seeds = std::move(seeds);
  cfg.sim.horizon = horizon;
  cfg.models = sim::default_models(cfg.sim);
  return cfg;
}

}  // namespace

TEST_CASE("empty config takes defaults") {
  const auto cfg = parse_config("{}");
  CHECK(cfg.sim.cycle == 100.0);
  CHECK(cfg.sim.capacity == 3500.0);
  CHECK(cfg.sim.horizon == 1000);
  CHECK(cfg.sim.topology.size() == 5);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{42, 43, 44, 45, 46});
  REQUIRE(cfg.roster.size() == 5);
  CHECK(cfg.roster.front().kind == ControllerKind::fixed_time);
  CHECK(cfg.roster.front().fixed_green == 60.0);
  CHECK(cfg.roster.back().kind == ControllerKind::game_fql);
  REQUIRE(cfg.models);
  CHECK(cfg.models->learner.alpha == 0.5);
  CHECK(cfg.models->learner.gamma == 0.7);
  CHECK(cfg.charts);
}

TEST_CASE("config overrides") {
  const auto cfg = parse_config(R"({
    "simulation": {"horizon": 12, "topology": {"nodes": 3, "edges": [[0, 1], [1, 2]]}},
    "controllers": ["gfql", "fixed"],
    "fixed_green_s": 55,
    "seeds": [7],
    "learning": {"update_form": "literal", "epsilon": 0.2, "candidate_actions": [30, 50, 70]}
  })");
  CHECK(cfg.sim.horizon == 12);
  CHECK(cfg.sim.topology.neighbors(1) == std::vector<std::size_t>{0, 2});
  REQUIRE(cfg.roster.size() == 2);
  CHECK(cfg.roster[0].kind == ControllerKind::game_fql);
  CHECK(cfg.roster[1].fixed_green == 55.0);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{7});
  CHECK(cfg.models->learner.form == learning::UpdateForm::literal);
  CHECK(cfg.models->learner.epsilon == 0.2);
  CHECK(cfg.models->learner.candidate_actions == std::vector<double>{30, 50, 70});
}

TEST_CASE("config errors name the field") {
  CHECK(config_error_where(R"({"learning": {"alpha": 1.5}})") == "learning.alpha");
  CHECK(config_error_where(R"({"simulation": {"horizon": 0}})") == "simulation.horizon");
  CHECK(config_error_where(R"({"simulation": {"horzion": 10}})") == "simulation.horzion");
  CHECK(config_error_where(R"({"controllers": ["fixed", "adaptive"]})") == "controllers[1]");
  CHECK(config_error_where(R"({"controllers": []})") == "controllers");
  CHECK(config_error_where(R"({"seeds": [-1]})") == "seeds[0]");
  CHECK(config_error_where(R"({"learning": {"candidate_actions": [10, 50]}})") == "learning.candidate_actions[0]");
  CHECK(config_error_where(R"({"learning": {"update_form": "textbook"}})") == "learning.update_form");
  CHECK(config_error_where(R"({"fixed_green_s": 100})") == "fixed_green_s");
  CHECK(config_error_where(R"([1, 2])") == "<root>");
}

TEST_CASE("malformed JSON reports line and column") {
  const auto where = config_error_where("{\n  \"seeds\": [42,\n}\n");
  CHECK(where.rfind("line 3, column", 0) == 0);
}

TEST_CASE("fuzzy overrides are validated") {
  SUBCASE("unknown term in a rule") {
    const auto where = config_error_where(R"({"fuzzy": {"reward": {
      "inputs": [
        {"name": "volume", "universe": [0, 3500], "terms": [{"label": "any", "shape": "trapezoidal", "params": [0, 0, 3500, 3500]}]},
        {"name": "delay", "universe": [0, 120], "terms": [{"label": "any", "shape": "trapezoidal", "params": [0, 0, 120, 120]}]}],
      "output": {"name": "reward", "universe": [-3, 3], "terms": [{"label": "zero", "shape": "triangular", "params": [-3, 0, 3]}]},
      "rules": [{"if": {"volume": "any", "delay": "huge"}, "then": "zero"}]}}})");
    CHECK(where.rfind("fuzzy.reward", 0) == 0);
  }
  SUBCASE("bad membership ordering") {
    const auto where = config_error_where(R"({"fuzzy": {"weight": {
      "inputs": [],
      "output": {"name": "weight", "universe": [0, 1], "terms": [{"label": "x", "shape": "triangular", "params": [1, 0.5, 0]}]},
      "rules": []}}})");
    CHECK(where.rfind("fuzzy.weight", 0) == 0);
  }
}

TEST_CASE("default config document round-trips") {
  const auto text = default_config_json();
  const auto cfg = parse_config(text);
  CHECK(cfg.roster.size() == 5);
  CHECK(cfg.seeds.size() == 5);
  CHECK(default_config_json() == text);
  // The parsed models reproduce the shipped defaults exactly.
  const auto shipped = agent::AgentModels::defaults();
  for (double v = 0; v <= 3500; v += 250) {
    CHECK(learning::evaluate_clamped(cfg.models->green_fis, {{"v_ns", v}, {"v_we", 3500 - v}}) ==
          learning::evaluate_clamped(shipped.green_fis, {{"v_ns", v}, {"v_we", 3500 - v}}));
    CHECK(cfg.models->reward(v, v / 30) == shipped.reward(v, v / 30));
    CHECK(cfg.models->weight(30, 70, v) == shipped.weight(30, 70, v));
  }
}

TEST_CASE("controller list") {
  const auto k = parse_controller_list("fixed,gfql");
  CHECK(k == std::vector<ControllerKind>{ControllerKind::fixed_time, ControllerKind::game_fql});
  CHECK_THROWS_AS(parse_controller_list("fixed,,ql"), ConfigError);
  CHECK_THROWS_AS(parse_controller_list("ql,ql"), ConfigError);
}

TEST_CASE("cycle CSV formatting") {
  CycleRow row{1, 0, 1750, 1750, 50.0, 15.89, -0.25, "fixed", 42};
  const auto csv = format_cycles_csv({row});
  CHECK(csv == std::string(kCycleCsvHeader) + "\n1,0,1750,1750,50.000000,15.890000,-0.250000,fixed,42\n");
  CHECK(csv.find('\r') == std::string::npos);
  row.reward = -1e-9;
  CHECK(format_cycles_csv({row}).find(",0.000000,fixed") != std::string::npos);
}

TEST_CASE("experiment shape, pairing and CSV round trip") {
  const auto cfg = tiny({ControllerKind::fixed_time}, {42}, 10);
  const auto res = run_experiment(cfg, 2);
  const auto rows = cycle_rows(res.runs);
  CHECK(rows.size() == 50);
  const auto csv = format_cycles_csv(rows);
  CHECK(count(csv, "\n") == 51);

  const auto back = parse_cycles_csv(csv);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].cycle == rows[i].cycle);
    CHECK(back[i].intersection == rows[i].intersection);
    CHECK(back[i].v_ns == rows[i].v_ns);
    CHECK(back[i].v_we == rows[i].v_we);
    CHECK(std::abs(back[i].tg_ns - rows[i].tg_ns) <= 5e-7);
    CHECK(std::abs(back[i].delay_s - rows[i].delay_s) <= 5e-7);
    CHECK(std::abs(back[i].reward - rows[i].reward) <= 5e-7);
    CHECK(back[i].controller == rows[i].controller);
    CHECK(back[i].seed == rows[i].seed);
  }
  CHECK(format_cycles_csv(back) == csv);
  CHECK_THROWS_AS(parse_cycles_csv("nonsense\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles_csv(std::string(kCycleCsvHeader) + "\n1,0,x,1,1,1,1,fixed,42\n"),
                  std::invalid_argument);
}

TEST_CASE("full roster is paired and ordered") {
  const auto cfg = tiny({ControllerKind::fixed_time, ControllerKind::fuzzy, ControllerKind::q_learning,
                         ControllerKind::fuzzy_q_learning, ControllerKind::game_fql},
                        {42, 43}, 30);
  const auto res = run_experiment(cfg, 4);
  REQUIRE(res.runs.size() == 10);
  for (std::size_t i = 0; i < res.runs.size(); ++i) {
    CHECK(res.runs[i].controller.kind == cfg.roster[i / 2].kind);
    CHECK(res.runs[i].seed == cfg.seeds[i % 2]);
    CHECK(res.runs[i].result.volume_hash == res.runs[i % 2].result.volume_hash);
  }
  const auto& s = res.summary;
  REQUIRE(s.controllers.size() == 5);
  for (const auto& cs : s.controllers) {
    CHECK(cs.series.size() == 30);
    CHECK(cs.per_seed_delay.size() == 2);
    REQUIRE(cs.reduction_vs_fixed_pct.has_value());
    CHECK(cs.total_average_delay == doctest::Approx((cs.per_seed_delay[0] + cs.per_seed_delay[1]) / 2));
  }
  CHECK(*s.controllers[0].reduction_vs_fixed_pct == 0.0);
  const double fixed = s.controllers[0].total_average_delay;
  const auto& g = s.controllers[4];
  CHECK(*g.reduction_vs_fixed_pct == doctest::Approx(100.0 * (fixed - g.total_average_delay) / fixed));

  // one worker and many workers agree
  const auto serial = run_experiment(cfg, 1);
  CHECK(format_cycles_csv(cycle_rows(serial.runs)) == format_cycles_csv(cycle_rows(res.runs)));
  CHECK(format_summary_csv(serial.summary) == format_summary_csv(res.summary));

  const auto summary_csv = format_summary_csv(s);
  CHECK(summary_csv.rfind(std::string(kSummaryCsvHeader) + "\n", 0) == 0);
  CHECK(count(summary_csv, "\n") == 1 + 5 * 3);
  CHECK(count(summary_csv, ",mean,") == 5);

  const auto table = format_summary_table(s);
  for (auto name : {"fixed", "fuzzy", "ql", "fql", "gfql"}) CHECK(table.find(name) != std::string::npos);
}

TEST_CASE("summary without a fixed-time baseline has no reduction") {
  const auto res = run_experiment(tiny({ControllerKind::fuzzy}, {1}, 5), 1);
  CHECK_FALSE(res.summary.controllers[0].reduction_vs_fixed_pct.has_value());
  CHECK(format_summary_csv(res.summary).find("fuzzy,1,") != std::string::npos);
}

TEST_CASE("rolling mean") {
  const std::vector<double> c(200, 27.123456789);
  for (double v : rolling_mean(c, 25)) CHECK(v == 27.123456789);
  const auto r = rolling_mean({1, 2, 3, 4}, 2);
  CHECK(r == std::vector<double>{1.0, 1.5, 2.5, 3.5});
  CHECK(rolling_mean({}, 25).empty());
  CHECK_THROWS_AS(rolling_mean({1.0}, 0), std::invalid_argument);
}

TEST_CASE("charts") {
  SUBCASE("single controller") {
    const auto res = run_experiment(tiny({ControllerKind::fuzzy}, {42}, 20), 1);
    CHECK(count(delay_series_svg(res.summary), "<polyline") == 1);
    CHECK(count(delay_bars_svg(res.summary), "<rect x=") == 1);
  }
  SUBCASE("five controllers keep roster order") {
    const auto res = run_experiment(tiny({ControllerKind::game_fql, ControllerKind::fixed_time, ControllerKind::fuzzy,
                                          ControllerKind::q_learning, ControllerKind::fuzzy_q_learning},
                                         {42}, 20),
                                    2);
    const auto svg = delay_series_svg(res.summary);
    CHECK(count(svg, "<polyline") == 5);
    std::vector<std::size_t> pos;
    for (auto name : {">gfql<", ">fixed<", ">fuzzy<", ">ql<", ">fql<"}) pos.push_back(svg.find(name));
    CHECK(std::is_sorted(pos.begin(), pos.end()));
    CHECK(pos.back() != std::string::npos);
    CHECK(svg == delay_series_svg(res.summary));
    CHECK(count(delay_bars_svg(res.summary), "<rect x=") == 5);
  }
}

TEST_CASE("artifacts on disk") {
  const auto dir = std::filesystem::temp_directory_path() / "crossfire_test_artifacts";
  std::filesystem::remove_all(dir);
  const auto res = run_experiment(tiny({ControllerKind::fixed_time}, {42}, 3), 1);
  write_artifacts(res, dir, false);
  CHECK(std::filesystem::exists(dir / "cycles.csv"));
  CHECK(std::filesystem::exists(dir / "summary.csv"));
  CHECK_FALSE(std::filesystem::exists(dir / "delay_series.svg"));
  write_artifacts(res, dir, true);
  CHECK(std::filesystem::exists(dir / "delay_series.svg"));
  CHECK(std::filesystem::exists(dir / "delay_bars.svg"));
  CHECK_THROWS_AS(write_artifacts(res, dir / "cycles.csv" / "sub", false), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("missing config file is an I/O error") {
  CHECK_THROWS_AS(load_config("/nonexistent/crossfire.json"), IoError);
}
