#include "crossfire/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "crossfire/fis_tables.hpp"
#include "json.hpp"

namespace crossfire::experiment {

using nlohmann::json;

namespace {

std::string join(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }
std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

void require_object(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(join(path, key), "unknown field");
    }
  }
}

double get_number(const json& obj, const std::string& path, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(join(path, key), "expected a number");
  return v.get<double>();
}

long long get_integer(const json& obj, const std::string& path, const char* key, long long fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(join(path, key), "expected an integer");
  return v.get<long long>();
}

std::string get_string(const json& obj, const std::string& path, const char* key, std::string fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(join(path, key), "expected a string");
  return v.get<std::string>();
}

void check_range(double v, double lo, double hi, const std::string& path) {
  if (!(v >= lo && v <= hi)) {
    std::ostringstream os;
    os << "must lie in [" << lo << ", " << hi << "], got " << v;
    throw ConfigError(path, os.str());
  }
}

// ---- fuzzy definitions ----

fuzzy::LinguisticVariable parse_variable(const json& j, const std::string& path) {
  require_object(j, path, {"name", "universe", "terms"});
  const std::string name = get_string(j, path, "name", "");
  if (name.empty()) throw ConfigError(join(path, "name"), "required");
  if (!j.contains("universe") || !j["universe"].is_array() || j["universe"].size() != 2 ||
      !j["universe"][0].is_number() || !j["universe"][1].is_number()) {
    throw ConfigError(join(path, "universe"), "expected [lo, hi]");
  }
  if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty()) {
    throw ConfigError(join(path, "terms"), "expected a non-empty array");
  }
  std::vector<fuzzy::Term> terms;
  for (std::size_t i = 0; i < j["terms"].size(); ++i) {
    const auto& t = j["terms"][i];
    const std::string tp = index_path(join(path, "terms"), i);
    require_object(t, tp, {"label", "shape", "params"});
    const std::string label = get_string(t, tp, "label", "");
    if (label.empty()) throw ConfigError(join(tp, "label"), "required");
    const std::string shape = get_string(t, tp, "shape", "");
    if (!t.contains("params") || !t["params"].is_array()) throw ConfigError(join(tp, "params"), "expected an array");
    std::vector<double> p;
    for (const auto& x : t["params"]) {
      if (!x.is_number()) throw ConfigError(join(tp, "params"), "expected numbers");
      p.push_back(x.get<double>());
    }
    try {
      if (shape == "triangular" && p.size() == 3) {
        terms.push_back({label, fuzzy::MembershipFunction::triangular(p[0], p[1], p[2])});
      } else if (shape == "trapezoidal" && p.size() == 4) {
        terms.push_back({label, fuzzy::MembershipFunction::trapezoidal(p[0], p[1], p[2], p[3])});
      } else {
        throw ConfigError(tp, "shape must be triangular with 3 params or trapezoidal with 4");
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(tp, e.what());
    }
  }
  try {
    return fuzzy::LinguisticVariable(name, j["universe"][0].get<double>(), j["universe"][1].get<double>(),
                                     std::move(terms));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

fuzzy::FuzzyInferenceSystem parse_fis(const json& j, const std::string& path,
                                      const std::vector<std::string>& expected_inputs) {
  require_object(j, path, {"inputs", "output", "rules"});
  if (!j.contains("inputs") || !j["inputs"].is_array()) throw ConfigError(join(path, "inputs"), "expected an array");
  if (!j.contains("output")) throw ConfigError(join(path, "output"), "required");
  if (!j.contains("rules") || !j["rules"].is_array()) throw ConfigError(join(path, "rules"), "expected an array");

  std::vector<fuzzy::LinguisticVariable> inputs;
  for (std::size_t i = 0; i < j["inputs"].size(); ++i) {
    inputs.push_back(parse_variable(j["inputs"][i], index_path(join(path, "inputs"), i)));
  }
  std::vector<std::string> names;
  for (const auto& v : inputs) names.push_back(v.name());
  if (names != expected_inputs) {
    std::string want;
    for (const auto& n : expected_inputs) want += (want.empty() ? "" : ", ") + n;
    throw ConfigError(join(path, "inputs"), "expected variables [" + want + "] in that order");
  }
  auto output = parse_variable(j["output"], join(path, "output"));

  std::vector<fuzzy::FuzzyRule> rules;
  for (std::size_t i = 0; i < j["rules"].size(); ++i) {
    const auto& r = j["rules"][i];
    const std::string rp = index_path(join(path, "rules"), i);
    require_object(r, rp, {"if", "then"});
    if (!r.contains("if") || !r["if"].is_object() || r["if"].empty()) {
      throw ConfigError(join(rp, "if"), "expected a non-empty object");
    }
    fuzzy::FuzzyRule rule;
    for (const auto& [var, term] : r["if"].items()) {
      if (!term.is_string()) throw ConfigError(join(join(rp, "if"), var), "expected a term label");
      rule.antecedent.push_back({var, term.get<std::string>()});
    }
    rule.consequent = {output.name(), get_string(r, rp, "then", "")};
    rules.push_back(std::move(rule));
  }
  try {
    return fuzzy::FuzzyInferenceSystem(std::move(inputs), std::move(output), std::move(rules));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

json variable_to_json(const fuzzy::LinguisticVariable& v) {
  json terms = json::array();
  for (const auto& t : v.terms()) {
    json params = t.mf.is_triangular()
                      ? json::array({t.mf.support_lo(), t.mf.core_lo(), t.mf.support_hi()})
                      : json::array({t.mf.support_lo(), t.mf.core_lo(), t.mf.core_hi(), t.mf.support_hi()});
    terms.push_back({{"label", t.label}, {"shape", t.mf.is_triangular() ? "triangular" : "trapezoidal"},
                     {"params", params}});
  }
  return {{"name", v.name()}, {"universe", {v.lo(), v.hi()}}, {"terms", terms}};
}

json fis_to_json(const fuzzy::FuzzyInferenceSystem& fis) {
  json inputs = json::array();
  for (const auto& v : fis.inputs()) inputs.push_back(variable_to_json(v));
  json rules = json::array();
  for (const auto& r : fis.rules()) {
    json cond = json::object();
    for (const auto& c : r.antecedent) cond[c.variable] = c.term;
    rules.push_back({{"if", cond}, {"then", r.consequent.term}});
  }
  return {{"inputs", inputs}, {"output", variable_to_json(fis.output())}, {"rules", rules}};
}

std::string position_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::vector<agent::ControllerKind> parse_controller_list(std::string_view csv) {
  std::vector<agent::ControllerKind> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const auto comma = csv.find(',', pos);
    const auto token = csv.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    auto kind = agent::parse_kind(token);
    if (!kind) throw ConfigError("controllers", "unknown controller '" + std::string(token) + "'");
    if (std::find(out.begin(), out.end(), *kind) != out.end()) {
      throw ConfigError("controllers", "duplicate controller '" + std::string(token) + "'");
    }
    out.push_back(*kind);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

ExperimentConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(position_of(json_text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON");
  }
  require_object(root, "",
                 {"simulation", "controllers", "fixed_green_s", "seeds", "output_dir", "charts", "min_green_s",
                  "learning", "fuzzy"});

  ExperimentConfig cfg;
  auto& sim = cfg.sim;

  if (root.contains("simulation")) {
    const auto& s = root["simulation"];
    const std::string p = "simulation";
    require_object(s, p, {"cycle_s", "capacity_vph", "horizon", "volume_min", "volume_max", "topology"});
    sim.cycle = get_number(s, p, "cycle_s", sim.cycle);
    if (!(sim.cycle > 0.0)) throw ConfigError(join(p, "cycle_s"), "must be positive");
    sim.capacity = get_number(s, p, "capacity_vph", sim.capacity);
    if (!(sim.capacity > 0.0)) throw ConfigError(join(p, "capacity_vph"), "must be positive");
    const auto horizon = get_integer(s, p, "horizon", sim.horizon);
    if (horizon < 1 || horizon > 10'000'000) throw ConfigError(join(p, "horizon"), "must lie in [1, 1e7]");
    sim.horizon = static_cast<int>(horizon);
    const auto vmin = get_integer(s, p, "volume_min", sim.volume_min);
    const auto vmax = get_integer(s, p, "volume_max", sim.volume_max);
    if (vmin < 0 || vmin > vmax || vmax > 1'000'000) {
      throw ConfigError(join(p, "volume_max"), "volume range must satisfy 0 <= volume_min <= volume_max");
    }
    sim.volume_min = static_cast<int>(vmin);
    sim.volume_max = static_cast<int>(vmax);
    if (s.contains("topology")) {
      const auto& t = s["topology"];
      const std::string tp = join(p, "topology");
      require_object(t, tp, {"nodes", "edges"});
      const auto nodes = get_integer(t, tp, "nodes", 5);
      if (nodes < 1 || nodes > 100'000) throw ConfigError(join(tp, "nodes"), "must lie in [1, 100000]");
      if (!t.contains("edges") || !t["edges"].is_array()) throw ConfigError(join(tp, "edges"), "expected an array");
      std::vector<std::pair<std::size_t, std::size_t>> edges;
      for (std::size_t i = 0; i < t["edges"].size(); ++i) {
        const auto& e = t["edges"][i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
          throw ConfigError(index_path(join(tp, "edges"), i), "expected [a, b] node indices");
        }
        edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
      }
      try {
        sim.topology = sim::Topology::from_edges(static_cast<std::size_t>(nodes), edges);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(join(tp, "edges"), e.what());
      }
    }
  }

  const double fixed_green = get_number(root, "", "fixed_green_s", 60.0);
  if (!(fixed_green > 0.0 && fixed_green < sim.cycle)) throw ConfigError("fixed_green_s", "must lie in (0, cycle_s)");

  std::vector<agent::ControllerKind> kinds{agent::ControllerKind::fixed_time, agent::ControllerKind::fuzzy,
                                           agent::ControllerKind::q_learning, agent::ControllerKind::fuzzy_q_learning,
                                           agent::ControllerKind::game_fql};
  if (root.contains("controllers")) {
    const auto& c = root["controllers"];
    if (!c.is_array() || c.empty()) throw ConfigError("controllers", "expected a non-empty array");
    kinds.clear();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c[i].is_string()) throw ConfigError(index_path("controllers", i), "expected a controller name");
      auto k = agent::parse_kind(c[i].get<std::string>());
      if (!k) throw ConfigError(index_path("controllers", i), "unknown controller '" + c[i].get<std::string>() + "'");
      if (std::find(kinds.begin(), kinds.end(), *k) != kinds.end()) {
        throw ConfigError(index_path("controllers", i), "duplicate controller");
      }
      kinds.push_back(*k);
    }
  }
  for (auto k : kinds) cfg.roster.push_back({k, fixed_green});

  if (root.contains("seeds")) {
    const auto& s = root["seeds"];
    if (!s.is_array() || s.empty()) throw ConfigError("seeds", "expected a non-empty array");
    cfg.seeds.clear();
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!s[i].is_number_unsigned()) throw ConfigError(index_path("seeds", i), "expected a nonnegative integer");
      cfg.seeds.push_back(s[i].get<std::uint64_t>());
    }
  }
  cfg.output_dir = get_string(root, "", "output_dir", cfg.output_dir.string());
  if (root.contains("charts")) {
    if (!root["charts"].is_boolean()) throw ConfigError("charts", "expected a boolean");
    cfg.charts = root["charts"].get<bool>();
  }

  auto models = agent::AgentModels::defaults();
  models.cycle = sim.cycle;
  models.volume_max = sim.capacity;
  models.min_green = get_number(root, "", "min_green_s", models.min_green);
  if (!(models.min_green > 0.0 && models.min_green <= 0.5 * sim.cycle)) {
    throw ConfigError("min_green_s", "must lie in (0, cycle_s / 2]");
  }

  if (root.contains("learning")) {
    const auto& l = root["learning"];
    const std::string p = "learning";
    require_object(l, p,
                   {"alpha", "gamma", "eta", "epsilon", "epsilon_decay", "epsilon_floor", "update_form", "volume_bins",
                    "candidate_actions", "convergence_threshold"});
    auto& ls = models.learner;
    ls.alpha = get_number(l, p, "alpha", ls.alpha);
    check_range(ls.alpha, 0, 1, join(p, "alpha"));
    ls.gamma = get_number(l, p, "gamma", ls.gamma);
    check_range(ls.gamma, 0, 1, join(p, "gamma"));
    ls.eta = get_number(l, p, "eta", ls.eta);
    check_range(ls.eta, 0, 1, join(p, "eta"));
    ls.epsilon = get_number(l, p, "epsilon", ls.epsilon);
    check_range(ls.epsilon, 0, 1, join(p, "epsilon"));
    ls.epsilon_decay = get_number(l, p, "epsilon_decay", ls.epsilon_decay);
    check_range(ls.epsilon_decay, 0, 1, join(p, "epsilon_decay"));
    ls.epsilon_floor = get_number(l, p, "epsilon_floor", ls.epsilon_floor);
    check_range(ls.epsilon_floor, 0, 1, join(p, "epsilon_floor"));
    ls.convergence_threshold = get_number(l, p, "convergence_threshold", ls.convergence_threshold);
    if (!(ls.convergence_threshold > 0.0)) throw ConfigError(join(p, "convergence_threshold"), "must be positive");
    const auto form = get_string(l, p, "update_form", "standard");
    if (form == "standard") {
      ls.form = learning::UpdateForm::standard;
    } else if (form == "literal") {
      ls.form = learning::UpdateForm::literal;
    } else {
      throw ConfigError(join(p, "update_form"), "expected \"standard\" or \"literal\"");
    }
    const auto bins = get_integer(l, p, "volume_bins", ls.volume_bins);
    if (bins < 1 || bins > 1000) throw ConfigError(join(p, "volume_bins"), "must lie in [1, 1000]");
    ls.volume_bins = static_cast<int>(bins);
    if (l.contains("candidate_actions")) {
      const auto& a = l["candidate_actions"];
      if (!a.is_array() || a.empty()) throw ConfigError(join(p, "candidate_actions"), "expected a non-empty array");
      ls.candidate_actions.clear();
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_number()) throw ConfigError(index_path(join(p, "candidate_actions"), i), "expected a number");
        ls.candidate_actions.push_back(a[i].get<double>());
      }
    }
  }
  for (std::size_t i = 0; i < models.learner.candidate_actions.size(); ++i) {
    const double a = models.learner.candidate_actions[i];
    if (!(a >= models.min_green && a <= models.max_green())) {
      throw ConfigError(index_path("learning.candidate_actions", i), "must lie in [min_green_s, cycle_s - min_green_s]");
    }
  }

  if (root.contains("fuzzy")) {
    const auto& f = root["fuzzy"];
    require_object(f, "fuzzy", {"green", "reward", "weight", "state_inputs"});
    if (f.contains("green")) models.green_fis = parse_fis(f["green"], "fuzzy.green", {"v_ns", "v_we"});
    try {
      if (f.contains("reward")) {
        models.reward = learning::RewardEvaluator(parse_fis(f["reward"], "fuzzy.reward", {"volume", "delay"}));
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError("fuzzy.reward", e.what());
    }
    try {
      if (f.contains("weight")) {
        models.weight = learning::WeightEvaluator(
            parse_fis(f["weight"], "fuzzy.weight", {"own_green", "neighbor_green", "volume"}));
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError("fuzzy.weight", e.what());
    }
    if (f.contains("state_inputs")) {
      const auto& si = f["state_inputs"];
      if (!si.is_array()) throw ConfigError("fuzzy.state_inputs", "expected an array");
      std::vector<fuzzy::LinguisticVariable> vars;
      for (std::size_t i = 0; i < si.size(); ++i) {
        vars.push_back(parse_variable(si[i], index_path("fuzzy.state_inputs", i)));
      }
      try {
        models.partition = agent::StatePartition(std::move(vars));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("fuzzy.state_inputs", e.what());
      }
    }
  }
  cfg.models = std::make_shared<const agent::AgentModels>(std::move(models));
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string default_config_json() {
  const auto models = agent::AgentModels::defaults();
  const auto& ls = models.learner;
  json state_inputs = json::array();
  for (const auto& v : tables::default_fql_inputs()) state_inputs.push_back(variable_to_json(v));
  const sim::SimConfig sim;
  json edges = json::array();
  for (auto [a, b] : sim.topology.edges()) edges.push_back({a, b});

  json root = {
      {"simulation",
       {{"cycle_s", sim.cycle},
        {"capacity_vph", sim.capacity},
        {"horizon", sim.horizon},
        {"volume_min", sim.volume_min},
        {"volume_max", sim.volume_max},
        {"topology", {{"nodes", sim.topology.size()}, {"edges", edges}}}}},
      {"controllers", {"fixed", "fuzzy", "ql", "fql", "gfql"}},
      {"fixed_green_s", 60.0},
      {"min_green_s", models.min_green},
      {"seeds", {42, 43, 44, 45, 46}},
      {"output_dir", "out"},
      {"charts", true},
      {"learning",
       {{"alpha", ls.alpha},
        {"gamma", ls.gamma},
        {"eta", ls.eta},
        {"epsilon", ls.epsilon},
        {"epsilon_decay", ls.epsilon_decay},
        {"epsilon_floor", ls.epsilon_floor},
        {"update_form", "standard"},
        {"volume_bins", ls.volume_bins},
        {"candidate_actions", ls.candidate_actions},
        {"convergence_threshold", ls.convergence_threshold}}},
      {"fuzzy",
       {{"green", fis_to_json(models.green_fis)},
        {"reward", fis_to_json(models.reward.fis())},
        {"weight", fis_to_json(models.weight.fis())},
        {"state_inputs", state_inputs}}},
  };
  return root.dump(2) + "\n";
}

unsigned default_worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CROSSFIRE_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

ExperimentResult run_experiment(const ExperimentConfig& config, unsigned workers) {
  if (config.roster.empty()) throw ConfigError("controllers", "at least one controller required");
  if (config.seeds.empty()) throw ConfigError("seeds", "at least one seed required");
  const auto models = config.models ? config.models : sim::default_models(config.sim);

  ExperimentResult out;
  for (const auto& c : config.roster) {
    for (auto seed : config.seeds) out.runs.push_back({c, seed, {}});
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(out.runs.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < out.runs.size(); i = next++) {
      try {
        auto sim = config.sim;
        sim.seed = out.runs[i].seed;
        out.runs[i].result = sim::run(sim, {out.runs[i].controller}, models);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const unsigned n = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(out.runs.size()));
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::map<std::uint64_t, std::uint64_t> stream_hash;
  for (const auto& run : out.runs) {
    auto [it, inserted] = stream_hash.emplace(run.seed, run.result.volume_hash);
    if (!inserted && it->second != run.result.volume_hash) {
      throw std::logic_error("controllers saw different volume streams for seed " + std::to_string(run.seed));
    }
  }

  out.summary = summarize(out.runs, config.roster, config.seeds);
  return out;
}

ComparisonSummary summarize(const std::vector<RunRecord>& runs, const std::vector<agent::ControllerSpec>& roster,
                            const std::vector<std::uint64_t>& seeds) {
  ComparisonSummary summary;
  summary.seeds = seeds;
  auto find_run = [&](agent::ControllerKind kind, std::uint64_t seed) -> const RunRecord& {
    for (const auto& r : runs) {
      if (r.controller.kind == kind && r.seed == seed) return r;
    }
    throw std::logic_error("missing run for controller " + std::string(agent::short_name(kind)));
  };

  for (const auto& c : roster) {
    ControllerSummary cs;
    cs.controller = c;
    for (auto seed : seeds) {
      const auto& r = find_run(c.kind, seed);
      cs.per_seed_delay.push_back(r.result.total_average_delay);
      const auto series = r.result.delay_series();
      if (cs.series.empty()) cs.series.assign(series.size(), 0.0);
      if (series.size() != cs.series.size()) throw std::logic_error("series lengths differ across seeds");
      for (std::size_t k = 0; k < series.size(); ++k) cs.series[k] += series[k];
    }
    for (double& v : cs.series) v /= static_cast<double>(seeds.size());
    double sum = 0.0;
    for (double d : cs.per_seed_delay) sum += d;
    cs.total_average_delay = sum / static_cast<double>(seeds.size());
    summary.controllers.push_back(std::move(cs));
  }

  const auto fixed = std::find_if(summary.controllers.begin(), summary.controllers.end(), [](const auto& cs) {
    return cs.controller.kind == agent::ControllerKind::fixed_time;
  });
  for (auto& cs : summary.controllers) {
    cs.per_seed_reduction_pct.assign(seeds.size(), std::nullopt);
    if (fixed == summary.controllers.end()) continue;
    auto reduction = [](double base, double v) -> std::optional<double> {
      if (!(base > 0.0)) return std::nullopt;
      return 100.0 * (base - v) / base;
    };
    cs.reduction_vs_fixed_pct = reduction(fixed->total_average_delay, cs.total_average_delay);
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      cs.per_seed_reduction_pct[s] = reduction(fixed->per_seed_delay[s], cs.per_seed_delay[s]);
    }
  }
  return summary;
}

}  // namespace crossfire::experiment
