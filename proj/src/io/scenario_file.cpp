#include "hotlane/io/scenario_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/core.h>
#include <fmt/ranges.h>
#include <yaml-cpp/yaml.h>

namespace hotlane::io {

namespace {

// Reports keys outside the allowed set, so typos do not silently fall back to defaults.
void reject_unknown(const YAML::Node& node, const std::string& where, std::initializer_list<const char*> allowed) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!ok.count(key)) throw SchemaError(fmt::format("{}: unknown key '{}'", where, key));
  }
}

YAML::Node require_map(const YAML::Node& parent, const char* key, const std::string& where) {
  const auto node = parent[key];
  if (!node) throw SchemaError(fmt::format("{}: missing '{}'", where, key));
  if (!node.IsMap()) throw SchemaError(fmt::format("{}.{}: expected a mapping", where, key));
  return node;
}

template <typename T>
T scalar(const YAML::Node& parent, const char* key, const std::string& where) {
  const auto node = parent[key];
  if (!node) throw SchemaError(fmt::format("{}: missing '{}'", where, key));
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw SchemaError(fmt::format("{}.{}: cannot read '{}' as the expected type", where, key, YAML::Dump(node)));
  }
}

template <typename T>
T scalar_or(const YAML::Node& parent, const char* key, const std::string& where, T fallback) {
  return parent[key] ? scalar<T>(parent, key, where) : fallback;
}

std::vector<double> number_list(const YAML::Node& parent, const char* key, const std::string& where) {
  const auto node = parent[key];
  if (!node || !node.IsSequence()) throw SchemaError(fmt::format("{}: '{}' must be a list of numbers", where, key));
  try {
    return node.as<std::vector<double>>();
  } catch (const YAML::Exception&) {
    throw SchemaError(fmt::format("{}.{}: list entries must be numbers", where, key));
  }
}

DemandSpec parse_demand(const YAML::Node& node) {
  const std::string where = "demand";
  const auto type = scalar<std::string>(node, "type", where);
  if (type == "constant") {
    reject_unknown(node, where, {"type", "q1", "q2"});
    return ConstantDemand{scalar<double>(node, "q1", where), scalar<double>(node, "q2", where)};
  }
  if (type == "poisson") {
    reject_unknown(node, where, {"type", "mean1", "mean2", "resample_every"});
    return PoissonDemand{scalar<double>(node, "mean1", where), scalar<double>(node, "mean2", where),
                         scalar_or<double>(node, "resample_every", where, 1.0)};
  }
  throw SchemaError(fmt::format("demand.type: expected 'constant' or 'poisson', got '{}'", type));
}

VotDistributionSpec parse_distribution(const YAML::Node& node) {
  const std::string where = "choice_model.distribution";
  const auto type = scalar<std::string>(node, "type", where);
  if (type == "exponential") {
    reject_unknown(node, where, {"type", "rate"});
    return ExponentialVotSpec{scalar<double>(node, "rate", where)};
  }
  if (type == "burr") {
    reject_unknown(node, where, {"type", "pi_star", "gamma"});
    return BurrVotSpec{scalar<double>(node, "pi_star", where), scalar<double>(node, "gamma", where)};
  }
  throw SchemaError(fmt::format("{}.type: expected 'exponential' or 'burr', got '{}'", where, type));
}

ChoiceModelSpec parse_choice_model(const YAML::Node& node) {
  const std::string where = "choice_model";
  const auto type = scalar<std::string>(node, "type", where);
  if (type == "logit") {
    reject_unknown(node, where, {"type", "pi_star", "alpha_star"});
    return LogitSpec{scalar<double>(node, "pi_star", where), scalar<double>(node, "alpha_star", where)};
  }
  if (type == "ue") {
    reject_unknown(node, where, {"type", "distribution"});
    return UeSpec{parse_distribution(require_map(node, "distribution", where))};
  }
  if (type == "affine") {
    reject_unknown(node, where, {"type", "zeta", "A", "B"});
    return AffineSpec{number_list(node, "zeta", where), number_list(node, "A", where), number_list(node, "B", where)};
  }
  throw SchemaError(fmt::format("choice_model.type: expected 'logit', 'ue' or 'affine', got '{}'", type));
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw SchemaError(fmt::format("scenario is not valid YAML: {}", e.what()));
  }
  if (!root.IsMap()) throw SchemaError("scenario: top level must be a mapping");
  const std::string top = "scenario";
  reject_unknown(root, top,
                 {"name", "capacities", "gains", "initial_lanes", "initial_controller", "dt", "horizon", "seed",
                  "price_floor", "demand", "choice_model", "estimation"});

  ScenarioConfig cfg;
  cfg.name = scalar_or<std::string>(root, "name", top, "");

  const auto caps = require_map(root, "capacities", top);
  reject_unknown(caps, "capacities", {"c1", "c2"});
  cfg.capacities = {scalar<double>(caps, "c1", "capacities"), scalar<double>(caps, "c2", "capacities")};

  const auto gains = require_map(root, "gains", top);
  reject_unknown(gains, "gains", {"k1", "k2", "k3", "k4"});
  cfg.gains = {scalar<double>(gains, "k1", "gains"), scalar<double>(gains, "k2", "gains"),
               scalar<double>(gains, "k3", "gains"), scalar<double>(gains, "k4", "gains")};

  const auto lanes = require_map(root, "initial_lanes", top);
  reject_unknown(lanes, "initial_lanes", {"lambda1", "lambda2"});
  cfg.initial_lanes = {scalar<double>(lanes, "lambda1", "initial_lanes"),
                       scalar<double>(lanes, "lambda2", "initial_lanes")};

  const auto ctrl = require_map(root, "initial_controller", top);
  reject_unknown(ctrl, "initial_controller", {"a", "b"});
  cfg.initial_controller = {scalar<double>(ctrl, "a", "initial_controller"),
                            scalar<double>(ctrl, "b", "initial_controller")};

  cfg.dt = scalar<double>(root, "dt", top);
  cfg.horizon = scalar<double>(root, "horizon", top);
  cfg.rng_seed = scalar_or<std::uint64_t>(root, "seed", top, 0);
  cfg.price_floor_enabled = scalar_or<bool>(root, "price_floor", top, true);
  cfg.demand = parse_demand(require_map(root, "demand", top));
  cfg.choice_model = parse_choice_model(require_map(root, "choice_model", top));

  if (root["estimation"]) {
    const auto est = require_map(root, "estimation", top);
    reject_unknown(est, "estimation", {"enabled", "alpha"});
    cfg.estimation.enabled = scalar_or<bool>(est, "enabled", "estimation", true);
    cfg.estimation.alpha = scalar_or<double>(est, "alpha", "estimation", 1.0);
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(fmt::format("cannot open scenario file '{}'", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string format_scenario(const ScenarioConfig& cfg) {
  std::string out;
  auto line = [&out](const std::string& s) { out += s + "\n"; };
  if (!cfg.name.empty()) line(fmt::format("name: \"{}\"", cfg.name));
  line(fmt::format("capacities: {{c1: {}, c2: {}}}", cfg.capacities.c1, cfg.capacities.c2));
  line(fmt::format("gains: {{k1: {}, k2: {}, k3: {}, k4: {}}}", cfg.gains.k1, cfg.gains.k2, cfg.gains.k3,
                   cfg.gains.k4));
  line(fmt::format("initial_lanes: {{lambda1: {}, lambda2: {}}}", cfg.initial_lanes.lambda1,
                   cfg.initial_lanes.lambda2));
  line(fmt::format("initial_controller: {{a: {}, b: {}}}", cfg.initial_controller.a, cfg.initial_controller.b));
  line(fmt::format("dt: {}", cfg.dt));
  line(fmt::format("horizon: {}", cfg.horizon));
  line(fmt::format("seed: {}", cfg.rng_seed));
  line(fmt::format("price_floor: {}", cfg.price_floor_enabled));

  line("demand:");
  if (const auto* c = std::get_if<ConstantDemand>(&cfg.demand)) {
    line("  type: constant");
    line(fmt::format("  q1: {}", c->q1));
    line(fmt::format("  q2: {}", c->q2));
  } else {
    const auto& p = std::get<PoissonDemand>(cfg.demand);
    line("  type: poisson");
    line(fmt::format("  mean1: {}", p.mean1));
    line(fmt::format("  mean2: {}", p.mean2));
    line(fmt::format("  resample_every: {}", p.resample_every));
  }

  line("choice_model:");
  if (const auto* l = std::get_if<LogitSpec>(&cfg.choice_model)) {
    line("  type: logit");
    line(fmt::format("  pi_star: {}", l->pi_star));
    line(fmt::format("  alpha_star: {}", l->alpha_star));
  } else if (const auto* ue = std::get_if<UeSpec>(&cfg.choice_model)) {
    line("  type: ue");
    line("  distribution:");
    if (const auto* e = std::get_if<ExponentialVotSpec>(&ue->distribution)) {
      line("    type: exponential");
      line(fmt::format("    rate: {}", e->rate));
    } else {
      const auto& b = std::get<BurrVotSpec>(ue->distribution);
      line("    type: burr");
      line(fmt::format("    pi_star: {}", b.pi_star));
      line(fmt::format("    gamma: {}", b.gamma));
    }
  } else {
    const auto& a = std::get<AffineSpec>(cfg.choice_model);
    line("  type: affine");
    line(fmt::format("  zeta: [{}]", fmt::join(a.zeta, ", ")));
    line(fmt::format("  A: [{}]", fmt::join(a.a, ", ")));
    line(fmt::format("  B: [{}]", fmt::join(a.b, ", ")));
  }

  line("estimation:");
  line(fmt::format("  enabled: {}", cfg.estimation.enabled));
  line(fmt::format("  alpha: {}", cfg.estimation.alpha));
  return out;
}

void save_scenario(const ScenarioConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << format_scenario(cfg);
}

}  // namespace hotlane::io
