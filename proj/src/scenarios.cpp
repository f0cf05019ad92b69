#include "hotlane/scenarios.hpp"

#include <stdexcept>

#include <fmt/core.h>

namespace hotlane::scenarios {

namespace {

ScenarioConfig base() {
  ScenarioConfig cfg;
  cfg.capacities = {30.0, 30.0};
  cfg.gains = {0.1, 0.1, 0.2, 0.2};
  cfg.initial_lanes = {1.0, 2.0};
  cfg.initial_controller = {0.25, 0.1};
  cfg.dt = 0.1 / 60.0;
  cfg.horizon = 20.0;
  cfg.demand = ConstantDemand{10.0, 60.0};
  cfg.rng_seed = 1;
  cfg.price_floor_enabled = true;
  cfg.estimation = {true, 1.0};
  return cfg;
}

}  // namespace

ScenarioConfig logit_constant() {
  auto cfg = base();
  cfg.name = "logit-constant";
  cfg.choice_model = LogitSpec{0.5, 1.0};
  return cfg;
}

ScenarioConfig logit_poisson(std::uint64_t seed) {
  auto cfg = logit_constant();
  cfg.name = "logit-poisson";
  cfg.demand = PoissonDemand{10.0, 60.0, 1.0};
  cfg.rng_seed = seed;
  return cfg;
}

ScenarioConfig ue_constant() {
  auto cfg = base();
  cfg.name = "ue-constant";
  cfg.choice_model = UeSpec{ExponentialVotSpec{2.0}};
  return cfg;
}

ScenarioConfig ue_poisson(std::uint64_t seed) {
  auto cfg = ue_constant();
  cfg.name = "ue-poisson";
  cfg.demand = PoissonDemand{10.0, 60.0, 1.0};
  cfg.rng_seed = seed;
  return cfg;
}

ScenarioConfig logit_coarse_dt() {
  auto cfg = logit_constant();
  cfg.name = "logit-coarse-dt";
  cfg.dt = 1.0 / 60.0;
  cfg.horizon = 250.0;
  return cfg;
}

const std::vector<std::string>& names() {
  static const std::vector<std::string> kNames{"logit-constant", "logit-poisson", "ue-constant", "ue-poisson",
                                               "logit-coarse-dt"};
  return kNames;
}

ScenarioConfig by_name(std::string_view name) {
  if (name == "logit-constant") return logit_constant();
  if (name == "logit-poisson") return logit_poisson();
  if (name == "ue-constant") return ue_constant();
  if (name == "ue-poisson") return ue_poisson();
  if (name == "logit-coarse-dt") return logit_coarse_dt();
  throw std::out_of_range(fmt::format("unknown bundled scenario '{}'", name));
}

}  // namespace hotlane::scenarios
