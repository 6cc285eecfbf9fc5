#include "zipper/report.hpp"

#include <json.hpp>
#include <type_traits>

#include "zipper/error.hpp"

namespace zipper {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json vec(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

ordered_json transform_json(const RigidTransform& t) {
  ordered_json rot = ordered_json::array();
  for (const auto& row : t.rotation)
    rot.push_back(ordered_json::array({row[0], row[1], row[2]}));
  return {{"rotation", rot}, {"translation", vec(t.translation)},
          {"text", serialize_transform(t)}};
}

ordered_json contact_json(const ContactReport& c) {
  return {{"anchor", c.anchor.str()},
          {"free", c.free.str()},
          {"distance", c.distance},
          {"optimal_distance", c.optimal_distance},
          {"energy", c.energy},
          {"within_tolerance", c.within_tolerance}};
}

ordered_json clashes_json(const std::vector<Clash>& clashes) {
  ordered_json out = ordered_json::array();
  for (const Clash& c : clashes)
    out.push_back({{"first", c.first.str()}, {"second", c.second.str()}, {"distance", c.distance}});
  return out;
}

ordered_json trace_json(const TraceSummary& t) {
  return {{"evaluations", t.evaluations}, {"generations", t.generations},
          {"restarts", t.restarts},       {"terminated_by", t.terminated_by},
          {"best_value", t.best_value},   {"improvements", t.improvements}};
}

ordered_json config_json(const OptimizerConfig& c) {
  ordered_json j = {{"population_size", c.population_size},
                    {"offspring_per_parent", c.offspring_per_parent}};
  j["initial_temperature"] = c.initial_temperature ? ordered_json(*c.initial_temperature)
                                                   : ordered_json(nullptr);
  j["cooling_factor"] = c.cooling_factor;
  j["step_scale"] = c.step_scale;
  j["max_evaluations"] = c.max_evaluations;
  j["stagnation_window"] = c.stagnation_window;
  j["stagnation_tolerance"] = c.stagnation_tolerance;
  j["restarts"] = c.restarts;
  j["restart_keeps_best"] = c.restart_keeps_best;
  j["crossover_rate"] = c.crossover_rate;
  j["mutation_rate"] = c.mutation_rate;
  j["seed"] = c.seed;
  j["target_value"] = c.target_value ? ordered_json(*c.target_value) : ordered_json(nullptr);
  return j;
}

template <typename T>
T get_as(const json& j, const std::string& key) {
  if constexpr (std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
    if (!j.is_number_unsigned())
      throw ConfigError("spec key '" + key + "' must be a non-negative integer");
  }
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("spec key '" + key + "' has the wrong type");
  }
}

json parse_object(std::string_view text, const char* what) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(what) + " is not valid JSON: " + e.what());
  }
  if (!j.is_object())
    throw ConfigError(std::string(what) + " must be a JSON object");
  return j;
}

OptimizerConfig apply_optimizer(const json& j, OptimizerConfig c) {
  for (const auto& [key, v] : j.items()) {
    if (key == "population_size")
      c.population_size = get_as<std::size_t>(v, key);
    else if (key == "offspring_per_parent")
      c.offspring_per_parent = get_as<std::size_t>(v, key);
    else if (key == "initial_temperature")
      c.initial_temperature =
          v.is_null() ? std::nullopt : std::optional<double>(get_as<double>(v, key));
    else if (key == "cooling_factor")
      c.cooling_factor = get_as<double>(v, key);
    else if (key == "step_scale")
      c.step_scale = get_as<double>(v, key);
    else if (key == "max_evaluations")
      c.max_evaluations = get_as<std::size_t>(v, key);
    else if (key == "stagnation_window")
      c.stagnation_window = get_as<std::size_t>(v, key);
    else if (key == "stagnation_tolerance")
      c.stagnation_tolerance = get_as<double>(v, key);
    else if (key == "restarts")
      c.restarts = get_as<std::size_t>(v, key);
    else if (key == "restart_keeps_best")
      c.restart_keeps_best = get_as<bool>(v, key);
    else if (key == "crossover_rate")
      c.crossover_rate = get_as<double>(v, key);
    else if (key == "mutation_rate")
      c.mutation_rate = get_as<double>(v, key);
    else if (key == "seed")
      c.seed = get_as<std::uint64_t>(v, key);
    else if (key == "target_value")
      c.target_value = v.is_null() ? std::nullopt : std::optional<double>(get_as<double>(v, key));
    else
      throw ConfigError("unknown optimizer key '" + key + "'");
  }
  return c;
}

std::vector<AtomSelector> selectors(const json& v, const std::string& key) {
  if (!v.is_array())
    throw ConfigError("spec key '" + key + "' must be an array of selectors");
  std::vector<AtomSelector> out;
  for (const json& s : v) {
    try {
      out.push_back(AtomSelector::parse(get_as<std::string>(s, key)));
    } catch (const SelectorError& e) {
      throw ConfigError("spec key '" + key + "': " + e.what());
    }
  }
  return out;
}

} // namespace

std::string to_json(const BuildReport& r) {
  ordered_json j;
  j["model_name"] = r.model_name;
  j["sequence"] = r.sequence;
  j["status"] = to_string(r.status);
  j["seed"] = r.seed;
  j["lj"] = {{"epsilon", r.epsilon}, {"sigma", r.sigma}};
  j["full_sum"] = r.full_sum;
  ordered_json contacts = ordered_json::array();
  for (const ContactReport& c : r.contacts)
    contacts.push_back(contact_json(c));
  j["contacts"] = contacts;
  j["contact_energy"] = r.contact_energy;
  j["placement_energy"] = r.placement_energy;
  j["reconciliation"] = {{"residual", r.residual}, {"mean_displacement", vec(r.mean_displacement)}};
  j["hbond_count_before"] = r.hbond_count_before;
  j["hbond_count_after"] = r.hbond_count_after;
  j["model_hbond_count"] = r.model_hbond_count;
  j["clashes"] = clashes_json(r.clashes);
  j["min_interchain_distance"] = r.min_interchain_distance;
  j["transform"] = transform_json(r.transform);
  ordered_json opt = {{"search", trace_json(r.search)}, {"refine", trace_json(r.refine)}};
  opt["rigid"] = r.rigid ? trace_json(*r.rigid) : ordered_json(nullptr);
  j["optimizer"] = opt;
  j["messages"] = r.messages;
  return j.dump(2) + "\n";
}

std::string to_json(const EnergyReport& r) {
  ordered_json j;
  ordered_json contacts = ordered_json::array();
  for (const ContactReport& c : r.contacts)
    contacts.push_back(contact_json(c));
  j["contacts"] = contacts;
  j["unresolved_contacts"] = r.unresolved;
  j["contact_energy"] = r.contact_energy;
  ordered_json hb = ordered_json::array();
  for (std::size_t i = 0; i < r.hbonds.size(); ++i)
    hb.push_back({{"donor", r.hbonds[i].donor.str()},
                  {"acceptor", r.hbonds[i].acceptor.str()},
                  {"distance", r.hbonds[i].distance},
                  {"energy", r.hbond_energies[i]}});
  j["hbond_count"] = r.hbonds.size();
  j["hbond_energy"] = r.hbond_energy;
  j["hbonds"] = hb;
  j["clashes"] = clashes_json(r.clashes);
  return j.dump(2) + "\n";
}

std::string to_json(const BenchmarkReport& r) {
  ordered_json j;
  j["suite"] = r.suite;
  j["module"] = "optimizer";
  j["seed"] = r.seed;
  j["config"] = config_json(r.config);
  ordered_json cells = ordered_json::array();
  for (const BenchmarkCell& c : r.cells)
    cells.push_back({{"problem", c.problem},
                     {"dim", c.dim},
                     {"runs", c.runs},
                     {"successes", c.successes},
                     {"success_rate", c.success_rate},
                     {"required_rate", c.required_rate},
                     {"target", c.target},
                     {"best", c.best},
                     {"median_evals", c.median_evals},
                     {"passed", c.passed}});
  j["cells"] = cells;
  j["all_passed"] = r.all_passed;
  return j.dump(2) + "\n";
}

OptimizerConfig optimizer_config_from_json(std::string_view text, OptimizerConfig base) {
  return apply_optimizer(parse_object(text, "optimizer config"), std::move(base));
}

FibrilSpec fibril_spec_from_json(std::string_view text, FibrilSpec spec) {
  json j = parse_object(text, "spec");
  double sigma = spec.lj.sigma, epsilon = spec.lj.epsilon;
  for (const auto& [key, v] : j.items()) {
    if (key == "model_name")
      spec.model_name = get_as<std::string>(v, key);
    else if (key == "sequence")
      spec.sequence = parse_sequence(get_as<std::string>(v, key));
    else if (key == "anchors")
      spec.anchors = selectors(v, key);
    else if (key == "free_atoms")
      spec.free_atoms = selectors(v, key);
    else if (key == "sigma")
      sigma = get_as<double>(v, key);
    else if (key == "epsilon")
      epsilon = get_as<double>(v, key);
    else if (key == "full_sum")
      spec.full_sum = get_as<bool>(v, key);
    else if (key == "residual_threshold")
      spec.residual_threshold = get_as<double>(v, key);
    else if (key == "clash_cutoff")
      spec.clash_cutoff = get_as<double>(v, key);
    else if (key == "contact_tolerance")
      spec.contact_tolerance = get_as<double>(v, key);
    else if (key == "rigid_stage")
      spec.rigid_stage = get_as<bool>(v, key);
    else if (key == "steric_floor")
      spec.steric_floor = get_as<double>(v, key);
    else if (key == "steric_weight")
      spec.steric_weight = get_as<double>(v, key);
    else if (key == "intra_sheet_step") {
      auto s = get_as<std::vector<double>>(v, key);
      if (s.size() != 3)
        throw ConfigError("intra_sheet_step needs 3 reals");
      spec.lattice.intra_sheet_step = {s[0], s[1], s[2]};
    } else if (key == "sheet2_transform") {
      try {
        spec.lattice.sheet2_transform = parse_transform(get_as<std::string>(v, key));
      } catch (const DomainError& e) {
        throw ConfigError(std::string("sheet2_transform: ") + e.what());
      }
    } else if (key == "optimizer") {
      if (!v.is_object())
        throw ConfigError("spec key 'optimizer' must be an object");
      spec.optimizer = apply_optimizer(v, spec.optimizer);
    } else {
      throw ConfigError("unknown spec key '" + key + "'");
    }
  }
  try {
    spec.lj = LJParams(epsilon, sigma);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

} // namespace zipper
