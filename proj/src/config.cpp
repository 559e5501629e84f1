// Copyright 2026 The cmaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cmaug/config.hpp"

#include "json.hpp"

namespace cmaug {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json range_to_json(const Range& r) {
  return ordered_json::array({r.lo, r.hi});
}

Range range_from_json(const ordered_json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) {
    throw Error(ErrorCode::kParseError, "config: " + what + " must be [lo, hi]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

/// Applies `section` over `target` field by field, rejecting unknown keys.
template <typename Apply>
void apply_section(const ordered_json& j, const char* name, Apply&& apply) {
  if (!j.contains(name)) return;
  const ordered_json& section = j.at(name);
  if (!section.is_object()) {
    throw Error(ErrorCode::kParseError,
                std::string("config: ") + name + " must be an object");
  }
  for (const auto& [key, value] : section.items()) {
    if (!apply(key, value)) {
      throw Error(ErrorCode::kParseError, std::string("config: unknown key ") +
                                              name + "." + key);
    }
  }
}

}  // namespace

void RunConfig::validate() const {
  sampler.validate();
  ik.validate();
  limits.validate();
  if (!(weights.interaction > 0.0) || !(weights.foot > 0.0) ||
      !(weights.com > 0.0) || !(weights.keypoint > 0.0) ||
      !(weights.posture > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "config: task weights must be positive");
  }
}

RunConfig config_from_json(const std::string& json_text,
                           const RunConfig& base) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kParseError,
                std::string("config parse: ") + e.what());
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "sampler" && key != "ik" && key != "weights" &&
        key != "limits") {
      throw Error(ErrorCode::kParseError,
                  "config: unknown section '" + key + "'");
    }
  }

  RunConfig c = base;
  apply_section(j, "sampler", [&](const std::string& k, const ordered_json& v) {
    SamplerConfig& s = c.sampler;
    if (k == "k_t_range") s.k_t = range_from_json(v, k);
    else if (k == "k_r_range") s.k_r = range_from_json(v, k);
    else if (k == "k_env_linear_range") s.k_env_linear = range_from_json(v, k);
    else if (k == "k_env_angular_range") s.k_env_angular = range_from_json(v, k);
    else if (k == "peak_force_limit") s.peak_force_limit = v.get<double>();
    else if (k == "peak_torque_limit") s.peak_torque_limit = v.get<double>();
    else if (k == "displacement_limit") s.displacement_limit = v.get<double>();
    else if (k == "angular_displacement_limit")
      s.angular_displacement_limit = v.get<double>();
    else if (k == "rest_range") s.rest = range_from_json(v, k);
    else if (k == "hold_range") s.hold = range_from_json(v, k);
    else if (k == "speed_range") s.speed = range_from_json(v, k);
    else if (k == "collision_velocity_gain")
      s.collision_velocity_gain = v.get<double>();
    else if (k == "collision_base_rate") s.collision_base_rate = v.get<double>();
    else if (k == "ramp_fraction") s.ramp_fraction = v.get<double>();
    else if (k == "seed") s.seed = v.get<uint64_t>();
    else return false;
    return true;
  });
  apply_section(j, "ik", [&](const std::string& k, const ordered_json& v) {
    IkParams& p = c.ik;
    if (k == "damping") p.damping = v.get<double>();
    else if (k == "max_iterations") p.max_iterations = v.get<int>();
    else if (k == "step_tolerance") p.step_tolerance = v.get<double>();
    else if (k == "step_cap") p.step_cap = v.get<double>();
    else return false;
    return true;
  });
  apply_section(j, "weights", [&](const std::string& k, const ordered_json& v) {
    TaskWeights& w = c.weights;
    if (k == "interaction") w.interaction = v.get<double>();
    else if (k == "foot") w.foot = v.get<double>();
    else if (k == "com") w.com = v.get<double>();
    else if (k == "keypoint") w.keypoint = v.get<double>();
    else if (k == "posture") w.posture = v.get<double>();
    else return false;
    return true;
  });
  apply_section(j, "limits", [&](const std::string& k, const ordered_json& v) {
    FeasibilityLimits& l = c.limits;
    if (k == "max_link_tracking_error")
      l.max_link_tracking_error = v.get<double>();
    else if (k == "max_stance_foot_displacement")
      l.max_stance_foot_displacement = v.get<double>();
    else if (k == "max_com_tracking_error")
      l.max_com_tracking_error = v.get<double>();
    else if (k == "rejection_scale") l.rejection_scale = v.get<double>();
    else if (k == "min_event_force") l.min_event_force = v.get<double>();
    else return false;
    return true;
  });
  c.validate();
  return c;
}

std::string config_to_json(const RunConfig& c) {
  ordered_json j;
  const SamplerConfig& s = c.sampler;
  j["sampler"] = {
      {"k_t_range", range_to_json(s.k_t)},
      {"k_r_range", range_to_json(s.k_r)},
      {"k_env_linear_range", range_to_json(s.k_env_linear)},
      {"k_env_angular_range", range_to_json(s.k_env_angular)},
      {"peak_force_limit", s.peak_force_limit},
      {"peak_torque_limit", s.peak_torque_limit},
      {"displacement_limit", s.displacement_limit},
      {"angular_displacement_limit", s.angular_displacement_limit},
      {"rest_range", range_to_json(s.rest)},
      {"hold_range", range_to_json(s.hold)},
      {"speed_range", range_to_json(s.speed)},
      {"collision_velocity_gain", s.collision_velocity_gain},
      {"collision_base_rate", s.collision_base_rate},
      {"ramp_fraction", s.ramp_fraction},
      {"seed", s.seed},
  };
  j["ik"] = {
      {"damping", c.ik.damping},
      {"max_iterations", c.ik.max_iterations},
      {"step_tolerance", c.ik.step_tolerance},
      {"step_cap", c.ik.step_cap},
  };
  j["weights"] = {
      {"interaction", c.weights.interaction},
      {"foot", c.weights.foot},
      {"com", c.weights.com},
      {"keypoint", c.weights.keypoint},
      {"posture", c.weights.posture},
  };
  j["limits"] = {
      {"max_link_tracking_error", c.limits.max_link_tracking_error},
      {"max_stance_foot_displacement", c.limits.max_stance_foot_displacement},
      {"max_com_tracking_error", c.limits.max_com_tracking_error},
      {"rejection_scale", c.limits.rejection_scale},
      {"min_event_force", c.limits.min_event_force},
  };
  return j.dump(2);
}

}  // namespace cmaug
