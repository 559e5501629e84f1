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

// Run configuration: every sampler / solver / feasibility constant in one
// JSON-serializable bundle, layered defaults < file < overrides, echoed
// verbatim into run manifests.

#ifndef CMAUG_CONFIG_HPP_
#define CMAUG_CONFIG_HPP_

#include <string>

#include "cmaug/augment.hpp"
#include "cmaug/events.hpp"

namespace cmaug {

struct RunConfig {
  SamplerConfig sampler;
  IkParams ik;
  TaskWeights weights;
  FeasibilityLimits limits;

  void validate() const;
};

/// Parses a (possibly partial) JSON document over the defaults: unknown keys
/// are an error, absent keys keep their defaults.
RunConfig config_from_json(const std::string& json_text,
                           const RunConfig& base = {});

std::string config_to_json(const RunConfig& config);

}  // namespace cmaug

#endif  // CMAUG_CONFIG_HPP_
