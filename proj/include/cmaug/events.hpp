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

// Interaction-event sampling: ramped wrench events with constrained
// displacement sampling, velocity-proportional collision onsets, and the
// rest/event alternation that fills a clip. All randomness flows through
// Rng so schedules are reproducible across platforms from a single seed.

#ifndef CMAUG_EVENTS_HPP_
#define CMAUG_EVENTS_HPP_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "cmaug/forcefield.hpp"
#include "cmaug/ik.hpp"
#include "cmaug/model.hpp"

namespace cmaug {

/// Deterministic draws on top of mt19937_64. The standard distributions are
/// implementation-defined, so the mappings here are hand-rolled.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  /// Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }
  bool bernoulli(double p) { return uniform() < p; }
  int pick(int n) { return static_cast<int>(gen_() % static_cast<uint64_t>(n)); }

  /// Uniform direction on the unit sphere (area-preserving cylindrical map).
  Vec3 unit_vector();

 private:
  std::mt19937_64 gen_;
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// Every constant of the event generator. Defaults are the data-generation
/// hyperparameters the augmentation pipeline was designed around; the
/// collision rate constants and the ramp/collision mix are artifact
/// defaults, not given quantities.
struct SamplerConfig {
  Range k_t{40.0, 1000.0};            // N/m
  Range k_r{0.1, 10.0};               // N.m/rad
  Range k_env_linear{10.0, 1000.0};   // N/m
  Range k_env_angular{0.1, 10.0};     // N.m/rad
  double peak_force_limit = 140.0;    // N
  double peak_torque_limit = 10.0;    // N.m
  double displacement_limit = 0.7;    // m
  double angular_displacement_limit = 2.0;  // rad
  Range rest{0.5, 1.5};               // s
  Range hold{0.5, 1.0};               // s
  Range speed{0.1, 1.0};              // m/s
  double collision_velocity_gain = 2.0;  // 1/m
  double collision_base_rate = 0.1;      // 1/s, stationary-collision rate
  double ramp_fraction = 0.5;         // P(event is a ramp)
  uint64_t seed = 0;

  void validate() const;
};

enum class EventKind { kRamp, kCollision };

struct InteractionEvent {
  EventKind kind = EventKind::kRamp;
  int link = -1;        // hand link index
  double start = 0.0;   // s
  StiffnessCommand cmd;
  EnvironmentStiffness env;

  // Ramp profile: 0 -> peak over ramp_up, hold, peak -> 0 over ramp_down.
  Wrench peak;
  double ramp_up = 0.0;
  double hold = 0.0;
  double ramp_down = 0.0;

  // Collision: virtual surface through `anchor` with outward `normal` along
  // the reference motion; active over [start, start + duration].
  Vec3 anchor{Vec3::Zero()};
  Vec3 normal{Vec3::Zero()};
  int onset_frame = -1;
  double duration = 0.0;

  double span() const {
    return kind == EventKind::kRamp ? ramp_up + hold + ramp_down : duration;
  }
  double end() const { return start + span(); }
};

struct EventSchedule {
  std::vector<InteractionEvent> events;
};

/// exp(u), u uniform on [ln lo, ln hi].
double sample_log_uniform(const Range& range, Rng& rng);

/// Appendix-order ramp sampling: hand, stiffness, constrained displacement
/// magnitudes, peak wrench direction, profile timing.
InteractionEvent sample_ramp_event(const MotionClip& clip,
                                   const KinematicModel& model, double t_start,
                                   const SamplerConfig& cfg, Rng& rng);

/// Candidate collision onsets over the whole clip: per frame and hand link,
/// a Bernoulli draw with p = min(1, dt * (gain * |v_link| + base_rate)).
std::vector<std::pair<int, int>> sample_collision_onsets(
    const MotionClip& clip, const KinematicModel& model,
    const SamplerConfig& cfg, Rng& rng);

/// Piecewise-linear ramp-hold-ramp profile; zero outside the event window.
/// Force and torque share the profile.
Wrench wrench_profile(const InteractionEvent& event, double t);

/// Reference-path penetration past the collision surface at `frame`
/// (zero outside the truncated event window).
double collision_penetration(const MotionClip& clip,
                             const KinematicModel& model,
                             const InteractionEvent& event, int frame);

/// Peak series-spring force over the event's (possibly truncated) window.
double collision_peak_force(const MotionClip& clip, const KinematicModel& model,
                            const InteractionEvent& event);

/// Alternates sampled rest periods and events until the clip ends. Fully
/// determined by the Rng state; events never overlap and always fit the
/// clip.
EventSchedule build_schedule(const MotionClip& clip,
                             const KinematicModel& model,
                             const SamplerConfig& cfg, Rng& rng);

}  // namespace cmaug

#endif  // CMAUG_EVENTS_HPP_
