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

#include "cmaug/events.hpp"

#include <algorithm>
#include <cmath>

#include "cmaug/kinematics.hpp"

namespace cmaug {

Vec3 Rng::unit_vector() {
  const double z = uniform(-1.0, 1.0);
  const double phi = uniform(0.0, 2.0 * M_PI);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Vec3(r * std::cos(phi), r * std::sin(phi), z);
}

namespace {

void check_range(const Range& r, const char* what, bool positive = true) {
  if (!(r.lo <= r.hi) || (positive && !(r.lo > 0.0))) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("sampler config: bad range for ") + what);
  }
}

}  // namespace

void SamplerConfig::validate() const {
  check_range(k_t, "k_t");
  check_range(k_r, "k_r");
  check_range(k_env_linear, "k_env_linear");
  check_range(k_env_angular, "k_env_angular");
  check_range(rest, "rest");
  check_range(hold, "hold");
  check_range(speed, "speed");
  if (!(peak_force_limit > 0.0) || !(peak_torque_limit > 0.0) ||
      !(displacement_limit > 0.0) || !(angular_displacement_limit > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sampler config: limits must be positive");
  }
  if (collision_velocity_gain < 0.0 || collision_base_rate < 0.0 ||
      ramp_fraction < 0.0 || ramp_fraction > 1.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "sampler config: collision rates and ramp_fraction must be "
                "non-negative (ramp_fraction <= 1)");
  }
}

double sample_log_uniform(const Range& range, Rng& rng) {
  if (!(range.lo > 0.0) || !(range.lo <= range.hi)) {
    throw Error(ErrorCode::kInvalidArgument,
                "log-uniform range needs 0 < lo <= hi");
  }
  return std::exp(rng.uniform(std::log(range.lo), std::log(range.hi)));
}

InteractionEvent sample_ramp_event(const MotionClip& clip,
                                   const KinematicModel& model, double t_start,
                                   const SamplerConfig& cfg, Rng& rng) {
  cfg.validate();
  if (t_start < 0.0 || t_start > clip.duration()) {
    throw Error(ErrorCode::kInvalidArgument, "event start outside the clip");
  }
  InteractionEvent ev;
  ev.kind = EventKind::kRamp;
  ev.start = t_start;
  ev.link = model.hand_links()[rng.pick(
      static_cast<int>(model.hand_links().size()))];
  ev.cmd.k_t = sample_log_uniform(cfg.k_t, rng);
  ev.cmd.k_r = sample_log_uniform(cfg.k_r, rng);
  ev.env.linear = sample_log_uniform(cfg.k_env_linear, rng);
  ev.env.angular = sample_log_uniform(cfg.k_env_angular, rng);

  // Constrained displacement sampling: the valid magnitude range is capped
  // by both the displacement limit and the peak force limit at the sampled
  // stiffness. Force is derived, never sampled directly.
  const double d_max =
      std::min(cfg.displacement_limit, cfg.peak_force_limit / ev.cmd.k_t);
  const double ang_max = std::min(cfg.angular_displacement_limit,
                                  cfg.peak_torque_limit / ev.cmd.k_r);
  const double d = rng.uniform(0.0, d_max);
  const double ang = rng.uniform(0.0, ang_max);

  ev.peak.force = ev.cmd.k_t * d * rng.unit_vector();
  ev.peak.torque = ev.cmd.k_r * ang * rng.unit_vector();

  const double speed = rng.uniform(cfg.speed.lo, cfg.speed.hi);
  ev.ramp_up = d / speed;
  ev.ramp_down = ev.ramp_up;
  ev.hold = rng.uniform(cfg.hold.lo, cfg.hold.hi);
  return ev;
}

std::vector<std::pair<int, int>> sample_collision_onsets(
    const MotionClip& clip, const KinematicModel& model,
    const SamplerConfig& cfg, Rng& rng) {
  cfg.validate();
  std::vector<std::pair<int, int>> onsets;
  for (int f = 0; f < clip.frame_count(); ++f) {
    for (int hand : model.hand_links()) {
      const double v = clip_link_velocity(clip, model, hand, f).norm();
      const double p = std::min(
          1.0, clip.dt * (cfg.collision_velocity_gain * v +
                          cfg.collision_base_rate));
      if (rng.bernoulli(p)) onsets.emplace_back(f, hand);
    }
  }
  return onsets;
}

Wrench wrench_profile(const InteractionEvent& event, double t) {
  if (event.kind != EventKind::kRamp) {
    throw Error(ErrorCode::kInvalidArgument,
                "wrench_profile is defined for ramp events");
  }
  const double local = t - event.start;
  double s = 0.0;
  if (local >= 0.0 && local <= event.span()) {
    if (local < event.ramp_up) {
      s = event.ramp_up > 0.0 ? local / event.ramp_up : 1.0;
    } else if (local <= event.ramp_up + event.hold) {
      s = 1.0;
    } else {
      const double down = local - event.ramp_up - event.hold;
      s = event.ramp_down > 0.0 ? 1.0 - down / event.ramp_down : 0.0;
    }
  }
  return event.peak.scaled(s);
}

double collision_penetration(const MotionClip& clip,
                             const KinematicModel& model,
                             const InteractionEvent& event, int frame) {
  if (event.kind != EventKind::kCollision) {
    throw Error(ErrorCode::kInvalidArgument,
                "collision_penetration is defined for collision events");
  }
  const double t = clip.frame_time(frame);
  if (t < event.start - 1e-12 || t > event.end() + 1e-12) return 0.0;
  const Vec3 p =
      forward_kinematics(model, clip.frames[frame])[event.link].translation;
  return std::max(0.0, (p - event.anchor).dot(event.normal));
}

double collision_peak_force(const MotionClip& clip, const KinematicModel& model,
                            const InteractionEvent& event) {
  double peak = 0.0;
  const int first = std::max(0, static_cast<int>(std::ceil(
                                    event.start / clip.dt - 1e-9)));
  const int last = std::min(clip.frame_count() - 1,
                            static_cast<int>(std::floor(event.end() / clip.dt +
                                                        1e-9)));
  for (int f = first; f <= last; ++f) {
    const double x = collision_penetration(clip, model, event, f);
    peak = std::max(
        peak, series_spring_equilibrium(x, event.cmd.k_t, event.env.linear)
                  .force);
  }
  return peak;
}

namespace {

/// Collision events end when the reference hand stops penetrating the
/// surface (or at clip end).
double collision_duration(const MotionClip& clip, const KinematicModel& model,
                          int onset_frame, int hand, const Vec3& anchor,
                          const Vec3& normal) {
  int f = onset_frame + 1;
  bool penetrated = false;
  for (; f < clip.frame_count(); ++f) {
    const Vec3 p = forward_kinematics(model, clip.frames[f])[hand].translation;
    const double x = (p - anchor).dot(normal);
    if (x > 0.0) {
      penetrated = true;
    } else if (penetrated) {
      break;
    }
  }
  const int last = std::min(f, clip.frame_count() - 1);
  return (last - onset_frame) * clip.dt;
}

InteractionEvent make_collision_event(const MotionClip& clip,
                                      const KinematicModel& model,
                                      int onset_frame, int hand,
                                      const SamplerConfig& cfg, Rng& rng) {
  InteractionEvent ev;
  ev.kind = EventKind::kCollision;
  ev.link = hand;
  ev.onset_frame = onset_frame;
  ev.start = clip.frame_time(onset_frame);
  ev.cmd.k_t = sample_log_uniform(cfg.k_t, rng);
  ev.cmd.k_r = sample_log_uniform(cfg.k_r, rng);
  ev.env.linear = sample_log_uniform(cfg.k_env_linear, rng);
  ev.env.angular = sample_log_uniform(cfg.k_env_angular, rng);

  ev.anchor =
      forward_kinematics(model, clip.frames[onset_frame])[hand].translation;
  Vec3 v = clip_link_velocity(clip, model, hand, onset_frame);
  if (v.norm() > 1e-9) {
    ev.normal = v.normalized();
  } else {
    // Stationary onset: aim at the next direction the hand will move, if
    // it ever does. Otherwise the event carries no penetration and gets
    // floor-rejected downstream.
    ev.normal = Vec3::Zero();
    for (int f = onset_frame + 1; f < clip.frame_count(); ++f) {
      const Vec3 d =
          forward_kinematics(model, clip.frames[f])[hand].translation -
          ev.anchor;
      if (d.norm() > 5e-3) {
        ev.normal = d.normalized();
        break;
      }
    }
  }
  ev.duration =
      ev.normal.isZero()
          ? clip.dt
          : collision_duration(clip, model, onset_frame, hand, ev.anchor,
                               ev.normal);
  return ev;
}

}  // namespace

EventSchedule build_schedule(const MotionClip& clip,
                             const KinematicModel& model,
                             const SamplerConfig& cfg, Rng& rng) {
  cfg.validate();
  if (model.hand_links().empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "model declares no hand links to perturb");
  }
  EventSchedule schedule;
  const double duration = clip.duration();
  double cursor = 0.0;
  while (true) {
    cursor += rng.uniform(cfg.rest.lo, cfg.rest.hi);
    if (cursor >= duration) break;

    if (rng.bernoulli(cfg.ramp_fraction)) {
      InteractionEvent ev = sample_ramp_event(clip, model, cursor, cfg, rng);
      if (ev.end() > duration) break;  // does not fit; stop scheduling
      cursor = ev.end();
      schedule.events.push_back(std::move(ev));
    } else {
      // Scan forward for a velocity-proportional onset, one Bernoulli draw
      // per frame and hand.
      int onset = -1, hand = -1;
      const int from = static_cast<int>(std::ceil(cursor / clip.dt - 1e-9));
      for (int f = from; f < clip.frame_count() && onset < 0; ++f) {
        for (int h : model.hand_links()) {
          const double v = clip_link_velocity(clip, model, h, f).norm();
          const double p = std::min(
              1.0, clip.dt * (cfg.collision_velocity_gain * v +
                              cfg.collision_base_rate));
          if (rng.bernoulli(p)) {
            onset = f;
            hand = h;
            break;
          }
        }
      }
      if (onset < 0) break;
      InteractionEvent ev =
          make_collision_event(clip, model, onset, hand, cfg, rng);
      if (ev.end() > duration + 1e-9) break;
      cursor = ev.end();
      schedule.events.push_back(std::move(ev));
    }
  }
  return schedule;
}

}  // namespace cmaug
