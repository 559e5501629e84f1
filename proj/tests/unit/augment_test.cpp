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

#include "cmaug/augment.hpp"

#include <fstream>
#include <sstream>

#include "cmaug/dataset.hpp"
#include "cmaug/pipeline.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

namespace cmaug {
namespace {

using testing::make_arm_sweep_clip;
using testing::make_humanoid;
using testing::make_standing_clip;
using testing::make_temp_dir;

InteractionEvent lateral_ramp(const KinematicModel& model, double start,
                              double force, double k_t, Vec3 dir = {0, 1, 0}) {
  InteractionEvent ev;
  ev.kind = EventKind::kRamp;
  ev.link = model.link_index("r_hand");
  ev.start = start;
  ev.cmd = {k_t, 1.0};
  ev.env = {100.0, 1.0};
  ev.peak.force = force * dir.normalized();
  ev.ramp_up = 0.5;
  ev.hold = 0.6;
  ev.ramp_down = 0.5;
  return ev;
}

TEST_CASE("zero-wrench frame passes feasibility with margins intact") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 0.2, 0.02);
  const int hand = model.link_index("r_hand");
  const auto targets =
      compliant_targets(model, clip, 0, hand, Wrench{}, {100.0, 1.0});
  const auto violations = feasibility_check(model, clip, 0, hand,
                                            clip.frames[0], targets,
                                            FeasibilityLimits{});
  CHECK(violations.empty());
}

TEST_CASE("hand error past 0.05 m trips the link-tracking criterion") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 0.2, 0.02);
  const int hand = model.link_index("r_hand");
  // Shift the target 0.06 m away from where the (unmoved) hand sits.
  auto targets =
      compliant_targets(model, clip, 0, hand, Wrench{}, {100.0, 1.0});
  targets.p_des += Vec3(0.06, 0, 0);
  const auto violations = feasibility_check(model, clip, 0, hand,
                                            clip.frames[0], targets,
                                            FeasibilityLimits{});
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].criterion == "link tracking");
  CHECK(violations[0].value == doctest::Approx(0.06));
  CHECK(violations[0].limit == 0.05);
  CHECK(violations[0].message() == "link tracking 0.060 > 0.05");
}

TEST_CASE("CoM error past 0.15 m trips the CoM criterion") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 0.2, 0.02);
  const int hand = model.link_index("r_hand");
  auto targets =
      compliant_targets(model, clip, 0, hand, Wrench{}, {100.0, 1.0});
  targets.com_target_xy += Eigen::Vector2d(0.151, 0);
  const auto violations = feasibility_check(model, clip, 0, hand,
                                            clip.frames[0], targets,
                                            FeasibilityLimits{});
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].criterion == "CoM");
  CHECK(violations[0].value == doctest::Approx(0.151));
  CHECK(violations[0].limit == 0.15);
}

TEST_CASE("stance foot displacement past 0.05 m is a violation") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 0.2, 0.02);
  const int hand = model.link_index("r_hand");
  const auto targets =
      compliant_targets(model, clip, 0, hand, Wrench{}, {100.0, 1.0});
  Configuration q = clip.frames[0];
  q.base.translation += Vec3(0.06, 0, 0);  // drags both feet with the base
  auto targets_shifted = targets;
  targets_shifted.p_des += Vec3(0.06, 0, 0);
  targets_shifted.com_target_xy += Eigen::Vector2d(0.06, 0);
  const auto violations = feasibility_check(model, clip, 0, hand, q,
                                            targets_shifted,
                                            FeasibilityLimits{});
  REQUIRE(violations.size() == 2);
  CHECK(violations[0].criterion == "stance foot l_foot");
  CHECK(violations[1].criterion == "stance foot r_foot");
}

TEST_CASE("zero-magnitude event reproduces the reference") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 3.0, 0.02);
  const InteractionEvent ev = lateral_ramp(model, 0.5, 0.0, 200.0);
  const auto sim = simulate_event(model, clip, ev, IkParams{}, TaskWeights{},
                                  FeasibilityLimits{}, clip.frames[0]);
  REQUIRE(sim.feasible);
  for (const auto& frame : sim.frames) {
    CHECK((frame.q_aug.joints - frame.q_ref.joints)
              .lpNorm<Eigen::Infinity>() < 1e-6);
  }
}

TEST_CASE("20 N lateral ramp at 400 N/m displaces the hand by F/k") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 3.0, 0.02);
  const InteractionEvent ev = lateral_ramp(model, 0.5, 20.0, 400.0);
  const auto sim = simulate_event(model, clip, ev, IkParams{}, TaskWeights{},
                                  FeasibilityLimits{}, clip.frames[0]);
  REQUIRE(sim.feasible);
  bool saw_plateau = false;
  for (const auto& frame : sim.frames) {
    if (frame.interaction->wrench.force.norm() < 20.0 - 1e-9) continue;
    saw_plateau = true;
    const double displaced = (frame.hand_aug - frame.hand_ref).norm();
    CHECK(displaced == doctest::Approx(20.0 / 400.0).epsilon(0.1));
    CHECK(std::abs(displaced - 0.05) < 0.005);
  }
  CHECK(saw_plateau);
}

TEST_CASE("an event demanding 2 m of displacement fails feasibility") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 3.0, 0.02);
  // 200 N at 100 N/m: implied displacement 2.0 m, far past every limit.
  const InteractionEvent ev = lateral_ramp(model, 0.5, 200.0, 100.0);
  const auto sim = simulate_event(model, clip, ev, IkParams{}, TaskWeights{},
                                  FeasibilityLimits{}, clip.frames[0]);
  CHECK(!sim.feasible);
  CHECK(sim.failure_frame >= 0);
  REQUIRE(!sim.violations.empty());
  CHECK(sim.violations[0].criterion == "link tracking");
}

TEST_CASE("empty schedule yields the reference clip with zero wrenches") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 1.0, 0.02);
  const Dataset ds = augment_clip(model, clip, EventSchedule{}, IkParams{},
                                  TaskWeights{}, FeasibilityLimits{});
  CHECK(ds.frames.size() == static_cast<size_t>(clip.frame_count()));
  CHECK(ds.outcomes.empty());
  for (const auto& f : ds.frames) {
    CHECK(!f.interaction.has_value());
    CHECK((f.q_aug.joints - f.q_ref.joints).lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("infeasible events scale by 0.8^k and land accepted-after-scaling") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 3.0, 0.02);
  EventSchedule schedule;
  schedule.events.push_back(lateral_ramp(model, 0.5, 120.0, 100.0));  // 1.2 m

  const Dataset ds = augment_clip(model, clip, schedule, IkParams{},
                                  TaskWeights{}, FeasibilityLimits{});
  REQUIRE(ds.outcomes.size() == 1);
  const EventOutcome& o = ds.outcomes[0];
  CHECK(o.status == EventOutcome::Status::kAcceptedAfterScaling);
  CHECK(o.scalings > 0);
  CHECK(o.final_scale == doctest::Approx(std::pow(0.8, o.scalings)));
  CHECK(o.final_peak_force ==
        doctest::Approx(120.0 * std::pow(0.8, o.scalings)));
  CHECK(static_cast<int>(o.attempt_failures.size()) == o.scalings);
}

TEST_CASE("a 2 N event that keeps failing is rejected after 4 scalings") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 3.0, 0.02);
  EventSchedule schedule;
  schedule.events.push_back(lateral_ramp(model, 0.5, 2.0, 100.0));

  // Impossible tracking tolerance: every attempt fails until the force
  // floor rejects the event. ceil(log(1/2) / log(0.8)) = 4 scalings,
  // 2 * 0.8^4 = 0.8192 N < 1 N.
  FeasibilityLimits strict;
  strict.max_link_tracking_error = 1e-12;
  const Dataset ds = augment_clip(model, clip, schedule, IkParams{},
                                  TaskWeights{}, strict);
  REQUIRE(ds.outcomes.size() == 1);
  const EventOutcome& o = ds.outcomes[0];
  CHECK(o.status == EventOutcome::Status::kRejected);
  CHECK(o.scalings == 4);
  CHECK(o.final_peak_force == doctest::Approx(2.0 * std::pow(0.8, 4)));
  CHECK(o.final_peak_force < 1.0);
  // The rejected span stays at the reference.
  for (const auto& f : ds.frames) {
    CHECK(!f.interaction.has_value());
    CHECK((f.q_aug.joints - f.q_ref.joints).lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("accepted frames obey the spring law within the gate threshold") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 8.0, 0.02);
  SamplerConfig cfg;
  cfg.ramp_fraction = 1.0;
  Rng rng(99);
  const EventSchedule schedule = build_schedule(clip, model, cfg, rng);
  REQUIRE(!schedule.events.empty());
  const Dataset ds = augment_clip(model, clip, schedule, IkParams{},
                                  TaskWeights{}, FeasibilityLimits{});

  int interaction_frames = 0;
  for (const auto& f : ds.frames) {
    if (!f.interaction.has_value()) continue;
    ++interaction_frames;
    const Vec3 dp = f.hand_aug - f.hand_ref;
    const Vec3 spring = f.interaction->wrench.force / f.interaction->cmd.k_t;
    CHECK((dp - spring).norm() <= 0.05 + 1e-9);
    // Stance feet hold their reference pose.
    CHECK(f.residuals.foot_pos <= 0.05 + 1e-9);
  }
  CHECK(interaction_frames > 0);
}

TEST_CASE("stance feet stay put in position and orientation on accepted data") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 6.0, 0.02);
  SamplerConfig cfg;
  cfg.ramp_fraction = 1.0;
  Rng rng(7);
  const Dataset ds =
      augment_clip(model, clip, build_schedule(clip, model, cfg, rng),
                   IkParams{}, TaskWeights{}, FeasibilityLimits{});
  for (size_t i = 0; i < ds.frames.size(); ++i) {
    const auto& f = ds.frames[i];
    if (!f.interaction.has_value()) continue;
    const auto aug = forward_kinematics(model, f.q_aug);
    const auto ref = forward_kinematics(model, f.q_ref);
    for (const char* foot : {"l_foot", "r_foot"}) {
      const int idx = model.link_index(foot);
      CHECK((aug[idx].translation - ref[idx].translation).norm() <=
            0.05 + 1e-9);
      CHECK(rot_log(aug[idx].rotation * ref[idx].rotation.transposed())
                .norm() <= 0.1);
    }
  }
}

TEST_CASE("collision frames are self-consistent with the force field") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_arm_sweep_clip(model, 8.0, 0.02);
  SamplerConfig cfg;
  cfg.ramp_fraction = 0.0;
  cfg.k_env_linear = {50.0, 300.0};
  Rng rng(21);
  const EventSchedule schedule = build_schedule(clip, model, cfg, rng);
  const Dataset ds = augment_clip(model, clip, schedule, IkParams{},
                                  TaskWeights{}, FeasibilityLimits{});

  int checked = 0;
  for (const auto& f : ds.frames) {
    if (!f.interaction.has_value()) continue;
    const auto& e = *f.interaction;
    if (e.wrench.force.norm() < 2.0) continue;
    const InteractionEvent& ev = schedule.events[e.event_id];
    // The stored wrench should equal the force-field pull of the anchor on
    // the solved hand within 10%.
    const Vec3 hand = f.hand_aug;
    const double penetration = (hand - ev.anchor).dot(ev.normal);
    const Vec3 field = -ev.env.linear * penetration * ev.normal;
    CHECK((field - e.wrench.force).norm() <= 0.1 * e.wrench.force.norm());
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("datasets round trip through text and binary identically") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 2.0, 0.02);
  EventSchedule schedule;
  schedule.events.push_back(lateral_ramp(model, 0.5, 25.0, 250.0));
  const Dataset ds = augment_clip(model, clip, schedule, IkParams{},
                                  TaskWeights{}, FeasibilityLimits{});

  const std::string dir = make_temp_dir("dataset");
  write_dataset_text(dir + "/d.txt", ds);
  write_dataset_binary(dir + "/d.bin", ds);
  const Dataset text = read_dataset_text(dir + "/d.txt");
  const Dataset bin = read_dataset_binary(dir + "/d.bin");

  REQUIRE(text.frames.size() == ds.frames.size());
  REQUIRE(bin.frames.size() == ds.frames.size());
  CHECK(text.joint_names == ds.joint_names);
  CHECK(bin.joint_names == ds.joint_names);
  for (size_t i = 0; i < ds.frames.size(); ++i) {
    const auto& a = ds.frames[i];
    for (const Dataset* loaded : {&text, &bin}) {
      const auto& b = loaded->frames[i];
      CHECK(a.time == b.time);
      CHECK(a.interaction.has_value() == b.interaction.has_value());
      CHECK((a.q_aug.joints - b.q_aug.joints).lpNorm<Eigen::Infinity>() ==
            0.0);
      CHECK((a.hand_aug - b.hand_aug).norm() == 0.0);
      CHECK(a.contacts == b.contacts);
      if (a.interaction.has_value()) {
        CHECK(a.interaction->link_name == b.interaction->link_name);
        CHECK(a.interaction->event_id == b.interaction->event_id);
        CHECK((a.interaction->wrench.force - b.interaction->wrench.force)
                  .norm() == 0.0);
        CHECK(a.interaction->cmd.k_t == b.interaction->cmd.k_t);
      }
    }
  }
}

TEST_CASE("generation is deterministic byte for byte") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 4.0, 0.02);
  RunConfig config;
  config.sampler.ramp_fraction = 1.0;

  const std::string dir = make_temp_dir("determinism");
  auto run = [&](const std::string& name) {
    const Dataset ds = generate_dataset(model, clip, config, 1234);
    const std::string path = dir + "/" + name;
    write_dataset_text(path, ds);
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  CHECK(run("a.txt") == run("b.txt"));
}

TEST_CASE("event report lists one row per event") {
  const KinematicModel model = make_humanoid();
  const MotionClip clip = make_standing_clip(model, 4.0, 0.02);
  EventSchedule schedule;
  schedule.events.push_back(lateral_ramp(model, 0.5, 20.0, 300.0));
  schedule.events.push_back(lateral_ramp(model, 2.3, 130.0, 100.0));
  const Dataset ds = augment_clip(model, clip, schedule, IkParams{},
                                  TaskWeights{}, FeasibilityLimits{});
  const std::string dir = make_temp_dir("report");
  write_event_report(dir + "/events.csv", ds);
  std::ifstream in(dir + "/events.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line ==
        "event,kind,link,start,status,scalings,final_scale,final_peak_force,"
        "failure_reasons");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 2);
}

}  // namespace
}  // namespace cmaug
