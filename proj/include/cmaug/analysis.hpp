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

// Stiffness feasibility bounds from a sensing-noise budget, the effective
// (force/displacement) stiffness curve over a generated dataset, and
// trajectory tracking-error metrics.

#ifndef CMAUG_ANALYSIS_HPP_
#define CMAUG_ANALYSIS_HPP_

#include <string>
#include <vector>

#include "cmaug/augment.hpp"

namespace cmaug {

struct NoiseBudget {
  double force_noise = 0.0;                 // N
  double position_noise = 0.0;              // m
  double required_force_accuracy = 0.0;     // N
  double required_position_accuracy = 0.0;  // m

  void validate() const;
};

struct StiffnessBounds {
  double k_min = 0.0;  // N/m, admittance floor: force noise / position accuracy
  double k_max = 0.0;  // N/m, impedance ceiling: force accuracy / position noise
};

/// Raises kInfeasibleBudget when the bounds cross.
StiffnessBounds stiffness_bounds(const NoiseBudget& budget);

struct StiffnessCurvePoint {
  double commanded = 0.0;         // N/m, median commanded k_t in the bin
  double median_effective = 0.0;  // N/m
  int samples = 0;
};

/// Median |F| / |hand displacement| per log-spaced commanded-stiffness bin,
/// restricted to plateau frames (wrench within 1% of its event peak) with
/// displacement >= 1 mm. Empty bins are omitted with a warning.
std::vector<StiffnessCurvePoint> effective_stiffness(
    const Dataset& ds, int bins, std::vector<std::string>* warnings = nullptr);

void write_stiffness_csv(const std::string& path,
                         const std::vector<StiffnessCurvePoint>& points);

struct TrackingMetrics {
  double joint_mean_deg = 0.0;
  double joint_sem_deg = 0.0;
  double keypoint_mean_cm = 0.0;
  double keypoint_sem_cm = 0.0;
};

/// Mean joint position error in degrees (actuated joints only) and mean
/// keypoint Cartesian error in cm, with standard errors of the mean over
/// frames. Symmetric in a and b; zero iff the trajectories are identical.
TrackingMetrics tracking_metrics(const KinematicModel& model,
                                 const MotionClip& a, const MotionClip& b);

std::string tracking_metrics_csv(const TrackingMetrics& m);

}  // namespace cmaug

#endif  // CMAUG_ANALYSIS_HPP_
