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

#include "cmaug/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "cmaug/textio.hpp"

namespace cmaug {

void NoiseBudget::validate() const {
  if (!(force_noise > 0.0) || !(position_noise > 0.0) ||
      !(required_force_accuracy > 0.0) || !(required_position_accuracy > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "noise budget entries must be positive");
  }
}

StiffnessBounds stiffness_bounds(const NoiseBudget& budget) {
  budget.validate();
  StiffnessBounds b;
  b.k_min = budget.force_noise / budget.required_position_accuracy;
  b.k_max = budget.required_force_accuracy / budget.position_noise;
  if (b.k_min >= b.k_max) {
    throw Error(ErrorCode::kInfeasibleBudget,
                "infeasible budget: k_min " + format_double(b.k_min) +
                    " >= k_max " + format_double(b.k_max));
  }
  return b;
}

namespace {

double median(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

std::vector<StiffnessCurvePoint> effective_stiffness(
    const Dataset& ds, int bins, std::vector<std::string>* warnings) {
  if (bins <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "bins must be positive");
  }

  struct Sample {
    double k_cmd;
    double ratio;
  };
  std::vector<Sample> samples;
  for (const auto& f : ds.frames) {
    if (!f.interaction.has_value()) continue;
    const EventContext& e = *f.interaction;
    if (e.event_peak_force <= 0.0) continue;
    const double fmag = e.wrench.force.norm();
    if (fmag < 0.99 * e.event_peak_force) continue;  // plateau frames only
    const double disp = (f.hand_aug - f.hand_ref).norm();
    if (disp < 1e-3) continue;  // ratio ill-conditioned below 1 mm
    samples.push_back({e.cmd.k_t, fmag / disp});
  }
  if (samples.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "dataset has no plateau frames with nonzero wrench");
  }

  double lo = samples[0].k_cmd, hi = samples[0].k_cmd;
  for (const auto& s : samples) {
    lo = std::min(lo, s.k_cmd);
    hi = std::max(hi, s.k_cmd);
  }
  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi * (1.0 + 1e-12));
  const double width = (log_hi - log_lo) / bins;

  std::vector<StiffnessCurvePoint> points;
  for (int b = 0; b < bins; ++b) {
    std::vector<double> ratios, commanded;
    for (const auto& s : samples) {
      const int bin =
          width > 0.0
              ? std::min(bins - 1,
                         static_cast<int>((std::log(s.k_cmd) - log_lo) / width))
              : 0;
      if (bin == b) {
        ratios.push_back(s.ratio);
        commanded.push_back(s.k_cmd);
      }
    }
    if (ratios.empty()) {
      if (warnings != nullptr) {
        warnings->push_back("bin " + std::to_string(b) +
                            " is empty and was omitted");
      }
      continue;
    }
    StiffnessCurvePoint p;
    p.commanded = median(commanded);
    p.median_effective = median(ratios);
    p.samples = static_cast<int>(ratios.size());
    points.push_back(p);
  }
  return points;
}

void write_stiffness_csv(const std::string& path,
                         const std::vector<StiffnessCurvePoint>& points) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write curve '" + path + "'");
  }
  out << "commanded_k,median_effective_k,samples\n";
  for (const auto& p : points) {
    out << format_double(p.commanded) << ","
        << format_double(p.median_effective) << "," << p.samples << "\n";
  }
}

TrackingMetrics tracking_metrics(const KinematicModel& model,
                                 const MotionClip& a, const MotionClip& b) {
  if (a.frames.size() != b.frames.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "trajectories differ in length (" +
                    std::to_string(a.frames.size()) + " vs " +
                    std::to_string(b.frames.size()) + " frames)");
  }
  const int nframes = a.frame_count();

  std::vector<double> joint_means(nframes), keypoint_means(nframes);
  for (int f = 0; f < nframes; ++f) {
    joint_means[f] =
        model.joint_count() == 0
            ? 0.0
            : (a.frames[f].joints - b.frames[f].joints).cwiseAbs().mean() *
                  180.0 / M_PI;
    const auto pa = forward_kinematics(model, a.frames[f]);
    const auto pb = forward_kinematics(model, b.frames[f]);
    double sum = 0.0;
    for (int kp : model.keypoint_links()) {
      sum += (pa[kp].translation - pb[kp].translation).norm();
    }
    keypoint_means[f] =
        model.keypoint_links().empty()
            ? 0.0
            : 100.0 * sum / static_cast<double>(model.keypoint_links().size());
  }

  auto mean_sem = [&](const std::vector<double>& v, double* mean, double* sem) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - m) * (x - m);
    var = v.size() > 1 ? var / static_cast<double>(v.size() - 1) : 0.0;
    *mean = m;
    *sem = std::sqrt(var / static_cast<double>(v.size()));
  };

  TrackingMetrics m;
  mean_sem(joint_means, &m.joint_mean_deg, &m.joint_sem_deg);
  mean_sem(keypoint_means, &m.keypoint_mean_cm, &m.keypoint_sem_cm);
  return m;
}

std::string tracking_metrics_csv(const TrackingMetrics& m) {
  return "joint_mean_deg,joint_sem_deg,keypoint_mean_cm,keypoint_sem_cm\n" +
         format_double(m.joint_mean_deg) + "," + format_double(m.joint_sem_deg) +
         "," + format_double(m.keypoint_mean_cm) + "," +
         format_double(m.keypoint_sem_cm) + "\n";
}

}  // namespace cmaug
