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

// Batch CLI over the shared C API. Exit codes: 0 success, 1 validation or
// runtime failure (failing entity on stderr), 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cmaug/cmaug.h"
#include "json.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct ModelHandle {
  cmaug_model* ptr = nullptr;
  ~ModelHandle() { cmaug_model_free(ptr); }
};
struct ClipHandle {
  cmaug_clip* ptr = nullptr;
  ~ClipHandle() { cmaug_clip_free(ptr); }
};

int fail(const std::string& what) {
  std::cerr << "error: " << what << ": " << cmaug_last_error() << "\n";
  return kExitRuntime;
}

/// Layers an optional config file over the library defaults and returns the
/// resolved JSON document.
std::string resolve_config(const std::string& config_path, uint64_t seed) {
  nlohmann::ordered_json merged =
      nlohmann::ordered_json::parse(cmaug_default_config_json());
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      throw std::runtime_error("cannot open config file '" + config_path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    nlohmann::ordered_json overlay;
    try {
      overlay = nlohmann::ordered_json::parse(ss.str());
    } catch (const std::exception& e) {
      throw std::runtime_error("config file '" + config_path +
                               "': " + e.what());
    }
    merged.merge_patch(overlay);
  }
  merged["sampler"]["seed"] = seed;
  return merged.dump(2);
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) s += " ";
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Compliant motion augmentation: turn a reference humanoid clip into a "
      "dataset of kinematically feasible compliant responses to sampled "
      "wrenches at commanded stiffness."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cmaug_version()));

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "Generate an augmented dataset");
  std::string gen_model, gen_clip, gen_config, gen_out;
  uint64_t gen_seed = 0;
  bool gen_binary = false;
  int gen_jobs = 1;
  gen->add_option("--model", gen_model, "model file")->required();
  gen->add_option("--clip", gen_clip, "clip file")->required();
  gen->add_option("--config", gen_config, "config file (JSON, partial ok)");
  gen->add_option("--seed", gen_seed, "rng seed")->default_val(0);
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_flag("--binary", gen_binary, "also write dataset.bin");
  gen->add_option("--jobs", gen_jobs, "worker count (output-independent)")
      ->default_val(1)
      ->check(CLI::PositiveNumber);

  // bounds
  auto* bounds = app.add_subcommand(
      "bounds", "Feasible stiffness bounds from a sensing-noise budget");
  double force_noise = 0, pos_noise = 0, force_acc = 0, pos_acc = 0;
  bounds->add_option("--force-noise", force_noise, "force estimate noise (N)")
      ->required();
  bounds->add_option("--pos-noise", pos_noise, "position estimate noise (m)")
      ->required();
  bounds->add_option("--force-acc", force_acc, "required force accuracy (N)")
      ->required();
  bounds->add_option("--pos-acc", pos_acc, "required position accuracy (m)")
      ->required();

  // analyze-stiffness
  auto* analyze = app.add_subcommand(
      "analyze-stiffness", "Effective-stiffness curve over a dataset");
  std::string an_dataset, an_out;
  int an_bins = 6;
  analyze->add_option("--dataset", an_dataset, "dataset.txt path")->required();
  analyze->add_option("--bins", an_bins, "log-spaced stiffness bins")
      ->default_val(6)
      ->check(CLI::PositiveNumber);
  analyze->add_option("--out", an_out, "output CSV path")->required();

  // metrics
  auto* metrics = app.add_subcommand(
      "metrics", "Tracking-error metrics between two trajectories");
  std::string m_model, m_a, m_b;
  metrics->add_option("--model", m_model, "model file")->required();
  metrics->add_option("--traj-a", m_a, "clip file A")->required();
  metrics->add_option("--traj-b", m_b, "clip file B")->required();

  // validate
  auto* validate = app.add_subcommand("validate", "Validate a model/clip pair");
  std::string v_model, v_clip;
  validate->add_option("--model", v_model, "model file")->required();
  validate->add_option("--clip", v_clip, "clip file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      ModelHandle model;
      if (cmaug_model_load(gen_model.c_str(), &model.ptr) != CMAUG_OK) {
        return fail("--model " + gen_model);
      }
      ClipHandle clip;
      if (cmaug_clip_load(gen_clip.c_str(), model.ptr, &clip.ptr) != CMAUG_OK) {
        return fail("--clip " + gen_clip);
      }
      const std::string config = resolve_config(gen_config, gen_seed);
      if (cmaug_generate(model.ptr, clip.ptr, gen_model.c_str(),
                         gen_clip.c_str(), config.c_str(), gen_seed,
                         gen_out.c_str(), join_args(argc, argv).c_str(),
                         gen_binary ? 1 : 0, gen_jobs) != CMAUG_OK) {
        return fail("gen-data");
      }
      std::cout << "wrote " << gen_out << "/dataset.txt\n";
      return 0;
    }

    if (bounds->parsed()) {
      double k_min = 0, k_max = 0;
      if (cmaug_stiffness_bounds(force_noise, pos_noise, force_acc, pos_acc,
                                 &k_min, &k_max) != CMAUG_OK) {
        return fail("bounds");
      }
      std::printf("k_min=%g k_max=%g\n", k_min, k_max);
      return 0;
    }

    if (analyze->parsed()) {
      if (cmaug_analyze_stiffness(an_dataset.c_str(), an_bins,
                                  an_out.c_str()) != CMAUG_OK) {
        return fail("--dataset " + an_dataset);
      }
      std::cout << "wrote " << an_out << "\n";
      return 0;
    }

    if (metrics->parsed()) {
      ModelHandle model;
      if (cmaug_model_load(m_model.c_str(), &model.ptr) != CMAUG_OK) {
        return fail("--model " + m_model);
      }
      double m[4] = {0, 0, 0, 0};
      if (cmaug_tracking_metrics(model.ptr, m_a.c_str(), m_b.c_str(), m) !=
          CMAUG_OK) {
        return fail("metrics");
      }
      std::printf("joint_mean_deg,joint_sem_deg,keypoint_mean_cm,keypoint_sem_cm\n");
      std::printf("%.3f,%.3f,%.3f,%.3f\n", m[0], m[1], m[2], m[3]);
      return 0;
    }

    if (validate->parsed()) {
      ModelHandle model;
      if (cmaug_model_load(v_model.c_str(), &model.ptr) != CMAUG_OK) {
        return fail("--model " + v_model);
      }
      ClipHandle clip;
      if (cmaug_clip_load(v_clip.c_str(), model.ptr, &clip.ptr) != CMAUG_OK) {
        return fail("--clip " + v_clip);
      }
      std::vector<char> report(1 << 16);
      const cmaug_status s =
          cmaug_validate(model.ptr, clip.ptr, report.data(), report.size());
      if (s == CMAUG_OK) {
        std::cout << "ok\n";
        return 0;
      }
      std::cerr << "error: validate: " << cmaug_last_error() << "\n"
                << report.data();
      return kExitRuntime;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
