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

#include "cmaug/dataset.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "cmaug/textio.hpp"
#include "json.hpp"

namespace cmaug {

namespace {

constexpr char kTextMagic[] = "cmaug-dataset 1";
constexpr char kBinaryMagic[8] = {'C', 'M', 'A', 'U', 'G', 'B', '1', '\0'};

const char* status_name(EventOutcome::Status s) {
  switch (s) {
    case EventOutcome::Status::kAccepted:
      return "accepted";
    case EventOutcome::Status::kAcceptedAfterScaling:
      return "accepted-after-scaling";
    case EventOutcome::Status::kRejected:
      return "rejected";
  }
  return "?";
}

void append_configuration(std::string& line, const Configuration& c) {
  line += " " + format_double(c.base.translation.x());
  line += " " + format_double(c.base.translation.y());
  line += " " + format_double(c.base.translation.z());
  const Eigen::Vector4d q = c.base.rotation.quaternion_wxyz();
  for (int i = 0; i < 4; ++i) line += " " + format_double(q(i));
  for (int i = 0; i < c.joints.size(); ++i)
    line += " " + format_double(c.joints[i]);
}

Configuration parse_configuration(std::istringstream& in, int njoints) {
  Configuration c;
  double px, py, pz, qw, qx, qy, qz;
  in >> px >> py >> pz >> qw >> qx >> qy >> qz;
  c.base.translation = Vec3(px, py, pz);
  c.base.rotation = Rotation::from_quaternion(qw, qx, qy, qz);
  c.joints.resize(njoints);
  for (int i = 0; i < njoints; ++i) in >> c.joints[i];
  return c;
}

}  // namespace

void write_dataset_text(const std::string& path, const Dataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write dataset '" + path + "'");
  }
  out << kTextMagic << "\n";
  out << "dt " << format_double(ds.dt) << "\n";
  out << "joints";
  for (const auto& n : ds.joint_names) out << " " << n;
  out << "\nfeet";
  for (const auto& n : ds.foot_links) out << " " << n;
  out << "\ncolumns time event link force(3) torque(3) k_t k_r f_peak"
         " q_ref(3+4+joints) q_aug(3+4+joints)"
         " res(hand_pos,hand_rot,foot_pos,com_xy,keypoint_pos,joint_posture)"
         " hand_ref(3) hand_aug(3) contacts(feet)\n";
  out << "data\n";
  for (const auto& f : ds.frames) {
    std::string line = format_double(f.time);
    const bool on = f.interaction.has_value();
    line += " " + std::to_string(on ? f.interaction->event_id : -1);
    line += " ";
    line += on ? f.interaction->link_name : "-";
    const Wrench w = on ? f.interaction->wrench : Wrench{};
    for (int i = 0; i < 3; ++i) line += " " + format_double(w.force[i]);
    for (int i = 0; i < 3; ++i) line += " " + format_double(w.torque[i]);
    line += " " + format_double(on ? f.interaction->cmd.k_t : 0.0);
    line += " " + format_double(on ? f.interaction->cmd.k_r : 0.0);
    line += " " + format_double(on ? f.interaction->event_peak_force : 0.0);
    append_configuration(line, f.q_ref);
    append_configuration(line, f.q_aug);
    line += " " + format_double(f.residuals.hand_pos);
    line += " " + format_double(f.residuals.hand_rot);
    line += " " + format_double(f.residuals.foot_pos);
    line += " " + format_double(f.residuals.com_xy);
    line += " " + format_double(f.residuals.keypoint_pos);
    line += " " + format_double(f.residuals.joint_posture);
    for (int i = 0; i < 3; ++i) line += " " + format_double(f.hand_ref[i]);
    for (int i = 0; i < 3; ++i) line += " " + format_double(f.hand_aug[i]);
    for (uint8_t c : f.contacts) line += " " + std::to_string(int(c));
    out << line << "\n";
  }
}

Dataset read_dataset_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open dataset '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line) || line != kTextMagic) {
    throw Error(ErrorCode::kParseError,
                "dataset '" + path + "' missing '" + kTextMagic + "' header");
  }
  Dataset ds;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "dt") {
      ls >> ds.dt;
    } else if (key == "joints") {
      std::string n;
      while (ls >> n) ds.joint_names.push_back(n);
    } else if (key == "feet") {
      std::string n;
      while (ls >> n) ds.foot_links.push_back(n);
    } else if (key == "columns") {
      continue;
    } else if (key == "data") {
      break;
    } else {
      throw Error(ErrorCode::kParseError,
                  "dataset header: unknown key '" + key + "'");
    }
  }
  const int njoints = static_cast<int>(ds.joint_names.size());
  const int nfeet = static_cast<int>(ds.foot_links.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    AugmentedFrame f;
    int event_id;
    std::string link;
    ls >> f.time >> event_id >> link;
    Wrench w;
    double k_t, k_r, f_peak;
    for (int i = 0; i < 3; ++i) ls >> w.force[i];
    for (int i = 0; i < 3; ++i) ls >> w.torque[i];
    ls >> k_t >> k_r >> f_peak;
    f.q_ref = parse_configuration(ls, njoints);
    f.q_aug = parse_configuration(ls, njoints);
    ls >> f.residuals.hand_pos >> f.residuals.hand_rot >>
        f.residuals.foot_pos >> f.residuals.com_xy >>
        f.residuals.keypoint_pos >> f.residuals.joint_posture;
    for (int i = 0; i < 3; ++i) ls >> f.hand_ref[i];
    for (int i = 0; i < 3; ++i) ls >> f.hand_aug[i];
    f.contacts.resize(nfeet);
    for (int i = 0; i < nfeet; ++i) {
      int c;
      ls >> c;
      f.contacts[i] = c != 0;
    }
    if (!ls && nfeet > 0) {
      throw Error(ErrorCode::kParseError, "dataset record is truncated");
    }
    if (event_id >= 0) {
      EventContext ctx;
      ctx.event_id = event_id;
      ctx.link_name = link;
      ctx.wrench = w;
      ctx.cmd = {k_t, k_r};
      ctx.event_peak_force = f_peak;
      f.interaction = std::move(ctx);
    }
    ds.frames.push_back(std::move(f));
  }
  return ds;
}

void write_dataset_binary(const std::string& path, const Dataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write dataset '" + path + "'");
  }
  auto put_u32 = [&](uint32_t v) {
    char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff),
                 char((v >> 24) & 0xff)};
    out.write(b, 4);
  };
  auto put_f64 = [&](double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, 8);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = char((bits >> (8 * i)) & 0xff);
    out.write(b, 8);
  };
  out.write(kBinaryMagic, 8);
  put_u32(static_cast<uint32_t>(ds.joint_names.size()));
  put_u32(static_cast<uint32_t>(ds.foot_links.size()));
  put_f64(ds.dt);
  for (const auto& n : ds.joint_names) {
    put_u32(static_cast<uint32_t>(n.size()));
    out.write(n.data(), static_cast<std::streamsize>(n.size()));
  }
  for (const auto& n : ds.foot_links) {
    put_u32(static_cast<uint32_t>(n.size()));
    out.write(n.data(), static_cast<std::streamsize>(n.size()));
  }
  put_u32(static_cast<uint32_t>(ds.frames.size()));

  const int njoints = static_cast<int>(ds.joint_names.size());
  auto put_config = [&](const Configuration& c) {
    for (int i = 0; i < 3; ++i) put_f64(c.base.translation[i]);
    const Eigen::Vector4d q = c.base.rotation.quaternion_wxyz();
    for (int i = 0; i < 4; ++i) put_f64(q(i));
    for (int i = 0; i < njoints; ++i) put_f64(c.joints[i]);
  };
  for (const auto& f : ds.frames) {
    const bool on = f.interaction.has_value();
    const std::string link = on ? f.interaction->link_name : "-";
    const uint32_t record_len = static_cast<uint32_t>(
        8 + 4 + 4 + link.size() + 8 * (3 + 3 + 2 + 1) +
        2 * 8 * (7 + njoints) + 8 * 6 + 8 * 6 + f.contacts.size());
    put_u32(record_len);
    put_f64(f.time);
    put_u32(static_cast<uint32_t>(on ? f.interaction->event_id : -1));
    put_u32(static_cast<uint32_t>(link.size()));
    out.write(link.data(), static_cast<std::streamsize>(link.size()));
    const Wrench w = on ? f.interaction->wrench : Wrench{};
    for (int i = 0; i < 3; ++i) put_f64(w.force[i]);
    for (int i = 0; i < 3; ++i) put_f64(w.torque[i]);
    put_f64(on ? f.interaction->cmd.k_t : 0.0);
    put_f64(on ? f.interaction->cmd.k_r : 0.0);
    put_f64(on ? f.interaction->event_peak_force : 0.0);
    put_config(f.q_ref);
    put_config(f.q_aug);
    put_f64(f.residuals.hand_pos);
    put_f64(f.residuals.hand_rot);
    put_f64(f.residuals.foot_pos);
    put_f64(f.residuals.com_xy);
    put_f64(f.residuals.keypoint_pos);
    put_f64(f.residuals.joint_posture);
    for (int i = 0; i < 3; ++i) put_f64(f.hand_ref[i]);
    for (int i = 0; i < 3; ++i) put_f64(f.hand_aug[i]);
    for (uint8_t c : f.contacts) out.put(char(c));
  }
}

Dataset read_dataset_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open dataset '" + path + "'");
  }
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kBinaryMagic, 8) != 0) {
    throw Error(ErrorCode::kParseError, "bad binary dataset magic");
  }
  auto get_u32 = [&]() {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 |
           uint32_t(b[3]) << 24;
  };
  auto get_f64 = [&]() {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= uint64_t(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  };
  auto get_string = [&]() {
    const uint32_t len = get_u32();
    std::string s(len, '\0');
    in.read(s.data(), len);
    return s;
  };

  Dataset ds;
  const uint32_t njoints = get_u32();
  const uint32_t nfeet = get_u32();
  ds.dt = get_f64();
  for (uint32_t i = 0; i < njoints; ++i) ds.joint_names.push_back(get_string());
  for (uint32_t i = 0; i < nfeet; ++i) ds.foot_links.push_back(get_string());
  const uint32_t nframes = get_u32();

  auto get_config = [&]() {
    Configuration c;
    const double px = get_f64(), py = get_f64(), pz = get_f64();
    c.base.translation = Vec3(px, py, pz);
    const double qw = get_f64(), qx = get_f64(), qy = get_f64(),
                 qz = get_f64();
    c.base.rotation = Rotation::from_quaternion(qw, qx, qy, qz);
    c.joints.resize(njoints);
    for (uint32_t i = 0; i < njoints; ++i) c.joints[i] = get_f64();
    return c;
  };

  for (uint32_t fi = 0; fi < nframes; ++fi) {
    get_u32();  // record length, informational
    AugmentedFrame f;
    f.time = get_f64();
    const int32_t event_id = static_cast<int32_t>(get_u32());
    const std::string link = get_string();
    Wrench w;
    for (int i = 0; i < 3; ++i) w.force[i] = get_f64();
    for (int i = 0; i < 3; ++i) w.torque[i] = get_f64();
    const double k_t = get_f64(), k_r = get_f64(), f_peak = get_f64();
    f.q_ref = get_config();
    f.q_aug = get_config();
    f.residuals.hand_pos = get_f64();
    f.residuals.hand_rot = get_f64();
    f.residuals.foot_pos = get_f64();
    f.residuals.com_xy = get_f64();
    f.residuals.keypoint_pos = get_f64();
    f.residuals.joint_posture = get_f64();
    for (int i = 0; i < 3; ++i) f.hand_ref[i] = get_f64();
    for (int i = 0; i < 3; ++i) f.hand_aug[i] = get_f64();
    f.contacts.resize(nfeet);
    for (uint32_t i = 0; i < nfeet; ++i) f.contacts[i] = in.get() != 0;
    if (!in) {
      throw Error(ErrorCode::kParseError, "binary dataset is truncated");
    }
    if (event_id >= 0) {
      EventContext ctx;
      ctx.event_id = event_id;
      ctx.link_name = link;
      ctx.wrench = w;
      ctx.cmd = {k_t, k_r};
      ctx.event_peak_force = f_peak;
      f.interaction = std::move(ctx);
    }
    ds.frames.push_back(std::move(f));
  }
  return ds;
}

void write_event_report(const std::string& path, const Dataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write event report '" + path + "'");
  }
  out << "event,kind,link,start,status,scalings,final_scale,final_peak_force,"
         "failure_reasons\n";
  for (const auto& o : ds.outcomes) {
    out << o.event_index << ","
        << (o.kind == EventKind::kRamp ? "ramp" : "collision") << "," << o.link
        << "," << format_double(o.start) << "," << status_name(o.status) << ","
        << o.scalings << "," << format_double(o.final_scale) << ","
        << format_double(o.final_peak_force) << ",\"";
    for (size_t i = 0; i < o.attempt_failures.size(); ++i) {
      if (i > 0) out << "; ";
      out << o.attempt_failures[i];
    }
    out << "\"\n";
  }
}

void write_manifest(const std::string& path, const ManifestInfo& info) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["tool_version"] = info.tool_version;
  j["command"] = info.command;
  j["seed"] = info.seed;
  j["inputs"] = {
      {"model", {{"path", info.model_path},
                 {"fnv1a64", to_hex(fnv1a64_file(info.model_path))}}},
      {"clip", {{"path", info.clip_path},
                {"fnv1a64", to_hex(fnv1a64_file(info.clip_path))}}},
  };
  j["config"] = nlohmann::ordered_json::parse(info.config_json);
  j["outputs"] = info.outputs;
  j["events"] = {{"total", info.events_total},
                 {"accepted", info.events_accepted},
                 {"accepted_after_scaling", info.events_accepted_after_scaling},
                 {"rejected", info.events_rejected}};
  j["wall_time_s"] = info.wall_time_s;

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) {
      throw Error(ErrorCode::kIoError, "cannot write manifest '" + path + "'");
    }
    out << j.dump(2) << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw Error(ErrorCode::kIoError, "cannot finalize manifest '" + path + "'");
  }
}

}  // namespace cmaug
