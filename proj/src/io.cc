// Copyright 2026 The orient-bench Authors.
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

#include "orient/io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "orient/error.h"

namespace orient {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void ThrowParse(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kParse, where + ": " + what);
}

double Num(double v) {
  if (!std::isfinite(v)) ThrowInvalid("cannot serialize a non-finite value");
  return Round9(v);
}

Json NumArray(std::span<const double> values) {
  Json a = Json::array();
  for (double v : values) a.push_back(Num(v));
  return a;
}

Json BoxJson(const OrientedBox& b) {
  return Json{{"cx", Num(b.cx)},
              {"cy", Num(b.cy)},
              {"l", Num(b.length)},
              {"w", Num(b.width)},
              {"yaw_deg", Num(RadToDeg(b.yaw))}};
}

OrientedBox BoxFromJson(const Json& j) {
  return {j.at("cx").get<double>(), j.at("cy").get<double>(),
          j.at("l").get<double>(), j.at("w").get<double>(),
          DegToRad(j.at("yaw_deg").get<double>())};
}

Json WaypointsJson(std::span<const Vec2> waypoints,
                   std::span<const double> yaw) {
  Json a = Json::array();
  for (size_t k = 0; k < waypoints.size(); ++k) {
    Json p = {Num(waypoints[k].x), Num(waypoints[k].y)};
    if (k < yaw.size()) p.push_back(Num(RadToDeg(yaw[k])));
    a.push_back(std::move(p));
  }
  return a;
}

void WaypointsFromJson(const Json& j, std::vector<Vec2>& waypoints,
                       std::vector<double>& yaw) {
  waypoints.clear();
  yaw.clear();
  for (const Json& p : j) {
    if (p.size() < 2 || p.size() > 3) {
      throw Error(ErrorCode::kParse, "waypoint must be [x, y] or [x, y, yaw]");
    }
    waypoints.push_back({p[0].get<double>(), p[1].get<double>()});
    if (p.size() == 3) yaw.push_back(DegToRad(p[2].get<double>()));
  }
  if (!yaw.empty() && yaw.size() != waypoints.size()) {
    throw Error(ErrorCode::kParse, "waypoint yaw given for only some steps");
  }
}

std::vector<std::string> ReadLines(const std::string& path) {
  std::istringstream in(ReadFile(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      lines.push_back(line);
    }
  }
  return lines;
}

// Parses each non-blank line, attributing failures to path:line.
template <typename F>
void ForEachJsonLine(const std::string& path, F&& fn) {
  const std::vector<std::string> lines = ReadLines(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string where = path + ":" + std::to_string(i + 1);
    try {
      fn(Json::parse(lines[i]));
    } catch (const Json::exception& e) {
      ThrowParse(where, e.what());
    } catch (const Error& e) {
      ThrowParse(where, e.what());
    }
  }
}

Json MatrixJson(const Eigen::MatrixXd& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(Num(m(r, c)));
  }
  return Json{{"shape", {m.rows(), m.cols()}}, {"data", std::move(data)}};
}

Eigen::MatrixXd MatrixFromJson(const Json& j, Eigen::Index rows,
                               Eigen::Index cols, const std::string& name) {
  const auto shape = j.at("shape").get<std::vector<Eigen::Index>>();
  if (shape.size() != 2 || shape[0] != rows || shape[1] != cols) {
    throw Error(ErrorCode::kParse, "tensor '" + name + "' has shape mismatch");
  }
  const auto data = j.at("data").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw Error(ErrorCode::kParse, "tensor '" + name + "' has wrong size");
  }
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data[r * cols + c];
  }
  return m;
}

Json OptionalJson(const std::optional<double>& v) {
  return v ? Json(Num(*v)) : Json(nullptr);
}

std::optional<double> OptionalFromJson(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

std::string Cell(const std::optional<double>& v, double scale = 1.0) {
  if (!v) return "—";
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << *v * scale;
  return out.str();
}

// Display width in code points, so the em dash counts as one column.
size_t Width(const std::string& s) {
  size_t n = 0;
  for (unsigned char ch : s) n += (ch & 0xC0) != 0x80;
  return n;
}

}  // namespace

double Round9(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return std::strtod(buf, nullptr);
}

std::string FormatNumber(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

void WriteDataset(const std::string& path, const Dataset& dataset) {
  std::string text;
  auto emit = [&](std::span<const SynthActor> actors, const char* split) {
    for (const SynthActor& a : actors) {
      Json j;
      j["frame"] = a.gt.frame;
      j["id"] = a.gt.id;
      j["box"] = BoxJson(a.gt.box);
      j["waypoints"] = WaypointsJson(a.gt.waypoints, a.gt.yaw);
      j["features"] = NumArray(a.features);
      j["split"] = split;
      text += j.dump();
      text += '\n';
    }
  };
  emit(dataset.train, "train");
  emit(dataset.val, "val");
  WriteFile(path, text);
}

Dataset ReadDataset(const std::string& path) {
  Dataset ds;
  ForEachJsonLine(path, [&](const Json& j) {
    SynthActor a;
    a.gt.frame = j.at("frame").get<int64_t>();
    a.gt.id = j.at("id").get<int64_t>();
    a.gt.box = BoxFromJson(j.at("box"));
    WaypointsFromJson(j.at("waypoints"), a.gt.waypoints, a.gt.yaw);
    a.features = j.at("features").get<std::vector<double>>();
    const std::string split = j.at("split").get<std::string>();
    if (split == "train") {
      ds.train.push_back(std::move(a));
    } else if (split == "val") {
      ds.val.push_back(std::move(a));
    } else {
      throw Error(ErrorCode::kParse, "split must be 'train' or 'val'");
    }
  });
  return ds;
}

void WriteDetections(const std::string& path,
                     std::span<const DetectionRecord> dets) {
  std::string text;
  for (const DetectionRecord& d : dets) {
    Json j;
    j["frame"] = d.frame;
    j["id"] = d.id;
    j["box"] = BoxJson(d.box);
    j["waypoints"] = WaypointsJson(d.waypoints, d.yaw);
    j["score"] = Num(d.score);
    if (d.flip_prob) j["flip_prob"] = Num(*d.flip_prob);
    text += j.dump();
    text += '\n';
  }
  WriteFile(path, text);
}

std::vector<DetectionRecord> ReadDetections(const std::string& path) {
  std::vector<DetectionRecord> dets;
  ForEachJsonLine(path, [&](const Json& j) {
    DetectionRecord d;
    d.frame = j.at("frame").get<int64_t>();
    d.id = j.value("id", int64_t{-1});
    d.box = BoxFromJson(j.at("box"));
    if (j.contains("waypoints")) {
      WaypointsFromJson(j.at("waypoints"), d.waypoints, d.yaw);
    }
    d.score = j.at("score").get<double>();
    d.flip_prob = OptionalFromJson(j, "flip_prob");
    dets.push_back(std::move(d));
  });
  return dets;
}

void WriteCheckpoint(const std::string& path, const ModelParams& p) {
  Json j;
  j["format"] = "orient-bench-checkpoint";
  j["version"] = kCheckpointVersion;
  j["method"] = p.method.Name();
  j["beta"] = Num(p.loss.beta);
  j["no_half"] = p.loss.no_half;
  j["no_flip"] = p.loss.no_flip;
  j["horizon"] = p.horizon;
  j["input_dim"] = p.input_dim;
  j["hidden"] = p.hidden;
  Json t;
  t["input_mean"] = MatrixJson(p.input_mean);
  t["input_scale"] = MatrixJson(p.input_scale);
  t["w1"] = MatrixJson(p.w1);
  t["b1"] = MatrixJson(p.b1);
  t["w_head"] = MatrixJson(p.w_head);
  t["b_head"] = MatrixJson(p.b_head);
  t["w_traj"] = MatrixJson(p.w_traj);
  t["b_traj"] = MatrixJson(p.b_traj);
  j["tensors"] = std::move(t);
  WriteFile(path, j.dump(1) + "\n");
}

ModelParams ReadCheckpoint(const std::string& path) {
  try {
    const Json j = Json::parse(ReadFile(path));
    if (j.at("format") != "orient-bench-checkpoint") {
      throw Error(ErrorCode::kParse, "not an orient-bench checkpoint");
    }
    if (j.at("version").get<int>() != kCheckpointVersion) {
      throw Error(ErrorCode::kParse, "unsupported checkpoint version");
    }
    ModelParams p;
    p.method = Method::Parse(j.at("method").get<std::string>());
    p.loss.beta = j.at("beta").get<double>();
    p.loss.no_half = j.at("no_half").get<bool>();
    p.loss.no_flip = j.at("no_flip").get<bool>();
    p.horizon = j.at("horizon").get<int>();
    p.input_dim = j.at("input_dim").get<int>();
    p.hidden = j.at("hidden").get<int>();
    if (p.horizon < 1 || p.input_dim < 1 || p.hidden < 1) {
      throw Error(ErrorCode::kParse, "checkpoint dimensions must be >= 1");
    }
    const Json& t = j.at("tensors");
    const Eigen::Index in = p.input_dim, hid = p.hidden;
    const Eigen::Index head = p.head_size(), traj = 2 * p.horizon;
    p.input_mean = MatrixFromJson(t.at("input_mean"), in, 1, "input_mean");
    p.input_scale = MatrixFromJson(t.at("input_scale"), in, 1, "input_scale");
    p.w1 = MatrixFromJson(t.at("w1"), hid, in, "w1");
    p.b1 = MatrixFromJson(t.at("b1"), hid, 1, "b1");
    p.w_head = MatrixFromJson(t.at("w_head"), head, hid, "w_head");
    p.b_head = MatrixFromJson(t.at("b_head"), head, 1, "b_head");
    p.w_traj = MatrixFromJson(t.at("w_traj"), traj, hid, "w_traj");
    p.b_traj = MatrixFromJson(t.at("b_traj"), traj, 1, "b_traj");
    return p;
  } catch (const Json::exception& e) {
    ThrowParse(path, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    ThrowParse(path, e.what());
  }
}

void WriteLossHistory(const std::string& path,
                      std::span<const double> history) {
  std::string text = "epoch,mean_loss\n";
  for (size_t i = 0; i < history.size(); ++i) {
    text += std::to_string(i + 1) + "," + FormatNumber(history[i]) + "\n";
  }
  WriteFile(path, text);
}

void WriteReport(const std::string& path, const EvalReport& r) {
  Json j;
  j["name"] = r.name;
  j["method"] = r.method;
  j["ap"] = Num(r.ap);
  j["aos"] = Num(r.aos);
  j["num_detections"] = r.num_detections;
  j["num_gts"] = r.num_gts;
  j["errors"] = Json{{"hoe_all_deg", OptionalJson(r.errors.hoe_all)},
                     {"foe_all_deg", OptionalJson(r.errors.foe_all)},
                     {"foe_moving_deg", OptionalJson(r.errors.foe_moving)},
                     {"l2_all_m", OptionalJson(r.errors.l2_all)},
                     {"l2_moving_m", OptionalJson(r.errors.l2_moving)},
                     {"tp_all", r.errors.tp_all},
                     {"tp_moving", r.errors.tp_moving}};
  j["operating_point"] = Json{{"threshold", Num(r.operating_point.threshold)},
                              {"recall", Num(r.operating_point.recall)},
                              {"reached", r.operating_point.reached}};
  j["mean_flip_prob"] = OptionalJson(r.mean_flip_prob);
  if (r.flip_bins) {
    Json bins = Json::array();
    for (const FlipBin& b : *r.flip_bins) {
      bins.push_back(Json{{"bin_lo", Num(b.lo)},
                          {"bin_hi", Num(b.hi)},
                          {"count", b.count},
                          {"frac", Num(b.frac)},
                          {"mean_foe_deg", OptionalJson(b.mean_foe_deg)},
                          {"mean_speed_mps", OptionalJson(b.mean_speed)}});
    }
    j["flip_bins"] = std::move(bins);
  } else {
    j["flip_bins"] = nullptr;
  }
  WriteFile(path, j.dump(2) + "\n");
}

EvalReport ReadReport(const std::string& path) {
  try {
    const Json j = Json::parse(ReadFile(path));
    EvalReport r;
    r.name = j.at("name").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.ap = j.at("ap").get<double>();
    r.aos = j.at("aos").get<double>();
    r.num_detections = j.at("num_detections").get<int>();
    r.num_gts = j.at("num_gts").get<int>();
    const Json& e = j.at("errors");
    r.errors.hoe_all = OptionalFromJson(e, "hoe_all_deg");
    r.errors.foe_all = OptionalFromJson(e, "foe_all_deg");
    r.errors.foe_moving = OptionalFromJson(e, "foe_moving_deg");
    r.errors.l2_all = OptionalFromJson(e, "l2_all_m");
    r.errors.l2_moving = OptionalFromJson(e, "l2_moving_m");
    r.errors.tp_all = e.at("tp_all").get<int>();
    r.errors.tp_moving = e.at("tp_moving").get<int>();
    const Json& op = j.at("operating_point");
    r.operating_point = {op.at("threshold").get<double>(),
                         op.at("recall").get<double>(),
                         op.at("reached").get<bool>()};
    r.mean_flip_prob = OptionalFromJson(j, "mean_flip_prob");
    if (j.contains("flip_bins") && !j.at("flip_bins").is_null()) {
      std::vector<FlipBin> bins;
      for (const Json& b : j.at("flip_bins")) {
        FlipBin fb;
        fb.lo = b.at("bin_lo").get<double>();
        fb.hi = b.at("bin_hi").get<double>();
        fb.count = b.at("count").get<int>();
        fb.frac = b.at("frac").get<double>();
        fb.mean_foe_deg = OptionalFromJson(b, "mean_foe_deg");
        fb.mean_speed = OptionalFromJson(b, "mean_speed_mps");
        bins.push_back(fb);
      }
      r.flip_bins = std::move(bins);
    }
    return r;
  } catch (const Json::exception& e) {
    ThrowParse(path, e.what());
  }
}

void WritePrCurve(const std::string& path, std::span<const PrPoint> curve) {
  std::string text = "recall,precision,similarity\n";
  for (const PrPoint& p : curve) {
    text += FormatNumber(p.recall) + "," + FormatNumber(p.precision) + "," +
            FormatNumber(p.similarity) + "\n";
  }
  WriteFile(path, text);
}

void WriteFlipBins(const std::string& path, std::span<const FlipBin> bins) {
  auto opt = [](const std::optional<double>& v) {
    return v ? FormatNumber(*v) : std::string();
  };
  std::string text = "bin_lo,bin_hi,mean_foe_deg,mean_speed_mps,frac\n";
  for (const FlipBin& b : bins) {
    text += FormatNumber(b.lo) + "," + FormatNumber(b.hi) + "," +
            opt(b.mean_foe_deg) + "," + opt(b.mean_speed) + "," +
            FormatNumber(b.frac) + "\n";
  }
  WriteFile(path, text);
}

void WriteLandscapeCsv(const std::string& path, const Landscape& landscape) {
  std::string text = "s,c,loss\n";
  const int n = landscape.size();
  text.reserve(static_cast<size_t>(n) * n * 28);
  for (int ci = 0; ci < n; ++ci) {
    for (int si = 0; si < n; ++si) {
      text += FormatNumber(landscape.axis[si]);
      text += ',';
      text += FormatNumber(landscape.axis[ci]);
      text += ',';
      text += FormatNumber(landscape.at(si, ci));
      text += '\n';
    }
  }
  WriteFile(path, text);
}

void WriteMinimaCsv(const std::string& path,
                    std::span<const GridPoint> minima) {
  std::string text = "s,c,loss\n";
  for (const GridPoint& p : minima) {
    text += FormatNumber(p.s) + "," + FormatNumber(p.c) + "," +
            FormatNumber(p.loss) + "\n";
  }
  WriteFile(path, text);
}

void WriteLandscapePgm(const std::string& path, const Landscape& landscape) {
  const int n = landscape.size();
  const auto [lo_it, hi_it] =
      std::minmax_element(landscape.values.begin(), landscape.values.end());
  const double lo = *lo_it;
  const double span = *hi_it - lo;
  std::string text = "P2\n" + std::to_string(n) + " " + std::to_string(n) +
                     "\n255\n";
  for (int ci = n - 1; ci >= 0; --ci) {
    for (int si = 0; si < n; ++si) {
      const double t = span > 0.0 ? (landscape.at(si, ci) - lo) / span : 0.0;
      text += std::to_string(static_cast<int>(std::lround(255.0 * t)));
      text += si + 1 < n ? ' ' : '\n';
    }
  }
  WriteFile(path, text);
}

std::string FormatReportTable(std::span<const EvalReport> reports) {
  const std::vector<std::string> header = {
      "Method", "AOS", "AP", "HOE", "FOE-all", "FOE-moving",
      "ℓ2-all", "ℓ2-moving", "p_flip"};
  std::vector<std::vector<std::string>> rows = {header};
  for (const EvalReport& r : reports) {
    rows.push_back({r.name, Cell(r.aos, 100.0), Cell(r.ap, 100.0),
                    Cell(r.errors.hoe_all), Cell(r.errors.foe_all),
                    Cell(r.errors.foe_moving), Cell(r.errors.l2_all),
                    Cell(r.errors.l2_moving), Cell(r.mean_flip_prob)});
  }
  std::vector<size_t> widths(header.size(), 0);
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], Width(row[c]));
    }
  }
  std::string out;
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t c = 0; c < rows[r].size(); ++c) {
      const std::string pad(widths[c] - Width(rows[r][c]), ' ');
      // Names are left-aligned, numbers right-aligned.
      out += c == 0 ? rows[r][c] + pad : pad + rows[r][c];
      out += c + 1 < rows[r].size() ? "  " : "\n";
    }
    if (r == 0) {
      size_t total = 0;
      for (size_t w : widths) total += w + 2;
      out += std::string(total - 2, '-') + "\n";
    }
  }
  return out;
}

}  // namespace orient
