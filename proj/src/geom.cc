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

#include "orient/geom.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "orient/error.h"

namespace orient {
namespace {

constexpr double kTwoPi = 2.0 * kPi;
// Relative yaw closer than this to a multiple of 90 degrees takes the
// axis-aligned path.
constexpr double kAxisAlignedTolerance = 1e-12;

void RequireFinite(double v, const char* what) {
  if (!std::isfinite(v)) {
    ThrowInvalid(std::string(what) + ": non-finite angle");
  }
}

void ValidateBox(const OrientedBox& b) {
  if (!std::isfinite(b.cx) || !std::isfinite(b.cy) || !std::isfinite(b.yaw) ||
      !std::isfinite(b.length) || !std::isfinite(b.width)) {
    ThrowInvalid("box has non-finite fields");
  }
  if (b.length <= 0.0 || b.width <= 0.0) {
    ThrowInvalid("box dimensions must be positive");
  }
}

double Overlap1d(double lo1, double hi1, double lo2, double hi2) {
  return std::max(0.0, std::min(hi1, hi2) - std::max(lo1, lo2));
}

}  // namespace

double WrapFull(double rad) {
  RequireFinite(rad, "WrapFull");
  double r = std::remainder(rad, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double WrapHalf(double rad) {
  RequireFinite(rad, "WrapHalf");
  double r = std::remainder(rad, kPi);
  if (r <= -kPi / 2) r += kPi;
  return r;
}

double FullRangeError(double gt, double pred) {
  return std::abs(WrapFull(gt - pred));
}

double HalfRangeError(double gt, double pred) {
  return std::abs(WrapHalf(gt - pred));
}

double Norm(Vec2 v) { return std::hypot(v.x, v.y); }

ConvexPolygon BoxCorners(const OrientedBox& box) {
  ValidateBox(box);
  const double c = std::cos(box.yaw);
  const double s = std::sin(box.yaw);
  const double hl = 0.5 * box.length;
  const double hw = 0.5 * box.width;
  const Vec2 local[4] = {{hl, hw}, {-hl, hw}, {-hl, -hw}, {hl, -hw}};
  ConvexPolygon out;
  out.reserve(4);
  for (const Vec2& p : local) {
    out.push_back({box.cx + c * p.x - s * p.y, box.cy + s * p.x + c * p.y});
  }
  return out;
}

ConvexPolygon ClipConvex(const ConvexPolygon& subject,
                         const ConvexPolygon& clip) {
  if (subject.size() < 3 || clip.size() < 3) return {};
  ConvexPolygon output = subject;
  for (size_t e = 0; e < clip.size() && !output.empty(); ++e) {
    const Vec2 a = clip[e];
    const Vec2 edge = clip[(e + 1) % clip.size()] - a;
    const ConvexPolygon input = std::move(output);
    output.clear();
    for (size_t i = 0; i < input.size(); ++i) {
      const Vec2 prev = input[(i + input.size() - 1) % input.size()];
      const Vec2 cur = input[i];
      const double d_prev = Cross(edge, prev - a);
      const double d_cur = Cross(edge, cur - a);
      const bool prev_in = d_prev >= 0.0;
      const bool cur_in = d_cur >= 0.0;
      if (cur_in != prev_in) {
        const double t = d_prev / (d_prev - d_cur);
        output.push_back(prev + t * (cur - prev));
      }
      if (cur_in) output.push_back(cur);
    }
  }
  // Drop consecutive duplicates introduced by vertices lying on clip edges.
  ConvexPolygon dedup;
  dedup.reserve(output.size());
  for (const Vec2& p : output) {
    if (dedup.empty() || Norm(p - dedup.back()) > 1e-12) dedup.push_back(p);
  }
  while (dedup.size() > 1 && Norm(dedup.front() - dedup.back()) <= 1e-12) {
    dedup.pop_back();
  }
  return dedup;
}

double PolygonArea(const ConvexPolygon& polygon) {
  if (polygon.size() < 3) return 0.0;
  double twice = 0.0;
  for (size_t i = 0; i < polygon.size(); ++i) {
    twice += Cross(polygon[i], polygon[(i + 1) % polygon.size()]);
  }
  return std::abs(0.5 * twice);
}

bool BoxContains(const OrientedBox& box, Vec2 p) {
  const double dx = p.x - box.cx;
  const double dy = p.y - box.cy;
  const double c = std::cos(box.yaw);
  const double s = std::sin(box.yaw);
  const double lx = c * dx + s * dy;
  const double ly = -s * dx + c * dy;
  return std::abs(lx) <= 0.5 * box.length && std::abs(ly) <= 0.5 * box.width;
}

double RotatedIou(const OrientedBox& a, const OrientedBox& b) {
  ValidateBox(a);
  ValidateBox(b);

  // Work in the frame of `a`, where `a` is axis-aligned at the origin.
  const double c = std::cos(a.yaw);
  const double s = std::sin(a.yaw);
  const double dx = b.cx - a.cx;
  const double dy = b.cy - a.cy;
  const Vec2 center{c * dx + s * dy, -s * dx + c * dy};
  const double rel = b.yaw - a.yaw;

  const double area_a = a.length * a.width;
  const double area_b = b.length * b.width;
  double inter = 0.0;

  const double quarter = kPi / 2;
  const double k = std::round(rel / quarter);
  if (std::abs(rel - k * quarter) < kAxisAlignedTolerance) {
    // Rectangles are centrally symmetric, so only the parity of k matters.
    const bool swapped = static_cast<long long>(std::abs(k)) % 2 == 1;
    const double hl = 0.5 * (swapped ? b.width : b.length);
    const double hw = 0.5 * (swapped ? b.length : b.width);
    inter = Overlap1d(-0.5 * a.length, 0.5 * a.length, center.x - hl,
                      center.x + hl) *
            Overlap1d(-0.5 * a.width, 0.5 * a.width, center.y - hw,
                      center.y + hw);
  } else {
    const OrientedBox local_a{0.0, 0.0, a.length, a.width, 0.0};
    const OrientedBox local_b{center.x, center.y, b.length, b.width, rel};
    inter = PolygonArea(ClipConvex(BoxCorners(local_b), BoxCorners(local_a)));
  }
  inter = std::clamp(inter, 0.0, std::min(area_a, area_b));
  const double uni = area_a + area_b - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

}  // namespace orient
