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

#ifndef ORIENT_GEOM_H_
#define ORIENT_GEOM_H_

#include <numbers>
#include <vector>

namespace orient {

inline constexpr double kPi = std::numbers::pi;

inline constexpr double DegToRad(double deg) { return deg * kPi / 180.0; }
inline constexpr double RadToDeg(double rad) { return rad * 180.0 / kPi; }

// Canonical full-range angle in (-pi, pi]. Throws on non-finite input.
double WrapFull(double rad);

// Canonical half-range angle in (-pi/2, pi/2]. Throws on non-finite input.
double WrapHalf(double rad);

// Full-range orientation error |WrapFull(gt - pred)|, in [0, pi].
double FullRangeError(double gt, double pred);

// Half-range orientation error |WrapHalf(gt - pred)|, in [0, pi/2]. Blind to
// 180 degree flips.
double HalfRangeError(double gt, double pred);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double Cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double Norm(Vec2 v);

// Bird's-eye-view box. `yaw` is the heading of the vehicle front.
struct OrientedBox {
  double cx = 0.0;
  double cy = 0.0;
  double length = 0.0;
  double width = 0.0;
  double yaw = 0.0;
};

// Counter-clockwise vertex loop. Fewer than 3 vertices means empty.
using ConvexPolygon = std::vector<Vec2>;

// Corners in CCW order starting at front-left. Throws on invalid boxes.
ConvexPolygon BoxCorners(const OrientedBox& box);

// Intersection of two CCW convex polygons (Sutherland-Hodgman). Edges that
// only touch produce a degenerate polygon of zero area.
ConvexPolygon ClipConvex(const ConvexPolygon& subject,
                         const ConvexPolygon& clip);

// Shoelace area; zero for degenerate polygons.
double PolygonArea(const ConvexPolygon& polygon);

// True if `p` lies inside or on the boundary of `box`.
bool BoxContains(const OrientedBox& box, Vec2 p);

// Exact BEV IoU of two rotated boxes. Throws on boxes with non-positive or
// non-finite dimensions.
double RotatedIou(const OrientedBox& a, const OrientedBox& b);

}  // namespace orient

#endif  // ORIENT_GEOM_H_
