#include "gaitcoach/feedback/viewpoint.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gaitcoach/attributes/retrieve.hpp"
#include "gaitcoach/motion/io.hpp"

namespace gaitcoach::feedback {

using attributes::Side;
using attributes::Subtype;
using motion::Joint;
using motion::Vec3;

namespace {

constexpr double kTie = 1e-9;

// Normal of the plane through u and v, or nothing when they are colinear.
std::optional<Vec3> normal_of(const Vec3& u, const Vec3& v) {
  if (u.norm() < 1e-12 || v.norm() < 1e-12) return std::nullopt;
  const Vec3 n = u.normalized().cross(v.normalized());
  if (n.norm() < 1e-8) return std::nullopt;
  return n.normalized();
}

}  // namespace

Viewpoint suggest_viewpoint(const motion::Positions& pos, const motion::Skeleton& sk,
                            const attributes::AttributeMeta& meta,
                            const std::optional<std::pair<Vec3, Vec3>>& displacement) {
  const Vec3 lateral = attributes::body_lateral(pos, sk);
  const Vec3 anterior = lateral.cross(Vec3::UnitY());
  const Vec3 center = pos[sk.index(Joint::pelvis)];
  auto at = [&](const std::optional<std::string>& name) { return pos[*sk.find(*name)]; };

  Viewpoint vp;
  vp.target = center;
  Vec3 up = Vec3::UnitY();
  Vec3 focus = center;
  std::optional<Vec3> normal;
  switch (meta.subtype) {
    case Subtype::A1:
    case Subtype::A2: {
      const Vec3 o = at(meta.joint_o);
      const Vec3 u = at(meta.joint_a) - o;
      const Vec3 v = meta.subtype == Subtype::A1 ? Vec3(at(meta.joint_b) - o) : attributes::axis_vector(*meta.axis);
      normal = normal_of(u, v);
      if (u.norm() > 1e-12 && v.norm() > 1e-12) {
        const Vec3 sum = u.normalized() + v.normalized();
        if (sum.norm() > 1e-9) up = sum.normalized();
      }
      vp.target = focus = o;
      break;
    }
    case Subtype::P1:
    case Subtype::P2: {
      const auto [wrong, correct] = displacement.value_or(std::pair{at(meta.joint_o), at(meta.joint_o)});
      normal = normal_of(wrong - center, correct - center);
      vp.target = focus = (wrong + correct) / 2.0;
      break;
    }
    default: normal = lateral; break;
  }
  vp.fallback = !normal.has_value();
  vp.view_dir = normal.value_or(lateral);

  // Resolve the sign from where the camera sits, o = -view_dir.
  auto camera_side = [&](const Vec3& dir, double want) {
    const double s = -vp.view_dir.dot(dir);
    if (std::abs(s) <= kTie) return false;
    if (s * want < 0.0) vp.view_dir = -vp.view_dir;
    return true;
  };
  const Vec3 outward = focus - center;
  bool placed = false;
  if (meta.side == Side::left) placed = camera_side(lateral, 1.0);
  if (meta.side == Side::right) placed = camera_side(lateral, -1.0);
  if (!placed && outward.norm() > 1e-9) placed = camera_side(outward.normalized(), 1.0);
  if (!placed && meta.side == Side::neutral) placed = camera_side(lateral, -1.0);
  if (!placed) camera_side(anterior, 1.0);

  if (up.dot(Vec3::UnitY()) < 0.0) up = -up;
  Vec3 ortho = up - up.dot(vp.view_dir) * vp.view_dir;
  if (ortho.norm() < 1e-9) ortho = Vec3::UnitY() - vp.view_dir.y() * vp.view_dir;
  if (ortho.norm() < 1e-9) ortho = anterior - anterior.dot(vp.view_dir) * vp.view_dir;
  vp.up = ortho.normalized();
  if (vp.up.dot(Vec3::UnitY()) < 0.0) vp.up = -vp.up;

  vp.distance = 2.5 * sk.t_pose_height();
  const Vec3 cam = -vp.view_dir;
  const double deg = 180.0 / std::numbers::pi;
  vp.azimuth = std::atan2(cam.dot(lateral), cam.dot(anterior)) * deg;
  vp.elevation = std::asin(std::clamp(cam.y(), -1.0, 1.0)) * deg;
  return vp;
}

nlohmann::json to_json(const Viewpoint& v) {
  return {{"dir", motion::to_json(v.view_dir)},
          {"up", motion::to_json(v.up)},
          {"target", motion::to_json(v.target)},
          {"distance", v.distance},
          {"azimuth", v.azimuth},
          {"elevation", v.elevation},
          {"fallback", v.fallback}};
}

}  // namespace gaitcoach::feedback
