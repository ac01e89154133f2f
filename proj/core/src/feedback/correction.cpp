#include "gaitcoach/feedback/correction.hpp"

#include <cmath>
#include <numbers>

#include "gaitcoach/attributes/retrieve.hpp"
#include "gaitcoach/error.hpp"
#include "gaitcoach/motion/kinematics.hpp"

namespace gaitcoach::feedback {

using attributes::Subtype;
using motion::Quat;
using motion::Vec3;

namespace {

[[noreturn]] void unreachable(const std::string& why) {
  throw Error(ErrorCode::target_unreachable, "target unreachable: " + why);
}

Vec3 any_perpendicular(const Vec3& v) {
  const Vec3 seed = std::abs(v.normalized().x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitZ();
  return v.cross(seed).normalized();
}

Vec3 plane_normal(const Vec3& u, const Vec3& v) {
  const Vec3 n = u.normalized().cross(v.normalized());
  return n.norm() > 1e-8 ? Vec3(n.normalized()) : any_perpendicular(u);
}

// Applies a world-space rotation to joint j of the posed frame.
void rotate_world(motion::PoseFrame& frame, const motion::Skeleton& sk, const motion::WorldPose& wp,
                  std::size_t j, const Quat& r) {
  const Quat world = (r * wp.rotations[j]).normalized();
  const auto parent = sk.parent(j);
  frame.rotations[j] = parent ? (wp.rotations[*parent].conjugate() * world).normalized() : world;
}

}  // namespace

Correction solve_corrected_pose(const motion::PoseFrame& frame, const motion::Skeleton& sk,
                                const attributes::AttributeMeta& meta, double target) {
  const auto cls = attributes::class_of(meta.subtype);
  if (cls != attributes::AttrClass::positional && cls != attributes::AttrClass::angular) {
    throw Error(ErrorCode::invalid_argument, "only positional and angular attributes have a pose solve");
  }
  if (!std::isfinite(target)) unreachable("non-finite target");
  const motion::WorldPose wp = motion::world_pose(frame, sk);
  const auto& pos = wp.positions;
  const double current = attributes::frame_value(pos, sk, meta);
  const std::size_t o = *sk.find(*meta.joint_o);
  const std::size_t a = *sk.find(*meta.joint_a);

  Correction out{frame, o, current, target};
  if (std::abs(target - current) < 1e-12) return out;

  if (meta.subtype == Subtype::A1 || meta.subtype == Subtype::A2) {
    if (!(target >= 0.0 && target <= std::numbers::pi)) unreachable("angle outside [0, pi]");
    Vec3 n;
    double sign = 1.0;
    if (meta.subtype == Subtype::A1) {
      const std::size_t b = *sk.find(*meta.joint_b);
      const bool moves_a = sk.is_descendant(a, o), moves_b = sk.is_descendant(b, o);
      if (moves_a == moves_b) unreachable("rotating " + *meta.joint_o + " cannot change this angle alone");
      n = plane_normal(pos[a] - pos[o], pos[b] - pos[o]);
      sign = moves_b ? 1.0 : -1.0;
    } else {
      if (!sk.is_descendant(a, o)) unreachable(*meta.joint_a + " does not follow " + *meta.joint_o);
      n = plane_normal(attributes::axis_vector(*meta.axis), pos[a] - pos[o]);
    }
    rotate_world(out.frame, sk, wp, o, motion::axis_angle(n, sign * (target - current)));
    return out;
  }

  const auto parent = sk.parent(o);
  if (!parent) unreachable("the root has no parent to rotate");
  const std::size_t p = *parent;
  if (a == o || sk.is_descendant(a, p)) unreachable(*meta.joint_a + " moves with the corrected limb");
  const Vec3 bone = pos[o] - pos[p];
  const double len = bone.norm();
  if (len < 1e-12) unreachable("zero-length bone");

  // Solve for a bone direction d' with d' . e = c.
  Vec3 e;
  double c;
  if (meta.subtype == Subtype::P2) {
    e = attributes::axis_vector(*meta.axis);
    c = (target - (pos[p] - pos[a]).dot(e)) / len;
  } else {
    if (target < 0.0) unreachable("negative distance");
    const Vec3 q = pos[p] - pos[a];
    const double qn = q.norm();
    if (qn < 1e-12) unreachable("distance is fixed by the bone length");
    e = q / qn;
    c = (target * target - qn * qn - len * len) / (2.0 * len * qn);
  }
  if (std::abs(c) > 1.0 + 1e-12) unreachable("beyond the reach of " + *meta.joint_o);
  c = std::clamp(c, -1.0, 1.0);
  const Vec3 d = bone / len;
  Vec3 perp = d - d.dot(e) * e;
  perp = perp.norm() > 1e-9 ? Vec3(perp.normalized()) : any_perpendicular(e);
  const Vec3 want = c * e + std::sqrt(std::max(0.0, 1.0 - c * c)) * perp;
  rotate_world(out.frame, sk, wp, p, Quat::FromTwoVectors(d, want));
  out.joint = p;
  return out;
}

}  // namespace gaitcoach::feedback
