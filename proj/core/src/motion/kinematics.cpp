#include "gaitcoach/motion/kinematics.hpp"

#include <cmath>

namespace gaitcoach::motion {

WorldPose world_pose(const PoseFrame& frame, const Skeleton& skeleton) {
  WorldPose out;
  const auto& joints = skeleton.joints();
  out.positions[0] = frame.root_translation;
  out.rotations[0] = frame.rotations[0];
  for (std::size_t i = 1; i < joints.size(); ++i) {
    const std::size_t p = *joints[i].parent;
    out.positions[i] = out.positions[p] + out.rotations[p] * joints[i].offset;
    out.rotations[i] = (out.rotations[p] * frame.rotations[i]).normalized();
  }
  return out;
}

Positions forward_kinematics(const PoseFrame& frame, const Skeleton& skeleton) {
  return world_pose(frame, skeleton).positions;
}

std::vector<Positions> pose_track(const MotionSequence& seq) {
  std::vector<Positions> track;
  track.reserve(seq.size());
  for (const auto& frame : seq.frames()) track.push_back(forward_kinematics(frame, seq.skeleton()));
  return track;
}

double geodesic_angle(const Quat& a, const Quat& b) {
  const Quat rel = a.conjugate() * b;
  return 2.0 * std::atan2(rel.vec().norm(), std::abs(rel.w()));
}

Quat axis_angle(const Vec3& axis, double angle) {
  return Quat(Eigen::AngleAxisd(angle, axis.normalized()));
}

}  // namespace gaitcoach::motion
