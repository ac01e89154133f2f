#pragma once

#include <vector>

#include "gaitcoach/motion/pose.hpp"

namespace gaitcoach::motion {

struct WorldPose {
  Positions positions;
  Rotations rotations;  // accumulated world rotation of every joint
};

/// World-space joint positions. The root sits at the frame's root
/// translation; every other joint at parent + worldrot(parent) * offset.
Positions forward_kinematics(const PoseFrame& frame, const Skeleton& skeleton);

WorldPose world_pose(const PoseFrame& frame, const Skeleton& skeleton);

/// FK positions of every frame of a sequence.
std::vector<Positions> pose_track(const MotionSequence& seq);

/// Relative rotation angle in [0, pi], insensitive to quaternion sign.
double geodesic_angle(const Quat& a, const Quat& b);

/// Unit quaternion rotating by `angle` radians about `axis` (need not be unit).
Quat axis_angle(const Vec3& axis, double angle);

}  // namespace gaitcoach::motion
