#pragma once

#include <array>
#include <vector>

#include "gaitcoach/motion/skeleton.hpp"

namespace gaitcoach::motion {

/// Local (parent-relative) joint rotations in skeleton slot order plus the
/// world translation of the root.
struct PoseFrame {
  std::array<Quat, kJointCount> rotations;
  Vec3 root_translation = Vec3::Zero();

  static PoseFrame identity();
};

using Positions = std::array<Vec3, kJointCount>;
using Rotations = std::array<Quat, kJointCount>;

class MotionSequence {
 public:
  /// Throws Error on fps <= 0, empty frames or non-unit rotations.
  MotionSequence(Skeleton skeleton, double fps, std::vector<PoseFrame> frames);

  const Skeleton& skeleton() const noexcept { return skeleton_; }
  double fps() const noexcept { return fps_; }
  const std::vector<PoseFrame>& frames() const noexcept { return frames_; }
  const PoseFrame& frame(std::size_t i) const { return frames_.at(i); }
  std::size_t size() const noexcept { return frames_.size(); }
  double subject_height() const noexcept { return skeleton_.t_pose_height(); }
  double duration() const noexcept { return static_cast<double>(frames_.size() - 1) / fps_; }

 private:
  Skeleton skeleton_;
  double fps_;
  std::vector<PoseFrame> frames_;
};

}  // namespace gaitcoach::motion
