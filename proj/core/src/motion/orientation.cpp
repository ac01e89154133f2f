#include "gaitcoach/motion/orientation.hpp"

#include <cmath>

#include "gaitcoach/error.hpp"

namespace gaitcoach::motion {

double travel_heading(const MotionSequence& seq) {
  if (seq.size() < 2) {
    throw Error(ErrorCode::cannot_infer_heading, "cannot infer heading: need at least 2 frames");
  }
  const Vec3 d = seq.frames().back().root_translation - seq.frames().front().root_translation;
  const double horizontal = std::hypot(d.x(), d.z());
  if (horizontal < 1e-9) {
    throw Error(ErrorCode::cannot_infer_heading, "cannot infer heading: subject is stationary");
  }
  return std::atan2(d.x(), d.z());
}

MotionSequence rotate_about_vertical(const MotionSequence& seq, double yaw) {
  const Quat turn(Eigen::AngleAxisd(yaw, Vec3::UnitY()));
  std::vector<PoseFrame> frames = seq.frames();
  for (auto& f : frames) {
    f.rotations[0] = (turn * f.rotations[0]).normalized();
    f.root_translation = turn * f.root_translation;
  }
  return MotionSequence(seq.skeleton(), seq.fps(), std::move(frames));
}

MotionSequence normalize_orientation(const MotionSequence& seq) {
  const double heading = travel_heading(seq);
  if (heading == 0.0) return seq;
  return rotate_about_vertical(seq, -heading);
}

}  // namespace gaitcoach::motion
