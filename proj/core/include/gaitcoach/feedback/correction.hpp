#pragma once

#include "gaitcoach/attributes/meta.hpp"
#include "gaitcoach/motion/pose.hpp"

namespace gaitcoach::feedback {

struct Correction {
  motion::PoseFrame frame;
  std::size_t joint = 0;  // the only slot whose local rotation changed
  double start_value = 0.0;
  double target_value = 0.0;
};

/// Moves one joint so the FK-measured attribute equals `target`.
///   A1  rotate J_o in the angle plane (the end joint below J_o swings)
///   A2  rotate J_o in the plane of its vector and the axis
///   P1/P2  minimal rotation of parent(J_o) to reach the target
/// Throws Error(target_unreachable) when no such rotation exists, and
/// Error(invalid_argument) for temporal or categorical metas.
Correction solve_corrected_pose(const motion::PoseFrame& frame, const motion::Skeleton& skeleton,
                                const attributes::AttributeMeta& meta, double target);

}  // namespace gaitcoach::feedback
