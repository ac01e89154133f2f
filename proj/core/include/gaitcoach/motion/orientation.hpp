#pragma once

#include "gaitcoach/motion/pose.hpp"

namespace gaitcoach::motion {

/// Heading (yaw about +Y, radians) of the net horizontal root displacement
/// between the first and last frame; zero means travelling along +Z.
double travel_heading(const MotionSequence& seq);

/// Rotates the whole sequence about the vertical axis so the subject travels
/// along +Z. Only the root rotation and root translation change.
/// Throws Error(cannot_infer_heading) for a stationary subject.
MotionSequence normalize_orientation(const MotionSequence& seq);

/// Applies a yaw about +Y to the root of every frame.
MotionSequence rotate_about_vertical(const MotionSequence& seq, double yaw);

}  // namespace gaitcoach::motion
