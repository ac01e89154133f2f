#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "gaitcoach/motion/pose.hpp"

namespace gaitcoach::align {

/// Per-slot joint weights; the root slot is ignored.
using JointWeights = std::array<double, motion::kJointCount>;

/// 1.0 for hips, knees, ankles, shoulders and elbows, 0.5 elsewhere.
JointWeights default_weights(const motion::Skeleton& skeleton);
JointWeights unit_weights();

/// Weighted sum of local-rotation geodesic angles over non-root joints.
double frame_distance(const motion::PoseFrame& a, const motion::PoseFrame& b,
                      const JointWeights& weights);

using FramePair = std::pair<std::size_t, std::size_t>;

struct WarpPath {
  std::vector<FramePair> pairs;
  double cost = 0.0;
};

/// Classic DTW with steps (1,0), (0,1), (1,1) over an n x m cost function.
/// Among equal-cost predecessors the diagonal wins, then (i-1, j), then (i, j-1).
WarpPath dtw(std::size_t n, std::size_t m, const std::function<double(std::size_t, std::size_t)>& cost);

/// DTW between two frame ranges. Pairs are offset by the given frame indices.
WarpPath dtw_align(std::span<const motion::PoseFrame> a, std::span<const motion::PoseFrame> b,
                   const JointWeights& weights, std::size_t offset_a = 0, std::size_t offset_b = 0);

}  // namespace gaitcoach::align
