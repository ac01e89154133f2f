#include "gaitcoach/align/dtw.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

#include "gaitcoach/error.hpp"
#include "gaitcoach/motion/kinematics.hpp"

namespace gaitcoach::align {

using motion::Joint;

JointWeights default_weights(const motion::Skeleton& skeleton) {
  JointWeights w;
  w.fill(0.5);
  for (Joint j : {Joint::left_hip, Joint::right_hip, Joint::left_knee, Joint::right_knee,
                  Joint::left_ankle, Joint::right_ankle, Joint::left_shoulder,
                  Joint::right_shoulder, Joint::left_elbow, Joint::right_elbow}) {
    w[skeleton.index(j)] = 1.0;
  }
  w[skeleton.root()] = 0.0;
  return w;
}

JointWeights unit_weights() {
  JointWeights w;
  w.fill(1.0);
  return w;
}

double frame_distance(const motion::PoseFrame& a, const motion::PoseFrame& b,
                      const JointWeights& weights) {
  double d = 0.0;
  // Slot 0 is always the root.
  for (std::size_t j = 1; j < motion::kJointCount; ++j) {
    if (weights[j] != 0.0) d += weights[j] * motion::geodesic_angle(a.rotations[j], b.rotations[j]);
  }
  return d;
}

WarpPath dtw(std::size_t n, std::size_t m,
             const std::function<double(std::size_t, std::size_t)>& cost) {
  if (n == 0 || m == 0) throw Error(ErrorCode::invalid_argument, "dtw needs non-empty ranges");
  enum : std::uint8_t { diag, up, left, origin };
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<std::uint8_t> step(n * m);
  std::vector<double> prev(m, inf), cur(m, inf);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double c = cost(i, j);
      if (i == 0 && j == 0) {
        cur[j] = c;
        step[0] = origin;
        continue;
      }
      double best = inf;
      std::uint8_t move = origin;
      if (i > 0 && j > 0) { best = prev[j - 1]; move = diag; }
      if (i > 0 && prev[j] < best) { best = prev[j]; move = up; }
      if (j > 0 && cur[j - 1] < best) { best = cur[j - 1]; move = left; }
      cur[j] = best + c;
      step[i * m + j] = move;
    }
    std::swap(prev, cur);
  }

  WarpPath path;
  path.cost = prev[m - 1];
  std::size_t i = n - 1, j = m - 1;
  for (;;) {
    path.pairs.emplace_back(i, j);
    const auto move = step[i * m + j];
    if (move == origin) break;
    if (move == diag) { --i; --j; }
    else if (move == up) { --i; }
    else { --j; }
  }
  std::reverse(path.pairs.begin(), path.pairs.end());
  return path;
}

WarpPath dtw_align(std::span<const motion::PoseFrame> a, std::span<const motion::PoseFrame> b,
                   const JointWeights& weights, std::size_t offset_a, std::size_t offset_b) {
  WarpPath path = dtw(a.size(), b.size(), [&](std::size_t i, std::size_t j) {
    return frame_distance(a[i], b[j], weights);
  });
  for (auto& [i, j] : path.pairs) {
    i += offset_a;
    j += offset_b;
  }
  return path;
}

}  // namespace gaitcoach::align
