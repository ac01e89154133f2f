// Reference implementations the library is checked against. Kept deliberately
// naive: recursion, explicit matrices, no shared helpers from core.
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gaitcoach/motion/pose.hpp"

namespace oracle {

using gaitcoach::motion::MotionSequence;
using gaitcoach::motion::PoseFrame;
using gaitcoach::motion::Skeleton;
using gaitcoach::motion::Vec3;

/// World transform of joint i as a 4x4 matrix, found by walking to the root.
inline Eigen::Matrix4d world_matrix(const PoseFrame& f, const Skeleton& sk, std::size_t i) {
  Eigen::Matrix4d local = Eigen::Matrix4d::Identity();
  local.topLeftCorner<3, 3>() = f.rotations[i].normalized().toRotationMatrix();
  const auto parent = sk.joint(i).parent;
  if (!parent) {
    local.topRightCorner<3, 1>() = f.root_translation;
    return local;
  }
  local.topRightCorner<3, 1>() = sk.joint(i).offset;
  return world_matrix(f, sk, *parent) * local;
}

inline Vec3 joint_position(const PoseFrame& f, const Skeleton& sk, std::size_t i) {
  return world_matrix(f, sk, i).topRightCorner<3, 1>();
}

/// Textbook DTW by memoized recursion over the full (n x m) table.
inline double dtw_cost(std::size_t n, std::size_t m, const std::function<double(std::size_t, std::size_t)>& c) {
  std::map<std::pair<std::size_t, std::size_t>, double> memo;
  std::function<double(std::size_t, std::size_t)> D = [&](std::size_t i, std::size_t j) -> double {
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    double best;
    if (i == 0 && j == 0) {
      best = 0.0;
    } else {
      best = std::numeric_limits<double>::infinity();
      if (i > 0 && j > 0) best = std::min(best, D(i - 1, j - 1));
      if (i > 0) best = std::min(best, D(i - 1, j));
      if (j > 0) best = std::min(best, D(i, j - 1));
    }
    const double v = best + c(i, j);
    memo[key] = v;
    return v;
  };
  return D(n - 1, m - 1);
}

/// Angle at the vertex by the law of cosines.
inline double law_of_cosines(const Vec3& a, const Vec3& o, const Vec3& b) {
  const double x = (a - o).norm(), y = (b - o).norm(), z = (a - b).norm();
  return std::acos(std::clamp((x * x + y * y - z * z) / (2 * x * y), -1.0, 1.0));
}

inline gaitcoach::motion::Quat random_unit(std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  gaitcoach::motion::Quat q(n(rng), n(rng), n(rng), n(rng));
  return q.normalized();
}

inline PoseFrame random_pose(std::mt19937& rng, double spread = 1.0) {
  PoseFrame f = PoseFrame::identity();
  std::uniform_real_distribution<double> u(-spread, spread);
  for (auto& q : f.rotations) {
    const Vec3 axis = Vec3(u(rng), u(rng), u(rng));
    if (axis.norm() < 1e-6) continue;
    q = gaitcoach::motion::Quat(Eigen::AngleAxisd(axis.norm(), axis.normalized()));
  }
  f.root_translation = Vec3(u(rng), 1.0 + u(rng), u(rng));
  return f;
}

}  // namespace oracle
