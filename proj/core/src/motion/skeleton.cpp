#include "gaitcoach/motion/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "gaitcoach/error.hpp"
#include "gaitcoach/motion/pose.hpp"

namespace gaitcoach::motion {

namespace {

constexpr std::array<std::string_view, kJointCount> kNames = {
    "pelvis",         "left_hip",       "right_hip",   "spine1",      "left_knee",
    "right_knee",     "spine2",         "left_ankle",  "right_ankle", "spine3",
    "left_foot",      "right_foot",     "neck",        "left_collar", "right_collar",
    "head",           "left_shoulder",  "right_shoulder", "left_elbow", "right_elbow",
    "left_wrist",     "right_wrist",    "left_hand",   "right_hand",
};

constexpr std::array<int, kJointCount> kCanonicalParents = {
    -1, 0, 0, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 9, 9, 12, 13, 14, 16, 17, 18, 19, 20, 21,
};

}  // namespace

std::string_view joint_name(Joint joint) noexcept {
  return kNames[static_cast<std::size_t>(joint)];
}

std::optional<Joint> joint_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<Joint>(i);
  }
  return std::nullopt;
}

Skeleton::Skeleton(std::vector<JointDef> joints) : joints_(std::move(joints)) {
  if (joints_.size() != kJointCount) {
    throw Error(ErrorCode::invalid_skeleton,
                "skeleton must define exactly " + std::to_string(kJointCount) + " joints");
  }
  std::unordered_set<std::string_view> seen;
  index_.fill(std::numeric_limits<std::size_t>::max());
  std::size_t roots = 0;
  for (std::size_t i = 0; i < joints_.size(); ++i) {
    const auto& def = joints_[i];
    const auto id = joint_from_name(def.name);
    if (!id) throw Error(ErrorCode::unknown_joint, "unknown joint name '" + def.name + "'");
    if (!seen.insert(def.name).second) {
      throw Error(ErrorCode::invalid_skeleton, "duplicate joint name '" + def.name + "'");
    }
    index_[static_cast<std::size_t>(*id)] = i;
    if (!def.parent) {
      ++roots;
      if (i != 0) throw Error(ErrorCode::invalid_skeleton, "root joint must be the first joint");
    } else if (*def.parent >= i) {
      throw Error(ErrorCode::invalid_skeleton,
                  "non-topological parent order at joint '" + def.name + "'");
    }
    if (!def.offset.allFinite()) {
      throw Error(ErrorCode::invalid_skeleton, "non-finite offset at joint '" + def.name + "'");
    }
  }
  if (roots != 1) throw Error(ErrorCode::invalid_skeleton, "skeleton must have exactly one root");
  if (joints_[0].name != joint_name(Joint::pelvis)) {
    throw Error(ErrorCode::invalid_skeleton, "root joint must be the pelvis");
  }

  // Identity-rotation FK; the root sits at the origin.
  std::vector<Vec3> pos(joints_.size(), Vec3::Zero());
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 1; i < joints_.size(); ++i) {
    pos[i] = pos[*joints_[i].parent] + joints_[i].offset;
    lo = std::min(lo, pos[i].y());
    hi = std::max(hi, pos[i].y());
  }
  height_ = hi - lo;
  if (!(height_ > 0.0)) throw Error(ErrorCode::invalid_skeleton, "T-pose height must be positive");
}

Skeleton Skeleton::canonical(double scale) {
  static const std::array<Vec3, kJointCount> offsets = {
      Vec3(0.0, 0.0, 0.0),     // pelvis
      Vec3(0.09, -0.09, 0.0),  // left_hip
      Vec3(-0.09, -0.09, 0.0), // right_hip
      Vec3(0.0, 0.11, 0.0),    // spine1
      Vec3(0.0, -0.42, 0.0),   // left_knee
      Vec3(0.0, -0.42, 0.0),   // right_knee
      Vec3(0.0, 0.14, 0.0),    // spine2
      Vec3(0.0, -0.43, 0.0),   // left_ankle
      Vec3(0.0, -0.43, 0.0),   // right_ankle
      Vec3(0.0, 0.06, 0.0),    // spine3
      Vec3(0.0, 0.0, 0.14),    // left_foot (toe level with the ankle in T-pose)
      Vec3(0.0, 0.0, 0.14),    // right_foot
      Vec3(0.0, 0.22, 0.0),    // neck
      Vec3(0.07, 0.14, 0.0),   // left_collar
      Vec3(-0.07, 0.14, 0.0),  // right_collar
      Vec3(0.0, 0.12, 0.0),    // head
      Vec3(0.11, 0.03, 0.0),   // left_shoulder
      Vec3(-0.11, 0.03, 0.0),  // right_shoulder
      Vec3(0.26, 0.0, 0.0),    // left_elbow
      Vec3(-0.26, 0.0, 0.0),   // right_elbow
      Vec3(0.25, 0.0, 0.0),    // left_wrist
      Vec3(-0.25, 0.0, 0.0),   // right_wrist
      Vec3(0.08, 0.0, 0.0),    // left_hand
      Vec3(-0.08, 0.0, 0.0),   // right_hand
  };
  std::vector<JointDef> joints;
  joints.reserve(kJointCount);
  for (std::size_t i = 0; i < kJointCount; ++i) {
    JointDef def;
    def.name = std::string(kNames[i]);
    if (kCanonicalParents[i] >= 0) def.parent = static_cast<std::size_t>(kCanonicalParents[i]);
    def.offset = offsets[i] * scale;
    joints.push_back(std::move(def));
  }
  return Skeleton(std::move(joints));
}

std::optional<std::size_t> Skeleton::find(std::string_view name) const noexcept {
  const auto id = joint_from_name(name);
  if (!id) return std::nullopt;
  return index(*id);
}

bool Skeleton::is_descendant(std::size_t descendant, std::size_t ancestor) const {
  auto cur = joints_.at(descendant).parent;
  while (cur) {
    if (*cur == ancestor) return true;
    cur = joints_[*cur].parent;
  }
  return false;
}

bool operator==(const Skeleton& a, const Skeleton& b) {
  if (a.joints_.size() != b.joints_.size()) return false;
  for (std::size_t i = 0; i < a.joints_.size(); ++i) {
    const auto& x = a.joints_[i];
    const auto& y = b.joints_[i];
    if (x.name != y.name || x.parent != y.parent || x.offset != y.offset) return false;
  }
  return true;
}

PoseFrame PoseFrame::identity() {
  PoseFrame f;
  f.rotations.fill(Quat::Identity());
  return f;
}

MotionSequence::MotionSequence(Skeleton skeleton, double fps, std::vector<PoseFrame> frames)
    : skeleton_(std::move(skeleton)), fps_(fps), frames_(std::move(frames)) {
  if (!(fps_ > 0.0) || !std::isfinite(fps_)) {
    throw Error(ErrorCode::invalid_argument, "fps must be positive");
  }
  if (frames_.empty()) throw Error(ErrorCode::invalid_argument, "motion has no frames");
  for (std::size_t f = 0; f < frames_.size(); ++f) {
    const auto& frame = frames_[f];
    if (!frame.root_translation.allFinite()) {
      throw Error(ErrorCode::invalid_argument,
                  "non-finite root translation at frame " + std::to_string(f));
    }
    for (const auto& q : frame.rotations) {
      if (!(std::abs(q.norm() - 1.0) <= 1e-6)) {
        throw Error(ErrorCode::invalid_rotation,
                    "invalid rotation norm at frame " + std::to_string(f));
      }
    }
  }
}

}  // namespace gaitcoach::motion
