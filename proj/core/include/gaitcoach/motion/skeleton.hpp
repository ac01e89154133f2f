#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace gaitcoach::motion {

using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;

inline constexpr std::size_t kJointCount = 24;

// Body-model joints in their canonical order. Coordinates are right handed
// with +Y up, +Z anterior and +X toward the subject's left.
enum class Joint : std::uint8_t {
  pelvis,
  left_hip,
  right_hip,
  spine1,
  left_knee,
  right_knee,
  spine2,
  left_ankle,
  right_ankle,
  spine3,
  left_foot,
  right_foot,
  neck,
  left_collar,
  right_collar,
  head,
  left_shoulder,
  right_shoulder,
  left_elbow,
  right_elbow,
  left_wrist,
  right_wrist,
  left_hand,
  right_hand,
};

std::string_view joint_name(Joint joint) noexcept;
std::optional<Joint> joint_from_name(std::string_view name) noexcept;

struct JointDef {
  std::string name;
  std::optional<std::size_t> parent;
  Vec3 offset = Vec3::Zero();  // T-pose offset from the parent, meters
};

/// Validated 24-joint kinematic tree. Joints may appear in any order as long
/// as parents precede children; `index(Joint)` maps canonical ids to slots.
class Skeleton {
 public:
  explicit Skeleton(std::vector<JointDef> joints);

  /// Canonical T-pose used by the synthetic generator and the editor.
  static Skeleton canonical(double scale = 1.0);

  std::size_t size() const noexcept { return joints_.size(); }
  const std::vector<JointDef>& joints() const noexcept { return joints_; }
  const JointDef& joint(std::size_t i) const { return joints_.at(i); }

  std::size_t index(Joint joint) const noexcept {
    return index_[static_cast<std::size_t>(joint)];
  }
  std::optional<std::size_t> find(std::string_view name) const noexcept;
  std::optional<std::size_t> parent(std::size_t i) const { return joints_.at(i).parent; }
  std::size_t root() const noexcept { return index_[0]; }

  /// True when `descendant` lies strictly below `ancestor` in the tree.
  bool is_descendant(std::size_t descendant, std::size_t ancestor) const;

  /// Vertical extent of the T-pose joint positions.
  double t_pose_height() const noexcept { return height_; }

  double bone_length(std::size_t i) const { return joints_.at(i).offset.norm(); }

  friend bool operator==(const Skeleton& a, const Skeleton& b);

 private:
  std::vector<JointDef> joints_;
  std::array<std::size_t, kJointCount> index_{};
  double height_ = 0.0;
};

}  // namespace gaitcoach::motion
