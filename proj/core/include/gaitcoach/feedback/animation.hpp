#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaitcoach/feedback/viewpoint.hpp"

namespace gaitcoach::feedback {

/// Arrow from the wrong to the corrected joint position.
struct PositionalMarker {
  motion::Vec3 from, to, base;
};

/// The angle wedge (vertex and both arm endpoints) at each keyframe.
struct AngularMarker {
  motion::Vec3 vertex_wrong, a_wrong, b_wrong;
  motion::Vec3 vertex_corrected, a_corrected, b_corrected;
};

/// Offset segment on the cycle's temporal axis.
struct TemporalMarker {
  double sample = 0.0, exemplar = 0.0, offset = 0.0;
};

struct CategoricalMarker {
  std::string sample, exemplar;
};

using Marker = std::variant<PositionalMarker, AngularMarker, TemporalMarker, CategoricalMarker>;

inline constexpr std::size_t kDefaultClipFrames = 30;
inline constexpr double kDefaultClipFps = 30.0;
inline constexpr std::size_t kDefaultHoldFrames = 15;

struct CorrectionAnimation {
  double fps = kDefaultClipFps;
  std::size_t hold_frames = kDefaultHoldFrames;  // corrected pose held before looping
  std::vector<motion::PoseFrame> frames;
  std::optional<std::size_t> joint;  // slot being interpolated
  Marker marker;
  Viewpoint viewpoint;
};

/// Slerps the single joint that differs between the keyframes with
/// smoothstep timing. P and A metas only.
CorrectionAnimation build_animation(const motion::PoseFrame& wrong, const motion::PoseFrame& corrected,
                                    const motion::Skeleton& skeleton, const attributes::AttributeMeta& meta,
                                    std::size_t n_frames = kDefaultClipFrames);

/// Marker-only clip for temporal and categorical differences: the pose is held.
CorrectionAnimation build_marker_clip(const motion::PoseFrame& pose, const motion::Skeleton& skeleton,
                                      const attributes::AttributeMeta& meta, Marker marker,
                                      std::size_t n_frames = kDefaultClipFrames);

double smoothstep(double u) noexcept;

nlohmann::json to_json(const Marker& marker);
nlohmann::json to_json(const CorrectionAnimation& clip, const motion::Skeleton& skeleton);

}  // namespace gaitcoach::feedback
