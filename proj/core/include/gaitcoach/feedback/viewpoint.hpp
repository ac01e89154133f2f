#pragma once

#include <optional>
#include <utility>

#include <nlohmann/json.hpp>

#include "gaitcoach/attributes/meta.hpp"
#include "gaitcoach/motion/pose.hpp"

namespace gaitcoach::feedback {

struct Viewpoint {
  motion::Vec3 view_dir = motion::Vec3::UnitZ();  // camera toward subject
  motion::Vec3 up = motion::Vec3::UnitY();
  motion::Vec3 target = motion::Vec3::Zero();
  double distance = 0.0;
  double azimuth = 0.0;    // degrees, from anterior toward the subject's left
  double elevation = 0.0;  // degrees above the horizontal
  bool fallback = false;   // degenerate geometry, lateral view used
};

/// Camera looking along the normal of the plane that contains the
/// difference, placed on the attribute's side of the body.
/// `displacement` is the (wrong, correct) position for positional metas.
Viewpoint suggest_viewpoint(const motion::Positions& pos, const motion::Skeleton& skeleton,
                            const attributes::AttributeMeta& meta,
                            const std::optional<std::pair<motion::Vec3, motion::Vec3>>& displacement = {});

nlohmann::json to_json(const Viewpoint& v);

}  // namespace gaitcoach::feedback
