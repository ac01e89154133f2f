#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "gaitcoach/motion/pose.hpp"

namespace gaitcoach::motion {

// Pose-sequence document, version "1":
//   {"version": "1", "fps": 30,
//    "skeleton": [{"name": "pelvis", "parent": null, "offset": [x, y, z]}, ...],
//    "frames": [{"q": [[w, x, y, z] x 24], "t": [x, y, z]}, ...]}
// Rotations within 1e-3 of unit norm are renormalized; others are rejected.

MotionSequence parse_motion(std::string_view document);
MotionSequence motion_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const MotionSequence& seq);
nlohmann::json to_json(const Skeleton& skeleton);
nlohmann::json to_json(const PoseFrame& frame);
std::string serialize_motion(const MotionSequence& seq);

Skeleton skeleton_from_json(const nlohmann::json& doc);
PoseFrame frame_from_json(const nlohmann::json& doc, std::size_t frame_index = 0);

nlohmann::json to_json(const Vec3& v);
nlohmann::json to_json(const Quat& q);

}  // namespace gaitcoach::motion
