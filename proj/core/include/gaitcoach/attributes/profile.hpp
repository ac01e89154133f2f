#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaitcoach/attributes/retrieve.hpp"

namespace gaitcoach::attributes {

/// Point on a horizontal plane in the body frame, relative to the pelvis.
struct PlanePoint {
  double lateral = 0.0;  // toward the subject's left
  double anterior = 0.0;
};

struct LimbPair {
  PlanePoint left;
  PlanePoint right;
};

struct PlaneHeights {
  double shoulder = 0.0;  // relative to the pelvis
  double hip = 0.0;
  double ground = 0.0;
};

struct CycleProfile {
  std::size_t cycle = 0;
  PlaneHeights planes;
  LimbPair wrists;  // shoulder plane, cycle mean
  LimbPair knees;   // hip plane, cycle mean
  LimbPair feet;    // ground plane, cycle mean
  std::optional<PlanePoint> left_landing, right_landing;
  std::optional<Strike> left_strike, right_strike;
  bool left_wrist_crossing = false;
  bool right_wrist_crossing = false;
};

struct ProfileSnapshot {
  std::vector<CycleProfile> cycles;
};

ProfileSnapshot build_profile(const MotionContext& ctx);
ProfileSnapshot build_profile(const motion::MotionSequence& seq, const gait::CycleSegmentation& seg);

nlohmann::json to_json(const ProfileSnapshot& profile);

}  // namespace gaitcoach::attributes
