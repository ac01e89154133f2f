#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaitcoach/attributes/meta.hpp"
#include "gaitcoach/gait/segmentation.hpp"
#include "gaitcoach/motion/kinematics.hpp"

namespace gaitcoach::attributes {

/// Either a number (meters, radians or cycle fraction) or a category token.
struct CycleValue {
  std::size_t cycle = 0;
  std::optional<double> value;
  std::optional<std::string> category;
  std::optional<std::size_t> frame;  // where the value was read, when it has one
  std::optional<double> phase;       // phase curve at that frame

  bool missing() const noexcept { return !value && !category; }
};

struct AttributeSeries {
  AttributeMeta meta;
  std::vector<CycleValue> per_cycle;
  std::vector<double> per_frame;  // P and A subtypes only
};

inline constexpr double kPhaseTolerance = 0.1;

/// Precomputed FK for repeated retrievals over one sequence.
struct MotionContext {
  const motion::MotionSequence* seq = nullptr;
  const gait::CycleSegmentation* seg = nullptr;
  std::vector<motion::Positions> track;

  MotionContext(const motion::MotionSequence& s, const gait::CycleSegmentation& g);
};

/// Angle at `vertex` between the two arms, in [0, pi].
double joint_angle(const motion::Vec3& a, const motion::Vec3& vertex, const motion::Vec3& b);
double vector_angle(const motion::Vec3& u, const motion::Vec3& v);

/// Geometric value of a P or A meta on one posed skeleton.
double frame_value(const motion::Positions& pos, const motion::Skeleton& skeleton,
                   const AttributeMeta& meta);

AttributeSeries retrieve(const MotionContext& ctx, const AttributeMeta& meta);
AttributeSeries retrieve(const motion::MotionSequence& seq, const gait::CycleSegmentation& seg,
                         const AttributeMeta& meta);

enum class Strike { fore, mid, rear };
std::string_view to_string(Strike s) noexcept;

/// Heel (ankle) versus toe (foot joint) height above `ground`.
Strike classify_landing(const motion::Positions& pos, const motion::Skeleton& skeleton, Side foot,
                        double ground, double subject_height);
std::vector<std::optional<Strike>> classify_strike(const motion::MotionSequence& seq,
                                                   const gait::CycleSegmentation& seg, Side foot);

/// Landing frame of `foot` inside cycle `c`, if detected.
std::optional<std::size_t> landing_frame(const gait::CycleSegmentation& seg, std::size_t c, Side foot);
/// Minimum ankle height of `foot` over the cycle.
double cycle_ground(const MotionContext& ctx, std::size_t c, Side foot);
/// Horizontal unit vector from the right hip to the left hip.
motion::Vec3 body_lateral(const motion::Positions& pos, const motion::Skeleton& skeleton);
bool wrist_crosses(const MotionContext& ctx, std::size_t c, Side side);

/// Cycle time fraction at which the phase curve reaches `phase`.
double phase_time(const gait::CycleSegmentation& seg, std::size_t c, double phase);

}  // namespace gaitcoach::attributes
