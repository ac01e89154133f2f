#pragma once

#include <vector>

#include "gaitcoach/motion/pose.hpp"

namespace gaitcoach::motion {

/// Parameters of the synthetic runner. Angles are radians, lengths meters at
/// body_scale 1. The left limbs replay the right waveforms half a cycle later.
struct GaitParams {
  double cycle_duration = 1.0;   // seconds per stride (RL to RL)
  double stance_fraction = 0.35; // per foot, must lie in (0, 0.5)
  double fps = 30.0;
  int n_cycles = 3;

  double landing_reach = 0.20;   // ankle ahead of pelvis at landing
  double extension_reach = -0.35;// ankle relative to pelvis at full extension
  double landing_thigh = 0.45;   // thigh angle from vertical at landing
  double extension_thigh = -0.35;
  double knee_drive = 1.0;       // peak thigh angle during swing
  double knee_drive_phase = 0.8; // where the peak occurs within the leg cycle
  double bounce = 0.8;           // vertical take-off / touch-down speed, m/s

  double arm_swing = 0.5;        // shoulder swing amplitude
  double elbow_flexion = 1.5;    // elbow interior angle is pi - elbow_flexion
  double arm_cross = 0.0;        // inward yaw of the swinging arm
  double torso_lean = 0.1;       // forward pitch of spine and head
  double foot_pitch = 0.0;       // positive points the toes down
  double heading = 0.0;          // yaw of the travel direction about +Y
  double body_scale = 1.0;

  /// Motionless stance: every frame is the same pose at the origin.
  static GaitParams still();
};

enum class Foot { left, right };

struct GroundTruthEvent {
  int kind;      // 0 RL, 1 RE, 2 LL, 3 LE
  double time;   // seconds
  double frame;  // time * fps, not rounded
};

struct Interval {
  double start;  // seconds
  double end;
};

/// Analytic running motion with its ground truth.
class GaitGenerator {
 public:
  explicit GaitGenerator(GaitParams params);

  const GaitParams& params() const noexcept { return p_; }
  const Skeleton& skeleton() const noexcept { return skeleton_; }

  std::size_t frame_count() const noexcept;
  MotionSequence sequence() const;
  PoseFrame pose_at(double t) const;

  /// Right-leg phase of the extension event (foot most rearward).
  double extension_phase() const noexcept { return r_; }
  std::vector<GroundTruthEvent> events() const;
  std::vector<Interval> contacts(Foot foot) const;

  /// Gait phase at time t, piecewise linear between the ground-truth events.
  double phase_at(double t) const;

  double knee_angle(Foot foot, double t) const;
  double elbow_angle() const noexcept;
  double lean_angle() const noexcept;
  /// Knee height above the pelvis at the swing peak.
  double knee_lift() const noexcept;
  double stride() const noexcept { return stride_ * p_.body_scale; }

 private:
  struct Leg {
    double z, y, thigh, shank;
  };
  Leg leg(double phase) const;
  double anterior(double phase) const;
  double thigh(double phase) const;
  Vec3 root(double t) const;  // unscaled, unrotated

  GaitParams p_;
  Skeleton skeleton_;
  double r_ = 0.0;
  double z_max_ = 0.0, z1_ = 0.0, flight_ = 0.0, stride_ = 0.0;
  double vz_ = 0.0, vy_ = 0.0, vy0_ = 0.0;
};

inline MotionSequence synth_gait(const GaitParams& params) {
  return GaitGenerator(params).sequence();
}

}  // namespace gaitcoach::motion
