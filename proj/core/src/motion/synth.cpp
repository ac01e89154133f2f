#include "gaitcoach/motion/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gaitcoach/error.hpp"

namespace gaitcoach::motion {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kThigh = 0.42;
constexpr double kShank = 0.43;
constexpr double kHipDrop = -0.09;

double wrap(double x) { return x - std::floor(x); }

double ease(double a, double b, double u) { return a + (b - a) * (1.0 - std::cos(kPi * u)) / 2.0; }

double hermite(double t, double p0, double m0, double p1, double m1) {
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * p1 +
         (t3 - t2) * m1;
}

Quat rx(double a) { return Quat(Eigen::AngleAxisd(a, Vec3::UnitX())); }
Quat ry(double a) { return Quat(Eigen::AngleAxisd(a, Vec3::UnitY())); }
Quat rz(double a) { return Quat(Eigen::AngleAxisd(a, Vec3::UnitZ())); }

}  // namespace

GaitParams GaitParams::still() {
  GaitParams p;
  p.landing_reach = p.extension_reach = 0.0;
  p.landing_thigh = p.extension_thigh = p.knee_drive = 0.0;
  p.bounce = 0.0;
  p.arm_swing = 0.0;
  p.torso_lean = 0.0;
  return p;
}

GaitGenerator::GaitGenerator(GaitParams params)
    : p_(params), skeleton_(Skeleton::canonical(params.body_scale)) {
  if (!(p_.cycle_duration > 0.0)) throw Error(ErrorCode::invalid_argument, "cycle_duration must be positive");
  if (!(p_.stance_fraction > 0.0 && p_.stance_fraction < 0.5)) {
    throw Error(ErrorCode::invalid_argument, "stance_fraction must lie in (0, 0.5)");
  }
  if (!(p_.fps > 0.0)) throw Error(ErrorCode::invalid_argument, "fps must be positive");
  if (p_.n_cycles < 1) throw Error(ErrorCode::invalid_argument, "n_cycles must be at least 1");
  if (!(p_.knee_drive_phase > 0.5 && p_.knee_drive_phase < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "knee_drive_phase must lie in (0.5, 1)");
  }
  const double s = p_.stance_fraction;
  r_ = s + 0.3 * (0.5 - s);
  for (int i = 0; i <= 200; ++i) {
    const double ph = i / 200.0;
    const double arg = (anterior(ph) - kThigh * std::sin(thigh(ph))) / kShank;
    if (std::abs(arg) > 1.0) throw Error(ErrorCode::invalid_argument, "leg cannot reach the prescribed ankle path");
  }

  // Root velocities at lift-off and touch-down from the planted-foot motion.
  const double h = 1e-6, T = p_.cycle_duration;
  const Leg a = leg(s + h), b = leg(s - h);
  vz_ = -(a.z - b.z) / (2 * h) / T;
  vy_ = -(a.y - b.y) / (2 * h) / T;
  const Leg c = leg(h), d = leg(1.0 - h);
  vy0_ = -(c.y - d.y) / (2 * h) / T;
  z_max_ = anterior(0.0);
  z1_ = z_max_ - anterior(s);
  flight_ = vz_ * (0.5 - s) * T;
  stride_ = 2.0 * (z1_ + flight_);
}

double GaitGenerator::anterior(double phase) const {
  const double ph = wrap(phase);
  const double w = ph < r_ ? ph / r_ : 1.0 + (ph - r_) / (1.0 - r_);
  const double g = (1.0 + std::cos(kPi * w)) / 2.0;
  return p_.extension_reach + (p_.landing_reach - p_.extension_reach) * g;
}

double GaitGenerator::thigh(double phase) const {
  const double ph = wrap(phase);
  const double k = p_.knee_drive_phase;
  if (ph < r_) return ease(p_.landing_thigh, p_.extension_thigh, ph / r_);
  if (ph < k) return ease(p_.extension_thigh, p_.knee_drive, (ph - r_) / (k - r_));
  return ease(p_.knee_drive, p_.landing_thigh, (ph - k) / (1.0 - k));
}

GaitGenerator::Leg GaitGenerator::leg(double phase) const {
  Leg l;
  l.thigh = thigh(phase);
  l.z = anterior(phase);
  const double arg = std::clamp((l.z - kThigh * std::sin(l.thigh)) / kShank, -1.0, 1.0);
  l.shank = std::asin(arg);
  l.y = kHipDrop - (kThigh * std::cos(l.thigh) + kShank * std::cos(l.shank));
  return l;
}

Vec3 GaitGenerator::root(double t) const {
  const double T = p_.cycle_duration, s = p_.stance_fraction;
  const double c = std::floor(t / T + 1e-12);
  const double ph = t / T - c;
  const double base = c * stride_;
  const double dt = (0.5 - s) * T;
  const double lift_y = -leg(s).y, land_y = -leg(0.0).y;
  auto flight = [&](double u, double z0) {
    return Vec3(0.0,
                hermite(u, lift_y, (vy_ + p_.bounce) * dt, land_y, (vy0_ - p_.bounce) * dt),
                hermite(u, z0, vz_ * dt, z0 + flight_, 0.0));
  };
  if (ph <= s) return {0.0, -leg(ph).y, base + z_max_ - anterior(ph)};
  if (ph < 0.5) return flight((ph - s) / (0.5 - s), base + z1_);
  if (ph <= 0.5 + s) {
    return {0.0, -leg(ph - 0.5).y, base + z1_ + flight_ + z_max_ - anterior(ph - 0.5)};
  }
  return flight((ph - 0.5 - s) / (0.5 - s), base + 2 * z1_ + flight_);
}

PoseFrame GaitGenerator::pose_at(double t) const {
  const double ph = t / p_.cycle_duration;
  const Leg right = leg(ph), left = leg(ph - 0.5);
  const Quat yaw = ry(p_.heading);
  const Quat torso = yaw * rx(p_.torso_lean);
  const double swing = p_.arm_swing * std::cos(2.0 * kPi * wrap(ph));

  std::array<Quat, kJointCount> world;
  auto set = [&](Joint j, const Quat& q) { world[static_cast<std::size_t>(j)] = q; };
  set(Joint::pelvis, yaw);
  set(Joint::right_hip, yaw * rx(-right.thigh));
  set(Joint::left_hip, yaw * rx(-left.thigh));
  set(Joint::right_knee, yaw * rx(-right.shank));
  set(Joint::left_knee, yaw * rx(-left.shank));
  for (Joint j : {Joint::right_ankle, Joint::left_ankle, Joint::right_foot, Joint::left_foot}) {
    set(j, yaw * rx(p_.foot_pitch));
  }
  for (Joint j : {Joint::spine1, Joint::spine2, Joint::spine3, Joint::neck, Joint::head,
                  Joint::left_collar, Joint::right_collar}) {
    set(j, torso);
  }
  // Upper arms hang along -Y before swinging about the lateral axis.
  const Quat right_arm = torso * ry(p_.arm_cross);
  const Quat left_arm = torso * ry(-p_.arm_cross);
  set(Joint::right_shoulder, right_arm * rx(swing) * rz(kPi / 2));
  set(Joint::left_shoulder, left_arm * rx(-swing) * rz(-kPi / 2));
  const Quat right_fore = right_arm * rx(swing - p_.elbow_flexion) * rz(kPi / 2);
  const Quat left_fore = left_arm * rx(-swing - p_.elbow_flexion) * rz(-kPi / 2);
  for (Joint j : {Joint::right_elbow, Joint::right_wrist, Joint::right_hand}) set(j, right_fore);
  for (Joint j : {Joint::left_elbow, Joint::left_wrist, Joint::left_hand}) set(j, left_fore);

  PoseFrame frame;
  for (std::size_t i = 0; i < kJointCount; ++i) {
    const auto parent = skeleton_.parent(i);
    frame.rotations[i] =
        parent ? (world[*parent].conjugate() * world[i]).normalized() : world[i].normalized();
  }
  frame.root_translation = yaw * (root(t) * p_.body_scale);
  return frame;
}

std::size_t GaitGenerator::frame_count() const noexcept {
  return static_cast<std::size_t>(std::llround(p_.n_cycles * p_.cycle_duration * p_.fps)) + 1;
}

MotionSequence GaitGenerator::sequence() const {
  std::vector<PoseFrame> frames;
  const std::size_t n = frame_count();
  frames.reserve(n);
  for (std::size_t i = 0; i < n; ++i) frames.push_back(pose_at(static_cast<double>(i) / p_.fps));
  return MotionSequence(skeleton_, p_.fps, std::move(frames));
}

std::vector<GroundTruthEvent> GaitGenerator::events() const {
  std::vector<GroundTruthEvent> out;
  const double T = p_.cycle_duration;
  const double end = (frame_count() - 1) / p_.fps + 1e-9;
  const double offsets[4] = {0.0, r_, 0.5, 0.5 + r_};
  for (int c = 0; c * T <= end; ++c) {
    for (int k = 0; k < 4; ++k) {
      const double t = (c + offsets[k]) * T;
      if (t <= end) out.push_back({k, t, t * p_.fps});
    }
  }
  return out;
}

std::vector<Interval> GaitGenerator::contacts(Foot foot) const {
  std::vector<Interval> out;
  const double T = p_.cycle_duration;
  const double end = (frame_count() - 1) / p_.fps;
  const double shift = foot == Foot::right ? 0.0 : 0.5;
  for (int c = -1; (c + shift) * T <= end; ++c) {
    const double a = (c + shift) * T, b = a + p_.stance_fraction * T;
    if (b < 0.0) continue;
    out.push_back({std::max(a, 0.0), std::min(b, end)});
  }
  return out;
}

double GaitGenerator::phase_at(double t) const {
  const double u = wrap(t / p_.cycle_duration);
  const double knots[5] = {0.0, r_, 0.5, 0.5 + r_, 1.0};
  for (int k = 0; k < 4; ++k) {
    if (u < knots[k + 1]) return 0.25 * (k + (u - knots[k]) / (knots[k + 1] - knots[k]));
  }
  return 0.0;
}

double GaitGenerator::knee_angle(Foot foot, double t) const {
  const double ph = t / p_.cycle_duration - (foot == Foot::left ? 0.5 : 0.0);
  const Leg l = leg(ph);
  return kPi - std::abs(l.thigh - l.shank);
}

double GaitGenerator::elbow_angle() const noexcept { return kPi - std::abs(p_.elbow_flexion); }

double GaitGenerator::lean_angle() const noexcept {
  const double upper = 0.14 + 0.06 + 0.22;
  return std::atan2(upper * std::sin(p_.torso_lean), 0.11 + upper * std::cos(p_.torso_lean));
}

double GaitGenerator::knee_lift() const noexcept {
  return (kHipDrop - kThigh * std::cos(p_.knee_drive)) * p_.body_scale;
}

}  // namespace gaitcoach::motion
