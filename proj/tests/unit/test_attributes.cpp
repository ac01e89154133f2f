#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "gaitcoach/attributes/catalog.hpp"
#include "gaitcoach/attributes/meta.hpp"
#include "gaitcoach/attributes/profile.hpp"
#include "gaitcoach/attributes/retrieve.hpp"
#include "gaitcoach/error.hpp"
#include "gaitcoach/gait/segmentation.hpp"
#include "gaitcoach/motion/kinematics.hpp"
#include "gaitcoach/motion/orientation.hpp"
#include "gaitcoach/motion/synth.hpp"
#include "oracles.hpp"

using namespace gaitcoach;
using namespace gaitcoach::attributes;
using motion::GaitGenerator;
using motion::GaitParams;
using motion::Joint;
using motion::PoseFrame;
using motion::Vec3;
using nlohmann::json;
constexpr double kPi = std::numbers::pi;

namespace {

AttributeMeta a1(std::string a, std::string o, std::string b, Side side = Side::neutral, double phase = 0.0) {
  AttributeMeta m;
  m.name = "custom_angle";
  m.subtype = Subtype::A1;
  m.cls = AttrClass::angular;
  m.joint_a = std::move(a);
  m.joint_o = std::move(o);
  m.joint_b = std::move(b);
  m.side = side;
  m.phase = phase;
  return m;
}

bool has_issue(const std::vector<ValidationIssue>& issues, const std::string& message) {
  for (const auto& i : issues)
    if (i.message == message) return true;
  return false;
}

const AttributeMeta& cat(std::string_view name) {
  const auto* m = find_in_catalog(name);
  REQUIRE(m != nullptr);
  return *m;
}

}  // namespace

TEST_CASE("catalog entries are valid and round-trip through JSON") {
  const auto sk = motion::Skeleton::canonical();
  std::set<std::string> names;
  std::set<std::string> kinds;
  for (const auto& m : catalog()) {
    CAPTURE(m.name);
    CHECK(validate_meta(m, sk).empty());
    CHECK(meta_from_json(to_json(m)) == m);
    CHECK(m.cls == class_of(m.subtype));
    names.insert(m.name);
    std::string kind = m.name;
    for (const char* p : {"left_", "right_"})
      if (kind.rfind(p, 0) == 0) kind = kind.substr(std::string(p).size());
    kinds.insert(kind);
  }
  CHECK(names.size() == catalog().size());
  CHECK(kinds.size() == 10);
  CHECK(find_in_catalog("no_such_attribute") == nullptr);
}

TEST_CASE("validation rules") {
  const auto sk = motion::Skeleton::canonical();
  CHECK(validate_meta(a1("left_shoulder", "left_elbow", "left_wrist", Side::left), sk).empty());

  AttributeMeta p2;
  p2.name = "drop";
  p2.subtype = Subtype::P2;
  p2.joint_a = "pelvis";
  p2.joint_o = "left_knee";
  p2.phase = 0.5;
  CHECK(has_issue(validate_meta(p2, sk), "P2 requires axis"));
  p2.axis = Axis::Y;
  CHECK(validate_meta(p2, sk).empty());
  p2.phase = 1.0;
  CHECK(has_issue(validate_meta(p2, sk), "phase out of range [0, 1)"));
  p2.phase = -0.1;
  CHECK(has_issue(validate_meta(p2, sk), "phase out of range [0, 1)"));

  AttributeMeta t2;
  t2.name = "contact";
  t2.subtype = Subtype::T2;
  t2.cls = AttrClass::temporal;
  t2.phase = PhaseRange{0.6, 0.2};
  CHECK(has_issue(validate_meta(t2, sk), "range start exceeds end"));
  t2.phase = PhaseRange{0.2, 0.2};
  CHECK(has_issue(validate_meta(t2, sk), "range is empty"));
  t2.phase = PhaseRange{0.0, 0.35};
  CHECK(validate_meta(t2, sk).empty());

  auto bad = a1("left_shoulder", "left_elbo", "left_wrist");
  const auto issues = validate_meta(bad, sk, "attributes[0].");
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].field == "attributes[0].jO");
  CHECK(issues[0].message == "unknown joint 'left_elbo'");

  auto extra = a1("left_shoulder", "left_elbow", "left_wrist");
  extra.axis = Axis::X;
  CHECK(!validate_meta(extra, sk).empty());

  auto missing = a1("left_shoulder", "left_elbow", "left_wrist");
  missing.joint_b.reset();
  CHECK(!validate_meta(missing, sk).empty());

  auto named = a1("left_shoulder", "left_elbow", "left_wrist");
  named.name = "has space";
  CHECK(!validate_meta(named, sk).empty());

  AttributeMeta c;
  c.name = "x";
  c.subtype = Subtype::CAT;
  c.cls = AttrClass::categorical;
  c.classifier = "gait_style";
  c.side = Side::left;
  CHECK(!validate_meta(c, sk).empty());
  c.classifier = std::string(kStrikeMode);
  CHECK(validate_meta(c, sk).empty());

  CHECK_THROWS_AS(require_valid(bad, sk), ValidationError);
}

TEST_CASE("attribute documents report field paths") {
  const json doc = json::array({to_json(cat("left_elbow_angle")), {{"name", "q"}, {"subtype", "Q9"}}});
  try {
    metas_from_json(doc);
    FAIL("accepted an unknown subtype");
  } catch (const ValidationError& e) {
    REQUIRE(!e.issues().empty());
    CHECK(e.issues()[0].field == "attributes[1].subtype");
  }
  const auto ok = metas_from_json(json{{"attributes", json::array({to_json(cat("left_elbow_angle"))})}});
  REQUIRE(ok.size() == 1);
  CHECK(ok[0] == cat("left_elbow_angle"));
  CHECK_THROWS_AS(metas_from_json(json::object()), ValidationError);
}

TEST_CASE("closed-form geometry") {
  CHECK(joint_angle(Vec3(0, 1, 0), Vec3(0, 0, 0), Vec3(0, -1, 0)) == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(std::abs(joint_angle(Vec3(0, 1.4, 0), Vec3(0, 1.1, 0), Vec3(0, 1.1, 0.3)) - kPi / 2) < 1e-9);

  motion::Positions pos{};
  const auto sk = motion::Skeleton::canonical();
  for (auto& p : pos) p = Vec3::Zero();
  pos[sk.index(Joint::pelvis)] = Vec3(0, 1, 0);
  pos[sk.index(Joint::left_ankle)] = Vec3(0.1, 0.05, 0.3);
  AttributeMeta p2;
  p2.subtype = Subtype::P2;
  p2.joint_a = "pelvis";
  p2.joint_o = "left_ankle";
  p2.axis = Axis::Z;
  CHECK(std::abs(frame_value(pos, sk, p2) - 0.3) < 1e-12);
}

TEST_CASE("A1 is symmetric in its end joints and bounded") {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 200; ++i) {
    const Vec3 a(u(rng), u(rng), u(rng)), o(u(rng), u(rng), u(rng)), b(u(rng), u(rng), u(rng));
    const double v = joint_angle(a, o, b);
    CHECK(v >= 0.0);
    CHECK(v <= kPi);
    CHECK(v == doctest::Approx(joint_angle(b, o, a)));
    CHECK(v == doctest::Approx(oracle::law_of_cosines(a, o, b)).epsilon(1e-7));
  }
}

TEST_CASE("analytic poses give closed-form attribute values") {
  const auto sk = motion::Skeleton::canonical();
  for (double phi : {0.0, 0.4, 1.2, 2.0}) {
    PoseFrame f = PoseFrame::identity();
    f.rotations[sk.index(Joint::right_elbow)] = motion::axis_angle(Vec3::UnitY(), phi);
    f.rotations[sk.index(Joint::pelvis)] = motion::axis_angle(Vec3::UnitX(), phi / 3);
    f.rotations[sk.index(Joint::right_hip)] = motion::axis_angle(Vec3::UnitX(), -phi);
    f.root_translation = Vec3(0.3, 1.0, -2.0);
    const auto pos = motion::forward_kinematics(f, sk);

    // Elbow bend in the horizontal arm plane.
    CHECK(std::abs(frame_value(pos, sk, cat("right_elbow_angle")) - (kPi - phi)) < 1e-9);
    // Pelvis pitch tilts the pelvis to neck segment by the same angle.
    CHECK(std::abs(frame_value(pos, sk, cat("upper_body_lean")) - phi / 3) < 1e-9);
    // Hip flexion raises the knee relative to the hip joint centre.
    const double c = std::cos(phi / 3);
    const double s = std::sin(phi / 3);
    const Vec3 hip_off(-0.09, -0.09, 0.0);
    const Vec3 hip = Vec3(hip_off.x(), c * hip_off.y(), s * hip_off.y());
    const double pitch = phi / 3 - phi;
    const Vec3 knee = hip + Vec3(0.0, -0.42 * std::cos(pitch), -0.42 * std::sin(pitch));
    CHECK(std::abs(frame_value(pos, sk, cat("right_knee_lift")) - knee.y()) < 1e-9);
  }
  // Wrist to pelvis distance in the T-pose.
  const auto tpose = motion::forward_kinematics(PoseFrame::identity(), sk);
  CHECK(std::abs(frame_value(tpose, sk, cat("right_wrist_center")) - std::hypot(0.69, 0.48)) < 1e-9);
  CHECK(std::abs(frame_value(tpose, sk, cat("right_foot_landing"))) < 1e-12);
  CHECK(std::abs(frame_value(tpose, sk, cat("left_back_kick")) - (-0.94)) < 1e-9);
}

TEST_CASE("knee angle waveform is recovered from synthetic gait") {
  GaitParams p;
  p.n_cycles = 3;
  GaitGenerator g(p);
  const auto seq = g.sequence();
  const auto seg = gait::segment(seq);
  for (auto foot : {motion::Foot::left, motion::Foot::right}) {
    const std::string s = foot == motion::Foot::left ? "left_" : "right_";
    const auto series = retrieve(seq, seg, a1(s + "hip", s + "knee", s + "ankle"));
    REQUIRE(series.per_frame.size() == seq.size());
    double worst = 0.0;
    for (std::size_t f = 0; f < seq.size(); ++f) {
      worst = std::max(worst, std::abs(series.per_frame[f] - g.knee_angle(foot, double(f) / p.fps)));
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("per-cycle values of synthetic gait") {
  GaitParams p;
  p.n_cycles = 4;
  GaitGenerator g(p);
  const auto seq = g.sequence();
  const auto seg = gait::segment(seq);
  const MotionContext ctx(seq, seg);
  const double cycle_frames = p.cycle_duration * p.fps;

  for (const char* name : {"right_contact_time", "left_contact_time"}) {
    const auto series = retrieve(ctx, cat(name));
    REQUIRE(series.per_cycle.size() == seg.cycles.size());
    for (const auto& v : series.per_cycle) {
      REQUIRE(v.value);
      CHECK(std::abs(*v.value - p.stance_fraction) <= 2.0 / cycle_frames);
    }
  }
  for (const auto& v : retrieve(ctx, cat("right_knee_lift")).per_cycle) {
    CHECK(std::abs(*v.value - g.knee_lift()) < 1e-6);
  }
  for (const auto& v : retrieve(ctx, cat("left_elbow_angle")).per_cycle) {
    CHECK(std::abs(*v.value - g.elbow_angle()) < 1e-9);
  }
  for (const auto& v : retrieve(ctx, cat("upper_body_lean")).per_cycle) {
    CHECK(std::abs(*v.value - g.lean_angle()) < 1e-9);
  }
  for (const auto& v : retrieve(ctx, cat("landing_symmetry")).per_cycle) {
    CHECK(std::abs(*v.value - 0.5) <= 1.0 / cycle_frames);
  }
  for (const auto& v : retrieve(ctx, cat("right_strike_mode")).per_cycle) CHECK(*v.category == "mid");
  for (const auto& v : retrieve(ctx, cat("left_wrist_crossing")).per_cycle) CHECK(*v.category == "clear");
  // Sampled at the landing phase.
  for (const auto& v : retrieve(ctx, cat("right_foot_landing")).per_cycle) {
    REQUIRE(v.frame);
    CHECK(v.phase == 0.0);
    CHECK(std::abs(*v.value - p.landing_reach) < 0.02);
  }
}

TEST_CASE("strike mode and wrist crossing react to the motion") {
  GaitParams fore;
  fore.foot_pitch = 0.4;
  GaitParams rear;
  rear.foot_pitch = -0.4;
  GaitParams cross;
  cross.arm_cross = 0.9;
  auto categories = [](const GaitParams& p, std::string_view name) {
    const auto seq = motion::synth_gait(p);
    const auto seg = gait::segment(seq);
    std::set<std::string> out;
    for (const auto& v : retrieve(seq, seg, *find_in_catalog(name)).per_cycle) out.insert(*v.category);
    return out;
  };
  CHECK(categories(fore, "left_strike_mode") == std::set<std::string>{"fore"});
  CHECK(categories(rear, "right_strike_mode") == std::set<std::string>{"rear"});
  CHECK(categories(cross, "right_wrist_crossing") == std::set<std::string>{"crossing"});
  CHECK(categories(cross, "left_wrist_crossing") == std::set<std::string>{"crossing"});
}

TEST_CASE("strike classification on constructed landing frames") {
  const auto sk = motion::Skeleton::canonical();
  motion::Positions pos{};
  for (auto& p : pos) p = Vec3::Zero();
  const double h = 1.7;
  const std::size_t ankle = sk.index(Joint::left_ankle), toe = sk.index(Joint::left_foot);
  pos[ankle] = Vec3(0, 0.08, 0);
  pos[toe] = Vec3(0, 0.05, 0.14);
  CHECK(classify_landing(pos, sk, Side::left, 0.0, h) == Strike::fore);
  pos[toe].y() = 0.08;
  CHECK(classify_landing(pos, sk, Side::left, 0.0, h) == Strike::mid);
  pos[toe].y() = 0.11;
  CHECK(classify_landing(pos, sk, Side::left, 0.0, h) == Strike::rear);
  pos[toe].y() = 0.08 - 0.016;
  CHECK(classify_landing(pos, sk, Side::left, 0.0, h) == Strike::mid);
}

TEST_CASE("cycles without a frame near the requested phase are missing") {
  PoseFrame f = PoseFrame::identity();
  const motion::MotionSequence seq(motion::Skeleton::canonical(), 4.0, std::vector<PoseFrame>(5, f));
  gait::CycleSegmentation seg;
  seg.events = {{gait::EventKind::RL, 0, 0.0}, {gait::EventKind::RE, 1, 0.25}, {gait::EventKind::LL, 2, 0.5},
                {gait::EventKind::LE, 3, 0.75}, {gait::EventKind::RL, 4, 0.0}};
  seg.phase_curve = {0.0, 0.25, 0.5, 0.75, 0.0};
  seg.cycles = {{0, 4}};
  auto m = a1("left_shoulder", "left_elbow", "left_wrist");
  m.phase = 0.125;
  const auto series = retrieve(seq, seg, m);
  REQUIRE(series.per_cycle.size() == 1);
  CHECK(series.per_cycle[0].missing());
  m.phase = 0.3;
  CHECK(!retrieve(seq, seg, m).per_cycle[0].missing());
}

TEST_CASE("retrieval is invariant under yaw and translation") {
  GaitParams p;
  const auto seq = motion::synth_gait(p);
  const auto seg = gait::segment(seq);
  auto moved = motion::rotate_about_vertical(seq, 0.9);
  std::vector<PoseFrame> frames = moved.frames();
  for (auto& f : frames) f.root_translation += Vec3(2.0, 0.0, -1.0);
  moved = motion::MotionSequence(seq.skeleton(), seq.fps(), frames);
  for (const char* name : {"right_wrist_center", "left_elbow_angle", "right_knee_lift", "upper_body_lean"}) {
    const auto a = retrieve(seq, seg, cat(name));
    const auto b = retrieve(moved, seg, cat(name));
    for (std::size_t c = 0; c < a.per_cycle.size(); ++c) {
      CHECK(std::abs(*a.per_cycle[c].value - *b.per_cycle[c].value) < 1e-9);
    }
  }
}

TEST_CASE("profile agrees with the foot landing attribute") {
  const auto seq = motion::synth_gait({});
  const auto seg = gait::segment(seq);
  const MotionContext ctx(seq, seg);
  const auto profile = build_profile(ctx);
  REQUIRE(profile.cycles.size() == seg.cycles.size());
  const auto right = retrieve(ctx, cat("right_foot_landing"));
  const auto left = retrieve(ctx, cat("left_foot_landing"));
  for (std::size_t c = 0; c < profile.cycles.size(); ++c) {
    const auto& cp = profile.cycles[c];
    REQUIRE(cp.right_landing);
    REQUIRE(cp.left_landing);
    CHECK(std::abs(cp.right_landing->anterior - *right.per_cycle[c].value) < 1e-9);
    CHECK(std::abs(cp.left_landing->anterior - *left.per_cycle[c].value) < 1e-9);
    // Wrists stay on their own side.
    CHECK(cp.wrists.left.lateral > 0.0);
    CHECK(cp.wrists.right.lateral < 0.0);
    CHECK_FALSE(cp.left_wrist_crossing);
    CHECK(cp.planes.ground < 0.0);
    CHECK(cp.planes.shoulder > 0.0);
  }
  const json j = to_json(profile);
  CHECK(j["cycles"].size() == profile.cycles.size());
}
