#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gaitcoach/error.hpp"
#include "gaitcoach/motion/io.hpp"
#include "gaitcoach/motion/kinematics.hpp"
#include "gaitcoach/motion/orientation.hpp"
#include "gaitcoach/motion/synth.hpp"
#include "oracles.hpp"

using namespace gaitcoach;
using namespace gaitcoach::motion;
using nlohmann::json;

namespace {

MotionSequence random_sequence(std::mt19937& rng, std::size_t n) {
  std::vector<PoseFrame> frames;
  for (std::size_t i = 0; i < n; ++i) frames.push_back(oracle::random_pose(rng));
  return MotionSequence(Skeleton::canonical(), 30.0, std::move(frames));
}

ErrorCode code_of(const std::string& text) {
  try {
    parse_motion(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("document was accepted");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_CASE("canonical skeleton has SMPL order with the pelvis at the root") {
  const auto sk = Skeleton::canonical();
  REQUIRE(sk.size() == kJointCount);
  CHECK(sk.joint(0).name == "pelvis");
  CHECK_FALSE(sk.parent(0).has_value());
  for (std::size_t i = 1; i < sk.size(); ++i) {
    REQUIRE(sk.parent(i).has_value());
    CHECK(*sk.parent(i) < i);
    CHECK(joint_name(static_cast<Joint>(i)) == sk.joint(i).name);
  }
  CHECK(sk.index(Joint::right_wrist) == 21);
  CHECK(sk.is_descendant(sk.index(Joint::left_foot), sk.index(Joint::left_hip)));
  CHECK_FALSE(sk.is_descendant(sk.index(Joint::left_foot), sk.index(Joint::right_hip)));
  CHECK(sk.t_pose_height() > 1.5);
  CHECK(sk.t_pose_height() < 2.0);
}

TEST_CASE("identity pose reproduces the T-pose offsets") {
  const auto sk = Skeleton::canonical();
  const auto pos = forward_kinematics(PoseFrame::identity(), sk);
  CHECK(pos[0].norm() == doctest::Approx(0.0));
  for (std::size_t i = 1; i < sk.size(); ++i) {
    const Vec3 expect = pos[*sk.parent(i)] + sk.joint(i).offset;
    CHECK((pos[i] - expect).norm() < 1e-12);
  }
  // Subject-left is +X.
  CHECK(pos[sk.index(Joint::left_shoulder)].x() > 0.0);
  CHECK(pos[sk.index(Joint::right_shoulder)].x() < 0.0);
  CHECK(pos[sk.index(Joint::head)].y() > 0.0);
}

TEST_CASE("forward kinematics matches a matrix chain walk") {
  std::mt19937 rng(7);
  const auto sk = Skeleton::canonical(1.2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto frame = oracle::random_pose(rng, 2.0);
    const auto pos = forward_kinematics(frame, sk);
    for (std::size_t i = 0; i < sk.size(); ++i) {
      CHECK((pos[i] - oracle::joint_position(frame, sk, i)).norm() < 1e-9);
    }
  }
}

TEST_CASE("bone lengths are preserved by any pose") {
  std::mt19937 rng(11);
  const auto sk = Skeleton::canonical();
  for (int trial = 0; trial < 20; ++trial) {
    const auto pos = forward_kinematics(oracle::random_pose(rng, 3.0), sk);
    for (std::size_t i = 1; i < sk.size(); ++i) {
      CHECK((pos[i] - pos[*sk.parent(i)]).norm() == doctest::Approx(sk.bone_length(i)).epsilon(1e-12));
    }
  }
}

TEST_CASE("geodesic angle and axis angle agree") {
  for (double a : {0.0, 0.3, 1.0, 2.5, std::numbers::pi}) {
    const Quat q = axis_angle(Vec3(1, 2, -0.5), a);
    CHECK(geodesic_angle(Quat::Identity(), q) == doctest::Approx(a).epsilon(1e-9));
    CHECK(geodesic_angle(q, q) == doctest::Approx(0.0));
  }
}

TEST_CASE("pose documents round-trip") {
  std::mt19937 rng(3);
  const auto seq = random_sequence(rng, 12);
  const auto back = parse_motion(serialize_motion(seq));
  REQUIRE(back.size() == seq.size());
  CHECK(back.fps() == seq.fps());
  CHECK(back.skeleton() == seq.skeleton());
  for (std::size_t f = 0; f < seq.size(); ++f) {
    const auto a = forward_kinematics(seq.frame(f), seq.skeleton());
    const auto b = forward_kinematics(back.frame(f), back.skeleton());
    for (std::size_t i = 0; i < kJointCount; ++i) CHECK((a[i] - b[i]).norm() < 1e-9);
    for (std::size_t i = 0; i < kJointCount; ++i) {
      CHECK(geodesic_angle(seq.frame(f).rotations[i], back.frame(f).rotations[i]) < 1e-9);
    }
  }
  CHECK(serialize_motion(parse_motion(serialize_motion(back))) == serialize_motion(back));
}

TEST_CASE("pose document errors") {
  const auto seq = synth_gait({});
  const json good = to_json(seq);

  CHECK(code_of("{not json") == ErrorCode::malformed_document);
  CHECK(code_of("[]") == ErrorCode::malformed_document);

  json doc = good;
  doc.erase("frames");
  CHECK(code_of(doc.dump()) == ErrorCode::malformed_document);

  doc = good;
  doc["version"] = "2";
  CHECK(code_of(doc.dump()) == ErrorCode::malformed_document);

  doc = good;
  doc["fps"] = 0;
  CHECK(code_of(doc.dump()) == ErrorCode::invalid_argument);

  doc = good;
  doc["skeleton"][5]["name"] = "tail";
  CHECK(code_of(doc.dump()) == ErrorCode::unknown_joint);

  doc = good;
  doc["skeleton"][5]["name"] = "left_knee";
  CHECK(code_of(doc.dump()) == ErrorCode::invalid_skeleton);

  doc = good;
  doc["frames"][3]["q"][2] = json::array({2.0, 0.0, 0.0, 0.0});
  try {
    parse_motion(doc.dump());
    FAIL("accepted a non-unit quaternion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_rotation);
    CHECK(std::string(e.what()).find("frames[3].q[2]") != std::string::npos);
  }

  doc = good;
  doc["frames"][0]["q"].erase(0);
  CHECK(code_of(doc.dump()) == ErrorCode::malformed_document);

  doc = good;
  doc["frames"][0]["t"] = json::array({0.0, 1.0});
  CHECK(code_of(doc.dump()) == ErrorCode::malformed_document);
}

TEST_CASE("slightly denormalized quaternions are renormalized") {
  json doc = to_json(synth_gait({}));
  doc["frames"][0]["q"][4] = json::array({1.0005, 0.0, 0.0, 0.0});
  const auto seq = parse_motion(doc.dump());
  CHECK(seq.frame(0).rotations[4].norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("travel heading and orientation normalization") {
  for (double heading : {0.0, 0.7, -1.9, 3.0}) {
    GaitParams p;
    p.heading = heading;
    const auto seq = synth_gait(p);
    CHECK(travel_heading(seq) == doctest::Approx(heading).epsilon(1e-9));

    const auto norm = normalize_orientation(seq);
    CHECK(std::abs(travel_heading(norm)) < 1e-9);
    // Idempotent.
    const auto twice = normalize_orientation(norm);
    for (std::size_t f = 0; f < norm.size(); f += 7) {
      const auto a = forward_kinematics(norm.frame(f), norm.skeleton());
      const auto b = forward_kinematics(twice.frame(f), twice.skeleton());
      for (std::size_t i = 0; i < kJointCount; ++i) CHECK((a[i] - b[i]).norm() < 1e-9);
    }
    // Matches the heading-free generator up to a horizontal offset.
    const auto ref = synth_gait(GaitParams{});
    for (std::size_t f = 0; f < ref.size(); f += 5) {
      const auto a = forward_kinematics(norm.frame(f), norm.skeleton());
      const auto b = forward_kinematics(ref.frame(f), ref.skeleton());
      for (std::size_t i = 0; i < kJointCount; ++i) CHECK((a[i] - b[i]).norm() < 1e-9);
    }
  }
}

TEST_CASE("rotation about vertical keeps heights") {
  std::mt19937 rng(5);
  const auto seq = random_sequence(rng, 4);
  const auto rot = rotate_about_vertical(seq, 1.1);
  for (std::size_t f = 0; f < seq.size(); ++f) {
    const auto a = forward_kinematics(seq.frame(f), seq.skeleton());
    const auto b = forward_kinematics(rot.frame(f), rot.skeleton());
    for (std::size_t i = 0; i < kJointCount; ++i) {
      CHECK(a[i].y() == doctest::Approx(b[i].y()));
      CHECK(Eigen::Vector2d(a[i].x(), a[i].z()).norm() == doctest::Approx(Eigen::Vector2d(b[i].x(), b[i].z()).norm()));
    }
  }
}

TEST_CASE("heading is undefined for motion in place") {
  const auto still = synth_gait(GaitParams::still());
  CHECK_THROWS_AS(travel_heading(still), Error);
  try {
    normalize_orientation(still);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::cannot_infer_heading);
  }
  std::mt19937 rng(1);
  const auto single = random_sequence(rng, 1);
  CHECK_THROWS_AS(travel_heading(single), Error);
}

TEST_CASE("synthetic generator basics") {
  GaitParams p;
  p.n_cycles = 3;
  GaitGenerator g(p);
  CHECK(g.frame_count() == 91);
  const auto seq = g.sequence();
  CHECK(seq.size() == 91);
  CHECK(seq.fps() == 30.0);
  CHECK(g.events().size() == 13);

  // Feet never go below the ground plane, and stance feet touch it.
  const auto track = pose_track(seq);
  const auto& sk = seq.skeleton();
  double lowest = 1e9;
  for (const auto& pos : track) {
    lowest = std::min({lowest, pos[sk.index(Joint::left_ankle)].y(), pos[sk.index(Joint::right_ankle)].y()});
  }
  CHECK(lowest > -1e-9);

  CHECK_THROWS_AS(GaitGenerator([] {
                    GaitParams q;
                    q.stance_fraction = 0.6;
                    return q;
                  }()),
                  Error);
  CHECK_THROWS_AS(GaitGenerator([] {
                    GaitParams q;
                    q.fps = 0;
                    return q;
                  }()),
                  Error);
}

TEST_CASE("body scale scales every position") {
  GaitParams a, b;
  b.body_scale = 1.25;
  const auto sa = synth_gait(a), sb = synth_gait(b);
  CHECK(sb.subject_height() == doctest::Approx(1.25 * sa.subject_height()));
  for (std::size_t f = 0; f < sa.size(); f += 9) {
    const auto pa = forward_kinematics(sa.frame(f), sa.skeleton());
    const auto pb = forward_kinematics(sb.frame(f), sb.skeleton());
    for (std::size_t i = 0; i < kJointCount; ++i) CHECK((pb[i] - 1.25 * pa[i]).norm() < 1e-9);
  }
}
