#include "gaitcoach/attributes/catalog.hpp"

namespace gaitcoach::attributes {

namespace {

std::string prefixed(Side side, const char* joint) {
  return std::string(side == Side::left ? "left_" : "right_") + joint;
}

std::vector<AttributeMeta> build() {
  std::vector<AttributeMeta> out;
  auto make = [](std::string name, Subtype st, Side side) {
    AttributeMeta m;
    m.name = std::move(name);
    m.subtype = st;
    m.cls = class_of(st);
    m.side = side;
    return m;
  };
  const Side sides[2] = {Side::right, Side::left};

  for (Side s : sides) {
    auto m = make(prefixed(s, "foot_landing"), Subtype::P2, s);
    m.joint_a = "pelvis";
    m.joint_o = prefixed(s, "ankle");
    m.axis = Axis::Z;
    m.phase = s == Side::right ? 0.0 : 0.5;
    out.push_back(m);
  }
  for (Side s : sides) {
    auto m = make(prefixed(s, "knee_lift"), Subtype::P2, s);
    m.joint_a = "pelvis";
    m.joint_o = prefixed(s, "knee");
    m.axis = Axis::Y;
    m.extremum = Extremum::max;
    out.push_back(m);
  }
  for (Side s : sides) {
    auto m = make(prefixed(s, "elbow_angle"), Subtype::A1, s);
    m.joint_a = prefixed(s, "shoulder");
    m.joint_o = prefixed(s, "elbow");
    m.joint_b = prefixed(s, "wrist");
    m.phase = s == Side::right ? 0.0 : 0.5;
    out.push_back(m);
  }
  {
    auto m = make("upper_body_lean", Subtype::A2, Side::neutral);
    m.joint_o = "pelvis";
    m.joint_a = "neck";
    m.axis = Axis::Y;
    m.extremum = Extremum::max;
    out.push_back(m);
  }
  for (Side s : sides) {
    auto m = make(prefixed(s, "back_kick"), Subtype::P2, s);
    m.joint_a = "pelvis";
    m.joint_o = prefixed(s, "ankle");
    m.axis = Axis::Y;
    m.phase = s == Side::right ? 0.25 : 0.75;
    out.push_back(m);
  }
  for (Side s : sides) {
    auto m = make(prefixed(s, "wrist_center"), Subtype::P1, s);
    m.joint_a = "pelvis";
    m.joint_o = prefixed(s, "wrist");
    m.extremum = Extremum::max;
    out.push_back(m);
  }
  for (Side s : sides) {
    auto m = make(prefixed(s, "contact_time"), Subtype::T2, s);
    m.joint_o = prefixed(s, "ankle");
    m.phase = PhaseRange{0.0, 1.0};
    out.push_back(m);
  }
  {
    // Time fraction of the cycle at which the left foot lands; 0.5 is even.
    auto m = make("landing_symmetry", Subtype::T1, Side::neutral);
    m.phase = 0.5;
    out.push_back(m);
  }
  for (Side s : sides) {
    auto m = make(prefixed(s, "strike_mode"), Subtype::CAT, s);
    m.classifier = std::string(kStrikeMode);
    out.push_back(m);
  }
  for (Side s : sides) {
    auto m = make(prefixed(s, "wrist_crossing"), Subtype::CAT, s);
    m.classifier = std::string(kWristCrossing);
    out.push_back(m);
  }
  return out;
}

}  // namespace

const std::vector<AttributeMeta>& catalog() {
  static const std::vector<AttributeMeta> entries = build();
  return entries;
}

const AttributeMeta* find_in_catalog(std::string_view name) {
  for (const auto& m : catalog()) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

}  // namespace gaitcoach::attributes
