#include "gaitcoach/attributes/profile.hpp"

#include <algorithm>

namespace gaitcoach::attributes {

using motion::Joint;
using motion::Vec3;
using nlohmann::json;

namespace {

PlanePoint project(const Vec3& rel, const Vec3& lateral) {
  const Vec3 anterior = lateral.cross(Vec3::UnitY());
  return {rel.dot(lateral), rel.dot(anterior)};
}

json to_json(const PlanePoint& p) { return json::array({p.lateral, p.anterior}); }

json to_json(const LimbPair& p) { return {{"left", to_json(p.left)}, {"right", to_json(p.right)}}; }

}  // namespace

ProfileSnapshot build_profile(const MotionContext& ctx) {
  const auto& sk = ctx.seq->skeleton();
  const auto& seg = *ctx.seg;
  const std::size_t pelvis = sk.index(Joint::pelvis);
  auto at = [&](Joint j) { return sk.index(j); };

  ProfileSnapshot out;
  for (std::size_t c = 0; c < seg.cycles.size(); ++c) {
    const auto& cyc = seg.cycles[c];
    CycleProfile cp;
    cp.cycle = c;
    const double n = static_cast<double>(cyc.length());
    auto accumulate = [&](PlanePoint& acc, const Vec3& rel, const Vec3& lat) {
      const PlanePoint q = project(rel, lat);
      acc.lateral += q.lateral / n;
      acc.anterior += q.anterior / n;
    };
    const double ground = std::min(cycle_ground(ctx, c, Side::left), cycle_ground(ctx, c, Side::right));
    for (std::size_t f = cyc.start_frame; f < cyc.end_frame; ++f) {
      const auto& p = ctx.track[f];
      const Vec3 lat = body_lateral(p, sk);
      const Vec3 root = p[pelvis];
      accumulate(cp.wrists.left, p[at(Joint::left_wrist)] - root, lat);
      accumulate(cp.wrists.right, p[at(Joint::right_wrist)] - root, lat);
      accumulate(cp.knees.left, p[at(Joint::left_knee)] - root, lat);
      accumulate(cp.knees.right, p[at(Joint::right_knee)] - root, lat);
      accumulate(cp.feet.left, p[at(Joint::left_ankle)] - root, lat);
      accumulate(cp.feet.right, p[at(Joint::right_ankle)] - root, lat);
      const double shoulders = (p[at(Joint::left_shoulder)].y() + p[at(Joint::right_shoulder)].y()) / 2;
      cp.planes.shoulder += (shoulders - root.y()) / n;
      cp.planes.ground += (ground - root.y()) / n;
    }
    for (Side side : {Side::left, Side::right}) {
      const auto f = landing_frame(seg, c, side);
      if (!f) continue;
      const auto& p = ctx.track[*f];
      const Joint ankle = side == Side::left ? Joint::left_ankle : Joint::right_ankle;
      const PlanePoint q = project(p[at(ankle)] - p[pelvis], body_lateral(p, sk));
      const Strike s = classify_landing(p, sk, side, cycle_ground(ctx, c, side), ctx.seq->subject_height());
      (side == Side::left ? cp.left_landing : cp.right_landing) = q;
      (side == Side::left ? cp.left_strike : cp.right_strike) = s;
    }
    cp.left_wrist_crossing = wrist_crosses(ctx, c, Side::left);
    cp.right_wrist_crossing = wrist_crosses(ctx, c, Side::right);
    out.cycles.push_back(cp);
  }
  return out;
}

ProfileSnapshot build_profile(const motion::MotionSequence& seq, const gait::CycleSegmentation& seg) {
  return build_profile(MotionContext(seq, seg));
}

json to_json(const ProfileSnapshot& profile) {
  json cycles = json::array();
  for (const auto& c : profile.cycles) {
    auto landing = [](const std::optional<PlanePoint>& p) { return p ? to_json(*p) : json(nullptr); };
    auto strike = [](const std::optional<Strike>& s) { return s ? json(to_string(*s)) : json(nullptr); };
    cycles.push_back({
        {"cycle", c.cycle},
        {"planes", {{"shoulder", c.planes.shoulder}, {"hip", c.planes.hip}, {"ground", c.planes.ground}}},
        {"wrists", to_json(c.wrists)},
        {"knees", to_json(c.knees)},
        {"feet", to_json(c.feet)},
        {"landing", {{"left", landing(c.left_landing)}, {"right", landing(c.right_landing)}}},
        {"strike", {{"left", strike(c.left_strike)}, {"right", strike(c.right_strike)}}},
        {"wristCrossing", {{"left", c.left_wrist_crossing}, {"right", c.right_wrist_crossing}}},
    });
  }
  return {{"cycles", std::move(cycles)}};
}

}  // namespace gaitcoach::attributes
