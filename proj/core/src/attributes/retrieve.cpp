#include "gaitcoach/attributes/retrieve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gaitcoach::attributes {

using motion::Joint;
using motion::Positions;
using motion::Vec3;

MotionContext::MotionContext(const motion::MotionSequence& s, const gait::CycleSegmentation& g)
    : seq(&s), seg(&g), track(motion::pose_track(s)) {}

double vector_angle(const Vec3& u, const Vec3& v) { return std::atan2(u.cross(v).norm(), u.dot(v)); }

double joint_angle(const Vec3& a, const Vec3& vertex, const Vec3& b) {
  return vector_angle(a - vertex, b - vertex);
}

namespace {

std::size_t slot(const motion::Skeleton& sk, const std::optional<std::string>& name) {
  return *sk.find(*name);
}

Joint side_joint(Side side, Joint left, Joint right) { return side == Side::left ? left : right; }

// Which foot a T2 meta is bound to, from its joint name.
Side foot_of(const std::string& joint) {
  return joint.rfind("left_", 0) == 0 ? Side::left : Side::right;
}

double circular_gap(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, 1.0 - d);
}

// Unwrapped phase at frame f of cycle c; the closing frame reads 1.
double cycle_phase(const gait::CycleSegmentation& seg, std::size_t c, std::size_t f) {
  const auto& cyc = seg.cycles[c];
  if (f == cyc.end_frame) return 1.0;
  const double u = seg.phase_curve[f];
  return (f > cyc.start_frame && u < 1e-12) ? 1.0 : u;
}

}  // namespace

double frame_value(const Positions& pos, const motion::Skeleton& sk, const AttributeMeta& m) {
  switch (m.subtype) {
    case Subtype::P1: return (pos[slot(sk, m.joint_o)] - pos[slot(sk, m.joint_a)]).norm();
    case Subtype::P2:
      return (pos[slot(sk, m.joint_o)] - pos[slot(sk, m.joint_a)]).dot(axis_vector(*m.axis));
    case Subtype::A1:
      return joint_angle(pos[slot(sk, m.joint_a)], pos[slot(sk, m.joint_o)], pos[slot(sk, m.joint_b)]);
    case Subtype::A2:
      return vector_angle(pos[slot(sk, m.joint_a)] - pos[slot(sk, m.joint_o)], axis_vector(*m.axis));
    default: return std::numeric_limits<double>::quiet_NaN();
  }
}

double phase_time(const gait::CycleSegmentation& seg, std::size_t c, double phase) {
  const auto& cyc = seg.cycles[c];
  const double len = static_cast<double>(cyc.length());
  if (phase <= 0.0) return 0.0;
  double prev = cycle_phase(seg, c, cyc.start_frame);
  for (std::size_t f = cyc.start_frame; f < cyc.end_frame; ++f) {
    const double next = cycle_phase(seg, c, f + 1);
    if (phase <= next && next > prev) {
      const double u = std::clamp((phase - prev) / (next - prev), 0.0, 1.0);
      return (static_cast<double>(f - cyc.start_frame) + u) / len;
    }
    prev = next;
  }
  return 1.0;
}

std::optional<std::size_t> landing_frame(const gait::CycleSegmentation& seg, std::size_t c, Side foot) {
  const auto& cyc = seg.cycles.at(c);
  const auto kind = foot == Side::left ? gait::EventKind::LL : gait::EventKind::RL;
  for (const auto& e : seg.events) {
    if (e.kind == kind && e.frame >= cyc.start_frame && e.frame < cyc.end_frame) return e.frame;
  }
  return std::nullopt;
}

double cycle_ground(const MotionContext& ctx, std::size_t c, Side foot) {
  const auto& cyc = ctx.seg->cycles.at(c);
  const std::size_t ankle =
      ctx.seq->skeleton().index(side_joint(foot, Joint::left_ankle, Joint::right_ankle));
  double ground = std::numeric_limits<double>::infinity();
  for (std::size_t f = cyc.start_frame; f <= cyc.end_frame; ++f) ground = std::min(ground, ctx.track[f][ankle].y());
  return ground;
}

std::string_view to_string(Strike s) noexcept {
  switch (s) {
    case Strike::fore: return "fore";
    case Strike::mid: return "mid";
    case Strike::rear: return "rear";
  }
  return "";
}

Strike classify_landing(const Positions& pos, const motion::Skeleton& sk, Side foot, double ground,
                        double subject_height) {
  const double delta = 0.01 * subject_height;
  const double heel = pos[sk.index(side_joint(foot, Joint::left_ankle, Joint::right_ankle))].y() - ground;
  const double toe = pos[sk.index(side_joint(foot, Joint::left_foot, Joint::right_foot))].y() - ground;
  if (toe < heel - delta) return Strike::fore;
  if (heel < toe - delta) return Strike::rear;
  return Strike::mid;
}

std::vector<std::optional<Strike>> classify_strike(const motion::MotionSequence& seq,
                                                   const gait::CycleSegmentation& seg, Side foot) {
  const MotionContext ctx(seq, seg);
  std::vector<std::optional<Strike>> out;
  for (std::size_t c = 0; c < seg.cycles.size(); ++c) {
    const auto f = landing_frame(seg, c, foot);
    if (!f) {
      out.push_back(std::nullopt);
      continue;
    }
    out.push_back(classify_landing(ctx.track[*f], seq.skeleton(), foot, cycle_ground(ctx, c, foot),
                                   seq.subject_height()));
  }
  return out;
}

Vec3 body_lateral(const Positions& pos, const motion::Skeleton& sk) {
  Vec3 l = pos[sk.index(Joint::left_hip)] - pos[sk.index(Joint::right_hip)];
  l.y() = 0.0;
  const double n = l.norm();
  return n > 1e-12 ? Vec3(l / n) : Vec3::UnitX();
}

bool wrist_crosses(const MotionContext& ctx, std::size_t c, Side side) {
  const auto& sk = ctx.seq->skeleton();
  const auto& cyc = ctx.seg->cycles.at(c);
  const std::size_t wrist = sk.index(side_joint(side, Joint::left_wrist, Joint::right_wrist));
  const std::size_t pelvis = sk.index(Joint::pelvis);
  const double sign = side == Side::left ? 1.0 : -1.0;
  for (std::size_t f = cyc.start_frame; f < cyc.end_frame; ++f) {
    const auto& p = ctx.track[f];
    if (sign * (p[wrist] - p[pelvis]).dot(body_lateral(p, sk)) < 0.0) return true;
  }
  return false;
}

AttributeSeries retrieve(const MotionContext& ctx, const AttributeMeta& meta) {
  const auto& seq = *ctx.seq;
  const auto& seg = *ctx.seg;
  const auto& sk = seq.skeleton();
  AttributeSeries out;
  out.meta = meta;
  const AttrClass cls = class_of(meta.subtype);

  if (cls == AttrClass::positional || cls == AttrClass::angular) {
    out.per_frame.reserve(ctx.track.size());
    for (const auto& p : ctx.track) out.per_frame.push_back(frame_value(p, sk, meta));
  }

  for (std::size_t c = 0; c < seg.cycles.size(); ++c) {
    const auto& cyc = seg.cycles[c];
    CycleValue v;
    v.cycle = c;
    if (cls == AttrClass::positional || cls == AttrClass::angular) {
      std::optional<std::size_t> pick;
      if (std::holds_alternative<double>(meta.phase)) {
        const double p = std::get<double>(meta.phase);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t f = cyc.start_frame; f < cyc.end_frame; ++f) {
          const double gap = circular_gap(seg.phase_curve[f], p);
          if (gap <= kPhaseTolerance && gap < best) {
            best = gap;
            pick = f;
          }
        }
      } else {
        const bool want_max = meta.extremum.value_or(Extremum::max) == Extremum::max;
        for (std::size_t f = cyc.start_frame; f < cyc.end_frame; ++f) {
          if (!pick || (want_max ? out.per_frame[f] > out.per_frame[*pick]
                                 : out.per_frame[f] < out.per_frame[*pick])) {
            pick = f;
          }
        }
      }
      if (pick) {
        v.frame = pick;
        v.value = out.per_frame[*pick];
      }
    } else if (meta.subtype == Subtype::T1) {
      v.value = phase_time(seg, c, std::get<double>(meta.phase));
    } else if (meta.subtype == Subtype::T2) {
      const auto r = std::get<PhaseRange>(meta.phase);
      if (!meta.joint_o) {
        v.value = phase_time(seg, c, r.end) - phase_time(seg, c, r.start);
      } else {
        const auto& contacts =
            foot_of(*meta.joint_o) == Side::left ? seg.contacts.left : seg.contacts.right;
        std::size_t on = 0;
        for (std::size_t f = cyc.start_frame; f < cyc.end_frame; ++f) {
          const double u = cycle_phase(seg, c, f);
          if (u < r.start || u > r.end) continue;
          if (std::any_of(contacts.begin(), contacts.end(),
                          [f](const gait::FrameInterval& iv) { return iv.contains(f); })) {
            ++on;
          }
        }
        v.value = static_cast<double>(on) / static_cast<double>(cyc.length());
      }
    } else if (*meta.classifier == kStrikeMode) {
      if (const auto f = landing_frame(seg, c, meta.side)) {
        v.frame = f;
        v.category = std::string(to_string(classify_landing(
            ctx.track[*f], sk, meta.side, cycle_ground(ctx, c, meta.side), seq.subject_height())));
      }
    } else {
      v.category = wrist_crosses(ctx, c, meta.side) ? "crossing" : "clear";
    }
    if (v.frame) v.phase = seg.phase_curve[*v.frame];
    out.per_cycle.push_back(std::move(v));
  }
  return out;
}

AttributeSeries retrieve(const motion::MotionSequence& seq, const gait::CycleSegmentation& seg,
                         const AttributeMeta& meta) {
  return retrieve(MotionContext(seq, seg), meta);
}

}  // namespace gaitcoach::attributes
