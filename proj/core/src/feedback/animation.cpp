#include "gaitcoach/feedback/animation.hpp"

#include <algorithm>

#include "gaitcoach/error.hpp"
#include "gaitcoach/motion/io.hpp"
#include "gaitcoach/motion/kinematics.hpp"

namespace gaitcoach::feedback {

using motion::Vec3;
using nlohmann::json;

double smoothstep(double u) noexcept {
  u = std::clamp(u, 0.0, 1.0);
  return u * u * (3.0 - 2.0 * u);
}

CorrectionAnimation build_animation(const motion::PoseFrame& wrong, const motion::PoseFrame& corrected,
                                    const motion::Skeleton& sk, const attributes::AttributeMeta& meta,
                                    std::size_t n_frames) {
  if (n_frames < 2) throw Error(ErrorCode::invalid_argument, "an animation needs at least 2 frames");
  const auto cls = attributes::class_of(meta.subtype);
  if (cls != attributes::AttrClass::positional && cls != attributes::AttrClass::angular) {
    throw Error(ErrorCode::invalid_argument, "pose animation needs a positional or angular attribute");
  }
  CorrectionAnimation clip;
  for (std::size_t j = 0; j < motion::kJointCount && !clip.joint; ++j) {
    if (wrong.rotations[j].coeffs() != corrected.rotations[j].coeffs()) clip.joint = j;
  }
  clip.frames.reserve(n_frames);
  for (std::size_t k = 0; k < n_frames; ++k) {
    if (k == 0) { clip.frames.push_back(wrong); continue; }
    if (k + 1 == n_frames) { clip.frames.push_back(corrected); continue; }
    motion::PoseFrame f = wrong;
    if (clip.joint) {
      const double t = smoothstep(static_cast<double>(k) / static_cast<double>(n_frames - 1));
      f.rotations[*clip.joint] =
          wrong.rotations[*clip.joint].slerp(t, corrected.rotations[*clip.joint]).normalized();
    }
    clip.frames.push_back(f);
  }

  const auto before = motion::forward_kinematics(wrong, sk);
  const auto after = motion::forward_kinematics(corrected, sk);
  auto at = [&](const motion::Positions& p, const std::optional<std::string>& name) { return p[*sk.find(*name)]; };
  std::optional<std::pair<Vec3, Vec3>> displacement;
  if (cls == attributes::AttrClass::positional) {
    PositionalMarker m{at(before, meta.joint_o), at(after, meta.joint_o), at(before, meta.joint_a)};
    displacement = std::pair{m.from, m.to};
    clip.marker = m;
  } else {
    auto far_end = [&](const motion::Positions& p) -> Vec3 {
      if (meta.subtype == attributes::Subtype::A1) return at(p, meta.joint_b);
      const Vec3 o = at(p, meta.joint_o);
      return o + attributes::axis_vector(*meta.axis) * (at(p, meta.joint_a) - o).norm();
    };
    clip.marker = AngularMarker{at(before, meta.joint_o), at(before, meta.joint_a), far_end(before),
                                at(after, meta.joint_o),  at(after, meta.joint_a),  far_end(after)};
  }
  clip.viewpoint = suggest_viewpoint(before, sk, meta, displacement);
  return clip;
}

CorrectionAnimation build_marker_clip(const motion::PoseFrame& pose, const motion::Skeleton& sk,
                                      const attributes::AttributeMeta& meta, Marker marker,
                                      std::size_t n_frames) {
  if (n_frames < 2) throw Error(ErrorCode::invalid_argument, "an animation needs at least 2 frames");
  CorrectionAnimation clip;
  clip.frames.assign(n_frames, pose);
  clip.marker = std::move(marker);
  clip.viewpoint = suggest_viewpoint(motion::forward_kinematics(pose, sk), sk, meta);
  return clip;
}

json to_json(const Marker& marker) {
  using motion::to_json;
  return std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PositionalMarker>) {
          return {{"kind", "positional"},
                  {"geometry", {{"from", to_json(m.from)}, {"to", to_json(m.to)}, {"base", to_json(m.base)}}}};
        } else if constexpr (std::is_same_v<T, AngularMarker>) {
          auto wedge = [](const Vec3& v, const Vec3& a, const Vec3& b) {
            return json{{"vertex", to_json(v)}, {"a", to_json(a)}, {"b", to_json(b)}};
          };
          return {{"kind", "angular"},
                  {"geometry", {{"wrong", wedge(m.vertex_wrong, m.a_wrong, m.b_wrong)},
                                {"corrected", wedge(m.vertex_corrected, m.a_corrected, m.b_corrected)}}}};
        } else if constexpr (std::is_same_v<T, TemporalMarker>) {
          return {{"kind", "temporal"},
                  {"geometry", {{"sample", m.sample}, {"exemplar", m.exemplar}, {"offset", m.offset}}}};
        } else {
          return {{"kind", "categorical"}, {"geometry", {{"sample", m.sample}, {"exemplar", m.exemplar}}}};
        }
      },
      marker);
}

json to_json(const CorrectionAnimation& clip, const motion::Skeleton& sk) {
  json frames = json::array();
  for (const auto& f : clip.frames) frames.push_back(motion::to_json(f));
  return {{"fps", clip.fps},
          {"holdFrames", clip.hold_frames},
          {"joint", clip.joint ? json(sk.joint(*clip.joint).name) : json(nullptr)},
          {"frames", std::move(frames)},
          {"marker", to_json(clip.marker)},
          {"viewpoint", to_json(clip.viewpoint)}};
}

}  // namespace gaitcoach::feedback
