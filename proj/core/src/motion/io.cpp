#include "gaitcoach/motion/io.hpp"

#include <cmath>

#include "gaitcoach/error.hpp"

namespace gaitcoach::motion {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::malformed_document, "malformed document: " + what);
}

double number_at(const json& doc, std::size_t i, const std::string& where) {
  if (!doc.is_array() || i >= doc.size() || !doc[i].is_number()) malformed(where);
  const double v = doc[i].get<double>();
  if (!std::isfinite(v)) malformed(where + " is not finite");
  return v;
}

Vec3 vec3_from(const json& doc, const std::string& where) {
  if (!doc.is_array() || doc.size() != 3) malformed(where + " must be a 3-vector");
  return {number_at(doc, 0, where), number_at(doc, 1, where), number_at(doc, 2, where)};
}

}  // namespace

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json to_json(const Quat& q) { return json::array({q.w(), q.x(), q.y(), q.z()}); }

json to_json(const Skeleton& skeleton) {
  json joints = json::array();
  for (const auto& def : skeleton.joints()) {
    joints.push_back({{"name", def.name},
                      {"parent", def.parent ? json(*def.parent) : json(nullptr)},
                      {"offset", to_json(def.offset)}});
  }
  return joints;
}

json to_json(const PoseFrame& frame) {
  json q = json::array();
  for (const auto& r : frame.rotations) q.push_back(to_json(r));
  return {{"q", std::move(q)}, {"t", to_json(frame.root_translation)}};
}

json to_json(const MotionSequence& seq) {
  json frames = json::array();
  for (const auto& f : seq.frames()) frames.push_back(to_json(f));
  return {{"version", "1"},
          {"fps", seq.fps()},
          {"skeleton", to_json(seq.skeleton())},
          {"frames", std::move(frames)}};
}

std::string serialize_motion(const MotionSequence& seq) { return to_json(seq).dump(); }

Skeleton skeleton_from_json(const json& doc) {
  if (!doc.is_array()) malformed("skeleton must be an array");
  std::vector<JointDef> joints;
  joints.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& j = doc[i];
    const std::string where = "skeleton[" + std::to_string(i) + "]";
    if (!j.is_object() || !j.contains("name") || !j["name"].is_string()) {
      malformed(where + ".name missing");
    }
    JointDef def;
    def.name = j["name"].get<std::string>();
    if (!joint_from_name(def.name)) {
      throw Error(ErrorCode::unknown_joint, "unknown joint name '" + def.name + "'");
    }
    if (j.contains("parent") && !j["parent"].is_null()) {
      if (!j["parent"].is_number_unsigned()) malformed(where + ".parent must be an index");
      def.parent = j["parent"].get<std::size_t>();
    }
    if (!j.contains("offset")) malformed(where + ".offset missing");
    def.offset = vec3_from(j["offset"], where + ".offset");
    joints.push_back(std::move(def));
  }
  return Skeleton(std::move(joints));
}

PoseFrame frame_from_json(const json& doc, std::size_t frame_index) {
  const std::string where = "frames[" + std::to_string(frame_index) + "]";
  if (!doc.is_object() || !doc.contains("q") || !doc.contains("t")) malformed(where);
  const auto& q = doc["q"];
  if (!q.is_array() || q.size() != kJointCount) {
    malformed(where + ".q must hold " + std::to_string(kJointCount) + " quaternions");
  }
  PoseFrame frame;
  for (std::size_t i = 0; i < kJointCount; ++i) {
    const auto& e = q[i];
    if (!e.is_array() || e.size() != 4) malformed(where + ".q entries must be [w,x,y,z]");
    Quat r(number_at(e, 0, where), number_at(e, 1, where), number_at(e, 2, where),
           number_at(e, 3, where));
    const double n = r.norm();
    if (!(std::abs(n - 1.0) <= 1e-3)) {
      throw Error(ErrorCode::invalid_rotation,
                  "invalid rotation norm at " + where + ".q[" + std::to_string(i) + "]");
    }
    frame.rotations[i] = r.normalized();
  }
  frame.root_translation = vec3_from(doc["t"], where + ".t");
  return frame;
}

MotionSequence motion_from_json(const json& doc) {
  if (!doc.is_object()) malformed("top level must be an object");
  if (!doc.contains("version") || doc["version"] != "1") malformed("unsupported version");
  if (!doc.contains("fps") || !doc["fps"].is_number()) malformed("fps missing");
  const double fps = doc["fps"].get<double>();
  if (!(fps > 0.0)) throw Error(ErrorCode::invalid_argument, "fps must be positive");
  if (!doc.contains("skeleton")) malformed("skeleton missing");
  Skeleton skeleton = skeleton_from_json(doc["skeleton"]);
  if (!doc.contains("frames") || !doc["frames"].is_array() || doc["frames"].empty()) {
    malformed("frames must be a non-empty array");
  }
  std::vector<PoseFrame> frames;
  frames.reserve(doc["frames"].size());
  for (std::size_t f = 0; f < doc["frames"].size(); ++f) {
    frames.push_back(frame_from_json(doc["frames"][f], f));
  }
  return MotionSequence(std::move(skeleton), fps, std::move(frames));
}

MotionSequence parse_motion(std::string_view document) {
  json doc = json::parse(document.begin(), document.end(), nullptr, false);
  if (doc.is_discarded()) malformed("not valid JSON");
  return motion_from_json(doc);
}

}  // namespace gaitcoach::motion
