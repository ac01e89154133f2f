#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaitcoach/error.hpp"
#include "gaitcoach/motion/skeleton.hpp"

namespace gaitcoach::attributes {

enum class AttrClass { positional, angular, temporal, categorical };
enum class Subtype { P1, P2, A1, A2, T1, T2, CAT };
enum class Axis { X, Y, Z };
enum class Side { left, neutral, right };
enum class Extremum { max, min };

struct PhaseRange {
  double start = 0.0;
  double end = 0.0;
  friend bool operator==(const PhaseRange&, const PhaseRange&) = default;
};

/// No phase, a single moment, or a closed range.
using PhaseSpec = std::variant<std::monostate, double, PhaseRange>;

/// Meta tuple describing how one attribute is retrieved.
///   P1  |J_o - J_A|                      P2  (J_o - J_A) . axis
///   A1  angle at J_o between J_A, J_B    A2  angle of (J_A - J_o) to axis
///   T1  cycle time fraction at a phase   T2  duration of a phase range
///   CAT registered classifier per cycle
/// T2 may bind J_o to an ankle or foot to measure that foot's ground contact.
struct AttributeMeta {
  std::string name;
  AttrClass cls = AttrClass::positional;
  Subtype subtype = Subtype::P1;
  std::optional<std::string> joint_a;
  std::optional<std::string> joint_o;
  std::optional<std::string> joint_b;
  std::optional<Axis> axis;
  Side side = Side::neutral;
  PhaseSpec phase;
  std::optional<std::string> classifier;
  std::optional<Extremum> extremum;

  friend bool operator==(const AttributeMeta&, const AttributeMeta&) = default;
};

AttrClass class_of(Subtype subtype) noexcept;

std::string_view to_string(AttrClass v) noexcept;
std::string_view to_string(Subtype v) noexcept;
std::string_view to_string(Axis v) noexcept;
std::string_view to_string(Side v) noexcept;
std::string_view to_string(Extremum v) noexcept;

motion::Vec3 axis_vector(Axis axis) noexcept;

/// Registered categorical classifiers.
inline constexpr std::string_view kStrikeMode = "strike_mode";
inline constexpr std::string_view kWristCrossing = "wrist_crossing";

/// Structured problems; empty when the meta is usable against `skeleton`.
/// Field names follow the document schema. `prefix` is prepended to each.
std::vector<ValidationIssue> validate_meta(const AttributeMeta& meta, const motion::Skeleton& skeleton,
                                           const std::string& prefix = "");

/// Throws ValidationError listing every issue.
void require_valid(const AttributeMeta& meta, const motion::Skeleton& skeleton);

/// Document form: {name, class, subtype, jA, jO, jB, axis, side, phase,
/// classifier, extremum}; phase is null, a number, or [start, end].
nlohmann::json to_json(const AttributeMeta& meta);
/// Throws ValidationError on shape errors, with field paths under `prefix`.
AttributeMeta meta_from_json(const nlohmann::json& doc, const std::string& prefix = "");
/// Accepts either an array of metas or {"attributes": [...]}.
std::vector<AttributeMeta> metas_from_json(const nlohmann::json& doc);

}  // namespace gaitcoach::attributes
