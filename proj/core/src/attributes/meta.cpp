#include "gaitcoach/attributes/meta.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace gaitcoach::attributes {

using nlohmann::json;

AttrClass class_of(Subtype subtype) noexcept {
  switch (subtype) {
    case Subtype::P1:
    case Subtype::P2: return AttrClass::positional;
    case Subtype::A1:
    case Subtype::A2: return AttrClass::angular;
    case Subtype::T1:
    case Subtype::T2: return AttrClass::temporal;
    case Subtype::CAT: return AttrClass::categorical;
  }
  return AttrClass::categorical;
}

std::string_view to_string(AttrClass v) noexcept {
  switch (v) {
    case AttrClass::positional: return "positional";
    case AttrClass::angular: return "angular";
    case AttrClass::temporal: return "temporal";
    case AttrClass::categorical: return "categorical";
  }
  return "";
}

std::string_view to_string(Subtype v) noexcept {
  static constexpr std::string_view names[] = {"P1", "P2", "A1", "A2", "T1", "T2", "CAT"};
  return names[static_cast<int>(v)];
}

std::string_view to_string(Axis v) noexcept {
  static constexpr std::string_view names[] = {"X", "Y", "Z"};
  return names[static_cast<int>(v)];
}

std::string_view to_string(Side v) noexcept {
  static constexpr std::string_view names[] = {"left", "neutral", "right"};
  return names[static_cast<int>(v)];
}

std::string_view to_string(Extremum v) noexcept { return v == Extremum::max ? "max" : "min"; }

motion::Vec3 axis_vector(Axis axis) noexcept {
  switch (axis) {
    case Axis::X: return motion::Vec3::UnitX();
    case Axis::Y: return motion::Vec3::UnitY();
    case Axis::Z: return motion::Vec3::UnitZ();
  }
  return motion::Vec3::UnitY();
}

namespace {

template <typename E, std::size_t N>
std::optional<E> parse_enum(std::string_view text, const std::string_view (&names)[N]) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == text) return static_cast<E>(i);
  }
  return std::nullopt;
}

constexpr std::string_view kClassNames[] = {"positional", "angular", "temporal", "categorical"};
constexpr std::string_view kSubtypeNames[] = {"P1", "P2", "A1", "A2", "T1", "T2", "CAT"};
constexpr std::string_view kAxisNames[] = {"X", "Y", "Z"};
constexpr std::string_view kSideNames[] = {"left", "neutral", "right"};
constexpr std::string_view kExtremumNames[] = {"max", "min"};

bool is_token(const std::string& s) {
  return !s.empty() && s.size() <= 64 && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-' || c == '.';
  });
}

bool foot_joint(const std::string& name) {
  return name == "left_ankle" || name == "right_ankle" || name == "left_foot" || name == "right_foot";
}

}  // namespace

std::vector<ValidationIssue> validate_meta(const AttributeMeta& m, const motion::Skeleton& skeleton,
                                           const std::string& prefix) {
  std::vector<ValidationIssue> issues;
  auto fail = [&](const std::string& field, const std::string& message) {
    issues.push_back({prefix + field, message});
  };
  const std::string sub(to_string(m.subtype));

  if (!is_token(m.name)) fail("name", "name must be a non-empty token of letters, digits, '_', '-' or '.'");
  if (m.cls != class_of(m.subtype)) {
    fail("class", sub + " belongs to class " + std::string(to_string(class_of(m.subtype))));
  }

  const struct {
    const char* field;
    const std::optional<std::string>* value;
  } joints[] = {{"jA", &m.joint_a}, {"jO", &m.joint_o}, {"jB", &m.joint_b}};
  for (const auto& j : joints) {
    if (*j.value && !skeleton.find(**j.value)) fail(j.field, "unknown joint '" + **j.value + "'");
  }

  // Required and forbidden fields per subtype: {jA, jO, jB, axis}.
  enum Need { none, required, optional };
  Need need[4] = {none, none, none, none};
  switch (m.subtype) {
    case Subtype::P1: need[0] = need[1] = required; break;
    case Subtype::P2: need[0] = need[1] = need[3] = required; break;
    case Subtype::A1: need[0] = need[1] = need[2] = required; break;
    case Subtype::A2: need[0] = need[1] = need[3] = required; break;
    case Subtype::T2: need[1] = optional; break;
    case Subtype::T1:
    case Subtype::CAT: break;
  }
  const bool present[4] = {m.joint_a.has_value(), m.joint_o.has_value(), m.joint_b.has_value(),
                           m.axis.has_value()};
  const char* fields[4] = {"jA", "jO", "jB", "axis"};
  for (int k = 0; k < 4; ++k) {
    if (need[k] == required && !present[k]) fail(fields[k], sub + " requires " + fields[k]);
    if (need[k] == none && present[k]) fail(fields[k], sub + " does not use " + fields[k]);
  }
  if (m.subtype == Subtype::T2 && m.joint_o && !foot_joint(*m.joint_o)) {
    fail("jO", "T2 binds only to an ankle or foot joint");
  }
  if (m.subtype == Subtype::A1 && m.joint_a && m.joint_b && m.joint_o &&
      (*m.joint_a == *m.joint_o || *m.joint_b == *m.joint_o)) {
    fail("jO", "A1 vertex must differ from both end joints");
  }
  if ((m.subtype == Subtype::P1 || m.subtype == Subtype::P2 || m.subtype == Subtype::A2) &&
      m.joint_a && m.joint_o && *m.joint_a == *m.joint_o) {
    fail("jO", sub + " needs two distinct joints");
  }

  const bool point = std::holds_alternative<double>(m.phase);
  const bool range = std::holds_alternative<PhaseRange>(m.phase);
  if (point) {
    const double p = std::get<double>(m.phase);
    if (!(p >= 0.0 && p < 1.0)) fail("phase", "phase out of range [0, 1)");
  }
  if (range) {
    const auto r = std::get<PhaseRange>(m.phase);
    if (!(r.start >= 0.0 && r.start <= 1.0 && r.end >= 0.0 && r.end <= 1.0)) {
      fail("phase", "phase out of range [0, 1]");
    } else if (r.start > r.end) {
      fail("phase", "range start exceeds end");
    } else if (r.start == r.end) {
      fail("phase", "range is empty");
    }
  }
  switch (m.subtype) {
    case Subtype::T1:
      if (!point) fail("phase", "T1 requires a phase moment");
      break;
    case Subtype::T2:
      if (!range) fail("phase", "T2 requires a phase range");
      break;
    case Subtype::CAT:
      if (!std::holds_alternative<std::monostate>(m.phase)) fail("phase", "CAT does not use phase");
      break;
    default:
      if (range) fail("phase", sub + " samples a single phase, not a range");
      if (!point && !m.extremum) fail("phase", sub + " requires a phase or an extremum");
      if (point && m.extremum) fail("extremum", "extremum and phase are exclusive");
      break;
  }
  if (m.extremum && class_of(m.subtype) != AttrClass::positional &&
      class_of(m.subtype) != AttrClass::angular) {
    fail("extremum", sub + " does not use extremum");
  }

  if (m.subtype == Subtype::CAT) {
    if (!m.classifier) {
      fail("classifier", "CAT requires a classifier");
    } else if (*m.classifier != kStrikeMode && *m.classifier != kWristCrossing) {
      fail("classifier", "unknown classifier '" + *m.classifier + "'");
    }
    if (m.side == Side::neutral) fail("side", "CAT classifiers need side left or right");
  } else if (m.classifier) {
    fail("classifier", sub + " does not use classifier");
  }
  return issues;
}

void require_valid(const AttributeMeta& meta, const motion::Skeleton& skeleton) {
  auto issues = validate_meta(meta, skeleton);
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

json to_json(const AttributeMeta& m) {
  auto opt = [](const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); };
  json phase = nullptr;
  if (std::holds_alternative<double>(m.phase)) phase = std::get<double>(m.phase);
  if (std::holds_alternative<PhaseRange>(m.phase)) {
    const auto r = std::get<PhaseRange>(m.phase);
    phase = json::array({r.start, r.end});
  }
  return {{"name", m.name},
          {"class", to_string(m.cls)},
          {"subtype", to_string(m.subtype)},
          {"jA", opt(m.joint_a)},
          {"jO", opt(m.joint_o)},
          {"jB", opt(m.joint_b)},
          {"axis", m.axis ? json(to_string(*m.axis)) : json(nullptr)},
          {"side", to_string(m.side)},
          {"phase", phase},
          {"classifier", opt(m.classifier)},
          {"extremum", m.extremum ? json(to_string(*m.extremum)) : json(nullptr)}};
}

AttributeMeta meta_from_json(const json& doc, const std::string& prefix) {
  std::vector<ValidationIssue> issues;
  auto fail = [&](const std::string& field, const std::string& message) {
    issues.push_back({prefix + field, message});
  };
  AttributeMeta m;
  if (!doc.is_object()) {
    fail("", "attribute must be an object");
    throw ValidationError(std::move(issues));
  }
  auto text = [&](const char* key, bool required) -> std::optional<std::string> {
    if (!doc.contains(key) || doc[key].is_null()) {
      if (required) fail(key, std::string(key) + " is required");
      return std::nullopt;
    }
    if (!doc[key].is_string()) {
      fail(key, std::string(key) + " must be a string");
      return std::nullopt;
    }
    return doc[key].get<std::string>();
  };
  if (auto v = text("name", true)) m.name = *v;
  const auto subtype = text("subtype", true);
  if (subtype) {
    if (auto s = parse_enum<Subtype>(*subtype, kSubtypeNames)) {
      m.subtype = *s;
      m.cls = class_of(*s);
    } else {
      fail("subtype", "unknown subtype '" + *subtype + "'");
    }
  }
  if (auto v = text("class", false)) {
    if (auto c = parse_enum<AttrClass>(*v, kClassNames)) m.cls = *c;
    else fail("class", "unknown class '" + *v + "'");
  }
  m.joint_a = text("jA", false);
  m.joint_o = text("jO", false);
  m.joint_b = text("jB", false);
  if (auto v = text("axis", false)) {
    if (auto a = parse_enum<Axis>(*v, kAxisNames)) m.axis = *a;
    else fail("axis", "axis must be one of X, Y, Z");
  }
  if (auto v = text("side", false)) {
    if (auto s = parse_enum<Side>(*v, kSideNames)) m.side = *s;
    else fail("side", "side must be left, neutral or right");
  }
  m.classifier = text("classifier", false);
  if (auto v = text("extremum", false)) {
    if (auto e = parse_enum<Extremum>(*v, kExtremumNames)) m.extremum = *e;
    else fail("extremum", "extremum must be max or min");
  }
  if (doc.contains("phase") && !doc["phase"].is_null()) {
    const auto& p = doc["phase"];
    if (p.is_number()) {
      m.phase = p.get<double>();
    } else if (p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number()) {
      m.phase = PhaseRange{p[0].get<double>(), p[1].get<double>()};
    } else {
      fail("phase", "phase must be null, a number or [start, end]");
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return m;
}

std::vector<AttributeMeta> metas_from_json(const json& doc) {
  const json* list = &doc;
  if (doc.is_object() && doc.contains("attributes")) list = &doc["attributes"];
  if (!list->is_array()) throw ValidationError("attributes", "expected an array of attributes");
  std::vector<AttributeMeta> out;
  std::vector<ValidationIssue> issues;
  for (std::size_t i = 0; i < list->size(); ++i) {
    try {
      out.push_back(meta_from_json((*list)[i], "attributes[" + std::to_string(i) + "]."));
    } catch (const ValidationError& e) {
      issues.insert(issues.end(), e.issues().begin(), e.issues().end());
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return out;
}

}  // namespace gaitcoach::attributes
