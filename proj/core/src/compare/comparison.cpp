#include "gaitcoach/compare/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gaitcoach::compare {

using attributes::AttrClass;
using attributes::Axis;
using attributes::Subtype;

void ComparisonConfig::validate() const {
  std::vector<ValidationIssue> issues;
  if (!(threshold > 0.0) || !std::isfinite(threshold)) issues.push_back({"threshold", "threshold must be positive"});
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) issues.push_back({"epsilon", "epsilon must be positive"});
  if (positional_scale && !(*positional_scale > 0.0)) {
    issues.push_back({"positionalScale", "positionalScale must be positive"});
  }
  if (angular_scale && !(*angular_scale > 0.0)) {
    issues.push_back({"angularScale", "angularScale must be positive"});
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

ComparisonConfig config_from_json(const nlohmann::json& doc) {
  ComparisonConfig cfg;
  if (doc.is_null()) return cfg;
  if (!doc.is_object()) throw ValidationError("config", "config must be an object");
  std::vector<ValidationIssue> issues;
  auto number = [&](const char* key) -> std::optional<double> {
    if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
    if (!doc[key].is_number()) {
      issues.push_back({std::string("config.") + key, std::string(key) + " must be a number"});
      return std::nullopt;
    }
    return doc[key].get<double>();
  };
  if (auto v = number("threshold")) cfg.threshold = *v;
  if (auto v = number("epsilon")) cfg.epsilon = *v;
  cfg.positional_scale = number("positionalScale");
  cfg.angular_scale = number("angularScale");
  if (!issues.empty()) throw ValidationError(std::move(issues));
  try {
    cfg.validate();
  } catch (const ValidationError& e) {
    for (const auto& i : e.issues()) issues.push_back({"config." + i.field, i.message});
    throw ValidationError(std::move(issues));
  }
  return cfg;
}

nlohmann::json to_json(const ComparisonConfig& cfg) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return {{"threshold", cfg.threshold},
          {"epsilon", cfg.epsilon},
          {"positionalScale", opt(cfg.positional_scale)},
          {"angularScale", opt(cfg.angular_scale)}};
}

double normalize_value(double value, const AttributeMeta& meta, double subject_height,
                       const ComparisonConfig& cfg) {
  switch (attributes::class_of(meta.subtype)) {
    case AttrClass::angular: return std::clamp(value / cfg.angular_scale.value_or(std::numbers::pi), 0.0, 1.0);
    case AttrClass::positional:
      return std::clamp(std::abs(value) / cfg.positional_scale.value_or(subject_height), 0.0, 1.0);
    case AttrClass::temporal: return std::clamp(value, 0.0, 1.0);
    case AttrClass::categorical: return 0.0;
  }
  return 0.0;
}

double rel_error(double sample_norm, double exemplar_norm, double epsilon) {
  return std::abs(sample_norm - exemplar_norm) / std::max(exemplar_norm, epsilon);
}

std::string direction_for(const AttributeMeta& meta, double sample, double exemplar) {
  if (sample == exemplar) return "none";
  const bool too_high = sample > exemplar;
  switch (meta.subtype) {
    case Subtype::A1:
    case Subtype::A2: return too_high ? "decrease angle" : "increase angle";
    case Subtype::P1: return too_high ? "bring closer" : "move farther";
    case Subtype::P2:
      switch (*meta.axis) {
        case Axis::X: return too_high ? "move right" : "move left";
        case Axis::Y: return too_high ? "lower" : "raise";
        case Axis::Z: return too_high ? "move backward" : "move forward";
      }
      break;
    case Subtype::T1: return too_high ? "earlier" : "later";
    case Subtype::T2: return too_high ? "shorten" : "lengthen";
    case Subtype::CAT: break;
  }
  return "none";
}

std::vector<AttributeDiff> compare_attribute(const AttributeSeries& sample, const AttributeSeries& exemplar,
                                             const std::vector<align::FramePair>& cycle_pairs,
                                             double sample_height, double exemplar_height,
                                             const ComparisonConfig& cfg) {
  std::vector<AttributeDiff> out;
  const auto& meta = sample.meta;
  const bool categorical = meta.subtype == Subtype::CAT;
  for (const auto& [si, ei] : cycle_pairs) {
    if (si >= sample.per_cycle.size() || ei >= exemplar.per_cycle.size()) continue;
    const auto& s = sample.per_cycle[si];
    const auto& e = exemplar.per_cycle[ei];
    if (s.missing() || e.missing()) continue;
    AttributeDiff d;
    d.cycle = si;
    d.exemplar_cycle = ei;
    d.sample_frame = s.frame;
    d.exemplar_frame = e.frame;
    d.sample_phase = s.phase;
    if (categorical) {
      d.sample_category = s.category;
      d.exemplar_category = e.category;
      const bool mismatch = *s.category != *e.category;
      d.rel_error = mismatch ? 1.0 : 0.0;
      d.direction = mismatch ? "change to " + *e.category : "none";
    } else {
      d.sample_value = s.value;
      d.exemplar_value = e.value;
      d.sample_norm = normalize_value(*s.value, meta, sample_height, cfg);
      d.exemplar_norm = normalize_value(*e.value, exemplar.meta, exemplar_height, cfg);
      d.rel_error = rel_error(d.sample_norm, d.exemplar_norm, cfg.epsilon);
      // Positional values compare in height-normalized units, so does the sense.
      const bool positional = attributes::class_of(meta.subtype) == AttrClass::positional;
      const double sv = positional ? *s.value / cfg.positional_scale.value_or(sample_height) : *s.value;
      const double ev = positional ? *e.value / cfg.positional_scale.value_or(exemplar_height) : *e.value;
      d.direction = direction_for(meta, sv, ev);
    }
    d.significant = d.rel_error > cfg.threshold;
    out.push_back(std::move(d));
  }
  if (out.empty()) {
    throw Error(ErrorCode::nothing_to_compare, "nothing to compare for '" + meta.name + "'");
  }
  return out;
}

}  // namespace gaitcoach::compare
