#include "gaitcoach/compare/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gaitcoach::compare {

using nlohmann::json;
using attributes::PhaseRange;
using attributes::Subtype;

const AttributeSummary* SuggestionReport::find(std::string_view name) const {
  for (const auto& a : attributes) {
    if (a.meta.name == name) return &a;
  }
  return nullptr;
}

namespace {

std::optional<double> glyph_phase(const AttributeSummary& a) {
  if (std::holds_alternative<double>(a.meta.phase)) return std::get<double>(a.meta.phase);
  if (std::holds_alternative<PhaseRange>(a.meta.phase)) {
    const auto r = std::get<PhaseRange>(a.meta.phase);
    return (r.start + r.end) / 2.0;
  }
  // Circular mean of the sampled phases of the significant cycles.
  double sx = 0.0, sy = 0.0;
  bool any = false;
  for (const auto& d : a.cycles) {
    if (!d.significant || !d.sample_phase) continue;
    sx += std::cos(2 * std::numbers::pi * *d.sample_phase);
    sy += std::sin(2 * std::numbers::pi * *d.sample_phase);
    any = true;
  }
  if (!any || std::hypot(sx, sy) < 1e-12) return std::nullopt;
  double p = std::atan2(sy, sx) / (2 * std::numbers::pi);
  p -= std::floor(p);
  return p >= 1.0 ? 0.0 : p;
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
json opt(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }
json opt(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

json to_json(const AttributeDiff& d, bool categorical) {
  json j = {{"cycle", d.cycle},
            {"exemplarCycle", d.exemplar_cycle},
            {"relError", d.rel_error},
            {"significant", d.significant},
            {"direction", d.direction},
            {"sampleFrame", opt(d.sample_frame)},
            {"exemplarFrame", opt(d.exemplar_frame)}};
  if (categorical) {
    j["sampleValue"] = opt(d.sample_category);
    j["exemplarValue"] = opt(d.exemplar_category);
  } else {
    j["sampleValue"] = opt(d.sample_value);
    j["exemplarValue"] = opt(d.exemplar_value);
    j["sampleNorm"] = d.sample_norm;
    j["exemplarNorm"] = d.exemplar_norm;
  }
  return j;
}

json interval_list(const std::vector<gait::FrameInterval>& v) {
  json out = json::array();
  for (const auto& iv : v) out.push_back(json::array({iv.start_frame, iv.end_frame}));
  return out;
}

json to_json(const SegmentationSummary& s) {
  json j = compare::to_json(s.segmentation);
  j["frames"] = s.frames;
  j["fps"] = s.fps;
  j["subjectHeight"] = s.subject_height;
  return j;
}

}  // namespace

json to_json(const gait::CycleSegmentation& seg) {
  json events = json::array();
  for (const auto& e : seg.events) {
    events.push_back({{"kind", gait::to_string(e.kind)}, {"frame", e.frame}, {"phase", e.phase}});
  }
  json cycles = json::array();
  for (const auto& c : seg.cycles) cycles.push_back(json::array({c.start_frame, c.end_frame}));
  return {{"events", std::move(events)},
          {"cycles", std::move(cycles)},
          {"contacts", {{"left", interval_list(seg.contacts.left)}, {"right", interval_list(seg.contacts.right)}}}};
}

SuggestionReport summarize(std::vector<AttributeDiffs> diffs, attributes::ProfileSnapshot sample_profile,
                           attributes::ProfileSnapshot exemplar_profile, const ComparisonConfig& cfg) {
  SuggestionReport report;
  report.config = cfg;
  report.sample_profile = std::move(sample_profile);
  report.exemplar_profile = std::move(exemplar_profile);

  double max_score = 0.0;
  for (auto& entry : diffs) {
    AttributeSummary a;
    a.meta = std::move(entry.meta);
    a.cycles = std::move(entry.diffs);
    const bool categorical = a.meta.subtype == Subtype::CAT;
    double sig_sum = 0.0;
    for (std::size_t k = 0; k < a.cycles.size(); ++k) {
      const auto& d = a.cycles[k];
      a.mean_rel_error += d.rel_error;
      if (!a.worst_cycle || d.rel_error > a.cycles[*a.worst_cycle].rel_error) a.worst_cycle = k;
      if (d.significant) {
        ++a.significant_cycles;
        sig_sum += d.rel_error;
      }
    }
    if (!a.cycles.empty()) {
      const double n = static_cast<double>(a.cycles.size());
      const double share = static_cast<double>(a.significant_cycles) / n;
      a.mean_rel_error /= n;
      if (categorical) {
        a.score = share;
        a.suggested = 2 * a.significant_cycles > a.cycles.size();
        if (a.suggested) a.glyph_weight = std::clamp(share, 0.2, 1.0);
      } else if (a.significant_cycles > 0) {
        a.score = sig_sum / static_cast<double>(a.significant_cycles) * share;
        a.suggested = true;
        max_score = std::max(max_score, a.score);
      }
    }
    report.attributes.push_back(std::move(a));
  }
  for (std::size_t i = 0; i < report.attributes.size(); ++i) {
    auto& a = report.attributes[i];
    if (!a.suggested) continue;
    if (a.meta.subtype != Subtype::CAT) {
      a.glyph_weight = max_score > 0.0 ? std::clamp(a.score / max_score, 0.2, 1.0) : 1.0;
    }
    a.glyph_phase = glyph_phase(a);
    report.suggestions.push_back({a.meta.name, i});
  }
  return report;
}

json to_json(const SuggestionReport& report) {
  json attrs = json::array();
  for (const auto& a : report.attributes) {
    const bool categorical = a.meta.subtype == Subtype::CAT;
    json cycles = json::array();
    for (const auto& d : a.cycles) cycles.push_back(to_json(d, categorical));
    attrs.push_back({{"meta", attributes::to_json(a.meta)},
                     {"score", a.score},
                     {"glyphWeight", a.glyph_weight},
                     {"lane", attributes::to_string(a.meta.side)},
                     {"suggested", a.suggested},
                     {"meanRelError", a.mean_rel_error},
                     {"significantCycles", a.significant_cycles},
                     {"worstCycle", a.worst_cycle ? json(a.cycles[*a.worst_cycle].cycle) : json(nullptr)},
                     {"cycles", std::move(cycles)}});
  }
  json suggestions = json::array();
  for (const auto& s : report.suggestions) {
    const auto& a = report.attributes[s.attribute];
    const auto& worst = a.cycles[*a.worst_cycle];
    suggestions.push_back({{"id", s.id},
                           {"attribute", a.meta.name},
                           {"class", attributes::to_string(a.meta.cls)},
                           {"lane", attributes::to_string(a.meta.side)},
                           {"glyphWeight", a.glyph_weight},
                           {"score", a.score},
                           {"phase", opt(a.glyph_phase)},
                           {"cycle", worst.cycle},
                           {"direction", worst.direction}});
  }
  json pairs = json::array();
  for (const auto& [s, e] : report.cycle_pairs) pairs.push_back(json::array({s, e}));
  return {{"config", to_json(report.config)},
          {"attributes", std::move(attrs)},
          {"suggestions", std::move(suggestions)},
          {"profiles", {{"sample", attributes::to_json(report.sample_profile)},
                        {"exemplar", attributes::to_json(report.exemplar_profile)}}},
          {"segmentation", {{"sample", to_json(report.sample)}, {"exemplar", to_json(report.exemplar)}}},
          {"cyclePairs", std::move(pairs)}};
}

std::string serialize_report(const SuggestionReport& report) { return to_json(report).dump(2) + "\n"; }

}  // namespace gaitcoach::compare
