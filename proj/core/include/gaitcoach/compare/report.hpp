#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaitcoach/attributes/profile.hpp"
#include "gaitcoach/compare/comparison.hpp"

namespace gaitcoach::compare {

struct AttributeSummary {
  AttributeMeta meta;
  std::vector<AttributeDiff> cycles;
  double mean_rel_error = 0.0;
  std::optional<std::size_t> worst_cycle;  // index into `cycles`
  std::size_t significant_cycles = 0;
  double score = 0.0;
  double glyph_weight = 0.0;  // 0 unless suggested
  bool suggested = false;
  std::optional<double> glyph_phase;  // timeline position
};

struct Suggestion {
  std::string id;             // attribute name
  std::size_t attribute = 0;  // index into SuggestionReport::attributes
};

struct SegmentationSummary {
  std::size_t frames = 0;
  double fps = 0.0;
  double subject_height = 0.0;
  gait::CycleSegmentation segmentation;
};

struct SuggestionReport {
  std::vector<AttributeSummary> attributes;
  std::vector<Suggestion> suggestions;
  attributes::ProfileSnapshot sample_profile, exemplar_profile;
  SegmentationSummary sample, exemplar;
  std::vector<align::FramePair> cycle_pairs;
  ComparisonConfig config;

  const AttributeSummary* find(std::string_view name) const;
};

struct AttributeDiffs {
  AttributeMeta meta;
  std::vector<AttributeDiff> diffs;
};

/// Scores every attribute and picks the suggestions. Continuous attributes:
/// score = mean rel_error over significant cycles * significant fraction,
/// glyph weight = clamp(score / max score, 0.2, 1). Categorical attributes
/// are suggested when most cycles mismatch, weighted by the mismatch share.
SuggestionReport summarize(std::vector<AttributeDiffs> diffs, attributes::ProfileSnapshot sample_profile,
                           attributes::ProfileSnapshot exemplar_profile, const ComparisonConfig& cfg);

nlohmann::json to_json(const SuggestionReport& report);
nlohmann::json to_json(const gait::CycleSegmentation& seg);
/// Stable text form; identical reports serialize to identical bytes.
std::string serialize_report(const SuggestionReport& report);

}  // namespace gaitcoach::compare
