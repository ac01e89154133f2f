#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaitcoach/align/dtw.hpp"
#include "gaitcoach/attributes/retrieve.hpp"

namespace gaitcoach::compare {

using attributes::AttributeMeta;
using attributes::AttributeSeries;

struct ComparisonConfig {
  double threshold = 0.25;  // significant when rel_error is strictly above
  double epsilon = 0.05;    // floor of the rel_error denominator
  std::optional<double> positional_scale;  // replaces subject height when set
  std::optional<double> angular_scale;     // replaces pi when set

  /// Throws ValidationError for non-positive values.
  void validate() const;
};

ComparisonConfig config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ComparisonConfig& cfg);

/// Maps a raw value into [0, 1]: angles over pi, lengths by magnitude over
/// subject height (clamped), temporal values as they are.
double normalize_value(double value, const AttributeMeta& meta, double subject_height,
                       const ComparisonConfig& cfg = {});

double rel_error(double sample_norm, double exemplar_norm, double epsilon);

/// Correction sense for moving the sample toward the exemplar.
std::string direction_for(const AttributeMeta& meta, double sample, double exemplar);

struct AttributeDiff {
  std::size_t cycle = 0;           // sample cycle
  std::size_t exemplar_cycle = 0;
  std::optional<double> sample_value, exemplar_value;
  std::optional<std::string> sample_category, exemplar_category;
  double sample_norm = 0.0, exemplar_norm = 0.0;
  double rel_error = 0.0;
  bool significant = false;
  std::string direction;
  std::optional<std::size_t> sample_frame, exemplar_frame;
  std::optional<double> sample_phase;
};

/// Per paired cycle difference; cycles missing on either side are skipped.
/// Throws Error(nothing_to_compare) when no pair is usable.
std::vector<AttributeDiff> compare_attribute(const AttributeSeries& sample, const AttributeSeries& exemplar,
                                             const std::vector<align::FramePair>& cycle_pairs,
                                             double sample_height, double exemplar_height,
                                             const ComparisonConfig& cfg = {});

}  // namespace gaitcoach::compare
