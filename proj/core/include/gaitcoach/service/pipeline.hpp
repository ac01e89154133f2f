#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaitcoach/align/anchored.hpp"
#include "gaitcoach/compare/report.hpp"
#include "gaitcoach/feedback/animation.hpp"

namespace gaitcoach::service {

struct PipelineConfig {
  compare::ComparisonConfig comparison;
  gait::SegmentationConfig segmentation;
  std::optional<align::JointWeights> weights;  // default_weights when unset
};

/// Everything one run computes; kept by sessions to build animations later.
struct Analysis {
  motion::MotionSequence sample, exemplar;  // heading-normalized
  gait::CycleSegmentation sample_seg, exemplar_seg;
  align::CorrespondenceMap correspondence;
  std::vector<attributes::AttributeMeta> metas;
  std::vector<attributes::AttributeSeries> sample_series, exemplar_series;
  compare::SuggestionReport report;
  PipelineConfig config;

  Analysis(motion::MotionSequence s, motion::MotionSequence e)
      : sample(std::move(s)), exemplar(std::move(e)) {}
};

/// Catalog entries followed by user attributes sorted by name. Throws
/// ValidationError for invalid metas and Error(duplicate_name) on clashes.
std::vector<attributes::AttributeMeta> attribute_set(const std::vector<attributes::AttributeMeta>& user,
                                                     const motion::Skeleton& sample_skeleton,
                                                     const motion::Skeleton& exemplar_skeleton);

/// normalize -> segment -> align -> retrieve -> compare -> summarize.
/// Module failures surface as PipelineError labelled with the stage.
Analysis analyze(const motion::MotionSequence& sample, const motion::MotionSequence& exemplar,
                 const std::vector<attributes::AttributeMeta>& user_attributes = {},
                 const PipelineConfig& config = {});

compare::SuggestionReport run_session(const motion::MotionSequence& sample,
                                      const motion::MotionSequence& exemplar,
                                      const std::vector<attributes::AttributeMeta>& user_attributes = {},
                                      const PipelineConfig& config = {});

/// Demonstration for the worst cycle of suggestion `id`. Throws
/// Error(not_found) for ids that are not suggestions.
feedback::CorrectionAnimation get_animation(const Analysis& analysis, const std::string& id);
nlohmann::json animation_document(const Analysis& analysis, const std::string& id);

/// Target the sample should reach for one cycle diff, in sample units.
double correction_target(const Analysis& analysis, const compare::AttributeSummary& summary,
                         const compare::AttributeDiff& diff);

}  // namespace gaitcoach::service
