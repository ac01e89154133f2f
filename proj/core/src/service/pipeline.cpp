#include "gaitcoach/service/pipeline.hpp"

#include <algorithm>
#include <set>

#include "gaitcoach/attributes/catalog.hpp"
#include "gaitcoach/error.hpp"
#include "gaitcoach/feedback/correction.hpp"
#include "gaitcoach/motion/orientation.hpp"

namespace gaitcoach::service {

using attributes::AttributeMeta;
using attributes::AttrClass;

namespace {

template <typename F>
auto stage(const char* name, const char* input, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const PipelineError&) {
    throw;
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw PipelineError(name, input, e);
  }
}

}  // namespace

std::vector<AttributeMeta> attribute_set(const std::vector<AttributeMeta>& user,
                                         const motion::Skeleton& sample_skeleton,
                                         const motion::Skeleton& exemplar_skeleton) {
  std::vector<ValidationIssue> issues;
  for (std::size_t i = 0; i < user.size(); ++i) {
    const std::string prefix = "attributes[" + std::to_string(i) + "].";
    auto found = attributes::validate_meta(user[i], sample_skeleton, prefix);
    if (found.empty() && !(sample_skeleton == exemplar_skeleton)) {
      found = attributes::validate_meta(user[i], exemplar_skeleton, prefix);
    }
    issues.insert(issues.end(), found.begin(), found.end());
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));

  std::vector<AttributeMeta> out = attributes::catalog();
  std::set<std::string> names;
  for (const auto& m : out) names.insert(m.name);
  std::vector<AttributeMeta> sorted = user;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const AttributeMeta& a, const AttributeMeta& b) { return a.name < b.name; });
  for (const auto& m : sorted) {
    if (!names.insert(m.name).second) {
      throw Error(ErrorCode::duplicate_name, "name already defined: '" + m.name + "'");
    }
    out.push_back(m);
  }
  return out;
}

Analysis analyze(const motion::MotionSequence& sample, const motion::MotionSequence& exemplar,
                 const std::vector<AttributeMeta>& user_attributes, const PipelineConfig& config) {
  config.comparison.validate();
  auto metas = attribute_set(user_attributes, sample.skeleton(), exemplar.skeleton());

  Analysis a(stage("normalization", "sample", [&] { return motion::normalize_orientation(sample); }),
             stage("normalization", "exemplar", [&] { return motion::normalize_orientation(exemplar); }));
  a.config = config;
  a.metas = std::move(metas);
  a.sample_seg = stage("segmentation", "sample", [&] { return gait::segment(a.sample, config.segmentation); });
  a.exemplar_seg =
      stage("segmentation", "exemplar", [&] { return gait::segment(a.exemplar, config.segmentation); });

  const auto weights = config.weights.value_or(align::default_weights(a.sample.skeleton()));
  a.correspondence = stage("alignment", "", [&] {
    return align::anchored_align(a.sample, a.sample_seg, a.exemplar, a.exemplar_seg, weights);
  });
  const auto cycle_pairs = a.correspondence.cycle_pairs();
  if (cycle_pairs.empty()) {
    throw PipelineError("comparison", "",
                        Error(ErrorCode::nothing_to_compare, "nothing to compare: no complete shared cycle"));
  }

  stage("retrieval", "", [&] {
    const attributes::MotionContext sctx(a.sample, a.sample_seg);
    const attributes::MotionContext ectx(a.exemplar, a.exemplar_seg);
    for (const auto& m : a.metas) {
      a.sample_series.push_back(attributes::retrieve(sctx, m));
      a.exemplar_series.push_back(attributes::retrieve(ectx, m));
    }
    return 0;
  });

  std::vector<compare::AttributeDiffs> diffs;
  stage("comparison", "", [&] {
    for (std::size_t i = 0; i < a.metas.size(); ++i) {
      compare::AttributeDiffs d{a.metas[i], {}};
      try {
        d.diffs = compare::compare_attribute(a.sample_series[i], a.exemplar_series[i], cycle_pairs,
                                             a.sample.subject_height(), a.exemplar.subject_height(),
                                             config.comparison);
      } catch (const Error& e) {
        // Every cycle missing on one side: the row stays, without diffs.
        if (e.code() != ErrorCode::nothing_to_compare) throw;
      }
      diffs.push_back(std::move(d));
    }
    return 0;
  });

  a.report = compare::summarize(std::move(diffs), attributes::build_profile(a.sample, a.sample_seg),
                                attributes::build_profile(a.exemplar, a.exemplar_seg), config.comparison);
  a.report.sample = {a.sample.size(), a.sample.fps(), a.sample.subject_height(), a.sample_seg};
  a.report.exemplar = {a.exemplar.size(), a.exemplar.fps(), a.exemplar.subject_height(), a.exemplar_seg};
  a.report.cycle_pairs = cycle_pairs;
  return a;
}

compare::SuggestionReport run_session(const motion::MotionSequence& sample,
                                      const motion::MotionSequence& exemplar,
                                      const std::vector<AttributeMeta>& user_attributes,
                                      const PipelineConfig& config) {
  return analyze(sample, exemplar, user_attributes, config).report;
}

double correction_target(const Analysis& analysis, const compare::AttributeSummary& summary,
                         const compare::AttributeDiff& diff) {
  double target = *diff.exemplar_value;
  if (attributes::class_of(summary.meta.subtype) == AttrClass::positional &&
      !analysis.config.comparison.positional_scale) {
    target *= analysis.sample.subject_height() / analysis.exemplar.subject_height();
  }
  return target;
}

feedback::CorrectionAnimation get_animation(const Analysis& analysis, const std::string& id) {
  const auto* summary = analysis.report.find(id);
  if (!summary || !summary->suggested) {
    throw Error(ErrorCode::not_found, "no suggestion with id '" + id + "'");
  }
  const auto& diff = summary->cycles[*summary->worst_cycle];
  const auto& meta = summary->meta;
  const auto& sk = analysis.sample.skeleton();
  const std::size_t cycle_start = analysis.sample_seg.cycles[diff.cycle].start_frame;
  const auto& pose = analysis.sample.frame(diff.sample_frame.value_or(cycle_start));

  switch (attributes::class_of(meta.subtype)) {
    case AttrClass::positional:
    case AttrClass::angular: {
      const auto fix = feedback::solve_corrected_pose(pose, sk, meta, correction_target(analysis, *summary, diff));
      return feedback::build_animation(pose, fix.frame, sk, meta);
    }
    case AttrClass::temporal:
      return feedback::build_marker_clip(
          pose, sk, meta,
          feedback::TemporalMarker{*diff.sample_value, *diff.exemplar_value,
                                   *diff.sample_value - *diff.exemplar_value});
    case AttrClass::categorical:
      return feedback::build_marker_clip(
          pose, sk, meta, feedback::CategoricalMarker{*diff.sample_category, *diff.exemplar_category});
  }
  throw Error(ErrorCode::not_found, "no suggestion with id '" + id + "'");
}

nlohmann::json animation_document(const Analysis& analysis, const std::string& id) {
  const auto clip = get_animation(analysis, id);
  const auto& sk = analysis.sample.skeleton();
  const auto* summary = analysis.report.find(id);
  const auto& diff = summary->cycles[*summary->worst_cycle];
  auto doc = feedback::to_json(clip, sk);
  doc["id"] = id;
  doc["attribute"] = attributes::to_json(summary->meta);
  doc["cycle"] = diff.cycle;
  doc["sourceFrame"] = diff.sample_frame ? nlohmann::json(*diff.sample_frame) : nlohmann::json(nullptr);
  const auto cls = attributes::class_of(summary->meta.subtype);
  if (cls == AttrClass::positional || cls == AttrClass::angular) {
    doc["startValue"] = *diff.sample_value;
    doc["targetValue"] = correction_target(analysis, *summary, diff);
    doc["finalValue"] = attributes::frame_value(motion::forward_kinematics(clip.frames.back(), sk), sk,
                                                summary->meta);
  }
  return doc;
}

}  // namespace gaitcoach::service
