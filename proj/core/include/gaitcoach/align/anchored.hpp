#pragma once

#include <vector>

#include "gaitcoach/align/dtw.hpp"
#include "gaitcoach/gait/segmentation.hpp"

namespace gaitcoach::align {

struct Anchor {
  gait::EventKind kind;
  std::size_t sample_frame;
  std::size_t exemplar_frame;
};

/// Sample-to-exemplar frame correspondence built from per-interval DTW.
class CorrespondenceMap {
 public:
  CorrespondenceMap() = default;
  CorrespondenceMap(std::vector<Anchor> anchors, std::vector<WarpPath> segments);

  const std::vector<Anchor>& anchors() const noexcept { return anchors_; }
  const std::vector<WarpPath>& segments() const noexcept { return segments_; }
  /// Concatenated path; the pair at a shared anchor appears once.
  const std::vector<FramePair>& pairs() const noexcept { return pairs_; }
  double cost() const noexcept { return cost_; }

  std::size_t first_sample_frame() const { return anchors_.front().sample_frame; }
  std::size_t last_sample_frame() const { return anchors_.back().sample_frame; }
  bool covers(std::size_t sample_frame) const noexcept;
  /// Exemplar frames matched to a sample frame, ascending. Empty outside the span.
  std::vector<std::size_t> matches(std::size_t sample_frame) const;

  /// (sample cycle, exemplar cycle) for every cycle bounded by shared anchors.
  std::vector<FramePair> cycle_pairs() const;

 private:
  std::vector<Anchor> anchors_;
  std::vector<WarpPath> segments_;
  std::vector<FramePair> pairs_;
  std::vector<std::size_t> first_pair_;  // index into pairs_ per covered sample frame
  double cost_ = 0.0;
};

/// Pairs key events by ordinal from the first RL of each side and warps every
/// interval independently. Throws Error(no_overlapping_cycles).
CorrespondenceMap anchored_align(const motion::MotionSequence& sample,
                                 const gait::CycleSegmentation& sample_seg,
                                 const motion::MotionSequence& exemplar,
                                 const gait::CycleSegmentation& exemplar_seg,
                                 const JointWeights& weights);

}  // namespace gaitcoach::align
