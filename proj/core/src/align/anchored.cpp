#include "gaitcoach/align/anchored.hpp"

#include <algorithm>

#include "gaitcoach/error.hpp"

namespace gaitcoach::align {

CorrespondenceMap::CorrespondenceMap(std::vector<Anchor> anchors, std::vector<WarpPath> segments)
    : anchors_(std::move(anchors)), segments_(std::move(segments)) {
  for (const auto& seg : segments_) {
    cost_ += seg.cost;
    for (const auto& p : seg.pairs) {
      if (!pairs_.empty() && pairs_.back() == p) continue;
      pairs_.push_back(p);
    }
  }
  if (anchors_.empty()) return;
  const std::size_t lo = first_sample_frame(), hi = last_sample_frame();
  first_pair_.assign(hi - lo + 1, pairs_.size());
  for (std::size_t k = pairs_.size(); k-- > 0;) first_pair_[pairs_[k].first - lo] = k;
}

bool CorrespondenceMap::covers(std::size_t f) const noexcept {
  return !anchors_.empty() && f >= first_sample_frame() && f <= last_sample_frame();
}

std::vector<std::size_t> CorrespondenceMap::matches(std::size_t f) const {
  std::vector<std::size_t> out;
  if (!covers(f)) return out;
  for (std::size_t k = first_pair_[f - first_sample_frame()]; k < pairs_.size() && pairs_[k].first == f; ++k) {
    out.push_back(pairs_[k].second);
  }
  return out;
}

std::vector<FramePair> CorrespondenceMap::cycle_pairs() const {
  std::vector<FramePair> out;
  for (std::size_t k = 0; 4 * k + 4 < anchors_.size(); ++k) out.emplace_back(k, k);
  return out;
}

CorrespondenceMap anchored_align(const motion::MotionSequence& sample,
                                 const gait::CycleSegmentation& sample_seg,
                                 const motion::MotionSequence& exemplar,
                                 const gait::CycleSegmentation& exemplar_seg,
                                 const JointWeights& weights) {
  const auto& se = sample_seg.events;
  const auto& ee = exemplar_seg.events;
  const std::size_t n = std::min(se.size(), ee.size());
  std::vector<Anchor> anchors;
  for (std::size_t k = 0; k < n; ++k) {
    if (se[k].kind != ee[k].kind) break;
    anchors.push_back({se[k].kind, se[k].frame, ee[k].frame});
  }
  if (anchors.size() < 2) {
    throw Error(ErrorCode::no_overlapping_cycles, "no overlapping cycles");
  }
  const std::span<const motion::PoseFrame> a(sample.frames());
  const std::span<const motion::PoseFrame> b(exemplar.frames());
  std::vector<WarpPath> segments;
  segments.reserve(anchors.size() - 1);
  for (std::size_t k = 0; k + 1 < anchors.size(); ++k) {
    const auto& s = anchors[k];
    const auto& t = anchors[k + 1];
    segments.push_back(dtw_align(a.subspan(s.sample_frame, t.sample_frame - s.sample_frame + 1),
                                 b.subspan(s.exemplar_frame, t.exemplar_frame - s.exemplar_frame + 1),
                                 weights, s.sample_frame, s.exemplar_frame));
  }
  return CorrespondenceMap(std::move(anchors), std::move(segments));
}

}  // namespace gaitcoach::align
