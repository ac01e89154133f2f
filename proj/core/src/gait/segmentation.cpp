#include "gaitcoach/gait/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "gaitcoach/error.hpp"
#include "gaitcoach/motion/kinematics.hpp"

namespace gaitcoach::gait {

using motion::MotionSequence;
using motion::Positions;

double event_phase(EventKind kind) noexcept { return 0.25 * static_cast<int>(kind); }

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::RL: return "RL";
    case EventKind::RE: return "RE";
    case EventKind::LL: return "LL";
    case EventKind::LE: return "LE";
  }
  return "?";
}

EventKind next(EventKind kind) noexcept {
  return static_cast<EventKind>((static_cast<int>(kind) + 1) % 4);
}

std::vector<double> moving_average(const std::vector<double>& x, int window) {
  const int n = static_cast<int>(x.size());
  const int half = std::max(window, 1) / 2;
  std::vector<double> out(x.size());
  for (int i = 0; i < n; ++i) {
    // Shrink symmetrically near the ends so the filter stays centered.
    const int h = std::min({half, i, n - 1 - i});
    double sum = 0.0;
    for (int k = i - h; k <= i + h; ++k) sum += x[k];
    out[i] = sum / (2 * h + 1);
  }
  return out;
}

namespace {

struct Extremum {
  std::size_t index;
  bool is_max;
};

int smoothing_window(const MotionSequence& seq, const SegmentationConfig& cfg) {
  int w = cfg.smoothing_window > 0 ? cfg.smoothing_window
                                   : std::max(3, static_cast<int>(std::lround(seq.fps() / 10.0)));
  if (w % 2 == 0) ++w;
  return w;
}

// Zigzag picking: an extremum is confirmed once the signal retreats by delta.
std::vector<Extremum> zigzag(const std::vector<double>& s, double delta) {
  std::vector<Extremum> out;
  if (s.empty()) return out;
  std::size_t imax = 0, imin = 0;
  double mx = s[0], mn = s[0];
  enum { unknown, want_max, want_min } state = unknown;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] > mx) { mx = s[i]; imax = i; }
    if (s[i] < mn) { mn = s[i]; imin = i; }
    if (state != want_min && s[i] < mx - delta) {
      out.push_back({imax, true});
      state = want_min;
      mn = s[i]; imin = i;
    } else if (state != want_max && s[i] > mn + delta) {
      out.push_back({imin, false});
      state = want_max;
      mx = s[i]; imax = i;
    }
  }
  return out;
}

// A boundary sample counts as an extremum only when the parabola through the
// three nearest raw samples peaks within half a frame of it.
bool boundary_extremum(const std::vector<double>& raw, std::size_t idx, bool is_max) {
  const std::size_t n = raw.size();
  if (n < 3) return false;
  const bool front = idx == 0;
  const double y0 = front ? raw[0] : raw[n - 1];
  const double y1 = front ? raw[1] : raw[n - 2];
  const double y2 = front ? raw[2] : raw[n - 3];
  const double a = (y0 - 2 * y1 + y2) / 2.0;
  const double b = (-3 * y0 + 4 * y1 - y2) / 2.0;  // derivative at x = 0
  if (std::abs(a) < 1e-15) return false;
  if (is_max ? a >= 0.0 : a <= 0.0) return false;
  const double vertex = -b / (2 * a);
  return std::abs(vertex) <= 0.5;
}

std::vector<Extremum> find_extrema(const std::vector<double>& raw, const std::vector<double>& smooth,
                                   double delta, int window) {
  std::vector<Extremum> all = zigzag(smooth, delta);
  std::vector<double> rev(smooth.rbegin(), smooth.rend());
  for (const auto& e : zigzag(rev, delta)) all.push_back({smooth.size() - 1 - e.index, e.is_max});

  // Snap to the raw extremum nearby, then drop unsupported boundary picks.
  const std::size_t n = raw.size();
  const std::size_t reach = static_cast<std::size_t>(window / 2);
  for (auto& e : all) {
    const std::size_t lo = e.index >= reach ? e.index - reach : 0;
    const std::size_t hi = std::min(n - 1, e.index + reach);
    std::size_t best = e.index;
    for (std::size_t k = lo; k <= hi; ++k) {
      if (e.is_max ? raw[k] > raw[best] : raw[k] < raw[best]) best = k;
    }
    e.index = best;
  }
  std::erase_if(all, [&](const Extremum& e) {
    return (e.index == 0 || e.index == n - 1) && !boundary_extremum(raw, e.index, e.is_max);
  });
  std::sort(all.begin(), all.end(), [](const Extremum& a, const Extremum& b) {
    return a.index != b.index ? a.index < b.index : a.is_max > b.is_max;
  });

  // Consecutive picks of the same type collapse onto the more extreme one.
  std::vector<Extremum> out;
  for (const auto& e : all) {
    if (!out.empty() && out.back().is_max == e.is_max) {
      auto& last = out.back();
      if (e.is_max ? raw[e.index] > raw[last.index] : raw[e.index] < raw[last.index]) last = e;
      continue;
    }
    out.push_back(e);
  }
  return out;
}

struct FootSignals {
  std::vector<double> anterior;  // ankle minus pelvis along +Z
  std::vector<double> height;    // ankle height
};

FootSignals foot_signals(const std::vector<Positions>& track, std::size_t ankle, std::size_t pelvis) {
  FootSignals s;
  s.anterior.reserve(track.size());
  s.height.reserve(track.size());
  for (const auto& p : track) {
    s.anterior.push_back(p[ankle].z() - p[pelvis].z());
    s.height.push_back(p[ankle].y());
  }
  return s;
}

}  // namespace

std::vector<KeyEvent> detect_key_events(const MotionSequence& seq, const SegmentationConfig& cfg) {
  const auto track = motion::pose_track(seq);
  const auto& sk = seq.skeleton();
  const double height = seq.subject_height();
  const int window = smoothing_window(seq, cfg);
  const std::size_t pelvis = sk.index(motion::Joint::pelvis);

  std::vector<KeyEvent> raw_events;
  const struct {
    motion::Joint ankle;
    EventKind landing, extension;
  } feet[2] = {{motion::Joint::right_ankle, EventKind::RL, EventKind::RE},
               {motion::Joint::left_ankle, EventKind::LL, EventKind::LE}};
  for (const auto& foot : feet) {
    const FootSignals sig = foot_signals(track, sk.index(foot.ankle), pelvis);
    const auto smooth = moving_average(sig.anterior, window);
    const auto [lo, hi] = std::minmax_element(smooth.begin(), smooth.end());
    const double range = *hi - *lo;
    if (!(range >= cfg.noise_floor * height)) {
      throw Error(ErrorCode::no_gait_detected, "no gait detected: foot trajectory is flat");
    }
    const auto extrema = find_extrema(sig.anterior, smooth, 0.3 * range, window);
    for (std::size_t k = 0; k < extrema.size(); ++k) {
      const auto& e = extrema[k];
      if (!e.is_max) {
        raw_events.push_back({foot.extension, e.index, event_phase(foot.extension)});
        continue;
      }
      // A forward extremum is a landing only when the foot is near the ground.
      const std::size_t a = k > 0 ? extrema[k - 1].index : 0;
      const std::size_t b = k + 1 < extrema.size() ? extrema[k + 1].index : seq.size() - 1;
      const double ground = *std::min_element(sig.height.begin() + a, sig.height.begin() + b + 1);
      if (sig.height[e.index] <= ground + cfg.contact_height * height) {
        raw_events.push_back({foot.landing, e.index, event_phase(foot.landing)});
      }
    }
  }
  std::stable_sort(raw_events.begin(), raw_events.end(),
                   [](const KeyEvent& a, const KeyEvent& b) { return a.frame < b.frame; });

  std::vector<KeyEvent> events;
  EventKind want = EventKind::RL;
  for (const auto& e : raw_events) {
    if (e.kind != want) continue;
    if (!events.empty() && e.frame <= events.back().frame) continue;
    events.push_back(e);
    want = next(want);
  }
  if (events.size() < 4) {
    throw Error(ErrorCode::no_gait_detected, "no gait detected: fewer than 4 alternating extrema");
  }
  return events;
}

std::vector<double> assign_phase(std::size_t frame_count, const std::vector<KeyEvent>& events) {
  if (events.size() < 2) throw Error(ErrorCode::invalid_argument, "phase assignment needs 2 events");
  std::vector<double> unwrapped(events.size());
  unwrapped[0] = events[0].phase;
  for (std::size_t k = 1; k < events.size(); ++k) {
    double step = events[k].phase - events[k - 1].phase;
    step -= std::floor(step);
    unwrapped[k] = unwrapped[k - 1] + step;
  }
  auto frame_of = [&](std::size_t k) { return static_cast<double>(events[k].frame); };
  std::vector<double> out(frame_count);
  std::size_t seg = 0;
  for (std::size_t f = 0; f < frame_count; ++f) {
    const double x = static_cast<double>(f);
    while (seg + 2 < events.size() && x >= frame_of(seg + 1)) ++seg;
    const double x0 = frame_of(seg), x1 = frame_of(seg + 1);
    const double u = unwrapped[seg] + (unwrapped[seg + 1] - unwrapped[seg]) * (x - x0) / (x1 - x0);
    out[f] = u - std::floor(u);
    if (out[f] >= 1.0) out[f] = 0.0;
  }
  return out;
}

std::vector<Cycle> extract_cycles(const std::vector<KeyEvent>& events) {
  std::vector<std::size_t> landings;
  for (const auto& e : events) {
    if (e.kind == EventKind::RL) landings.push_back(e.frame);
  }
  if (landings.size() < 2) throw Error(ErrorCode::no_complete_cycle, "no complete cycle");
  std::vector<Cycle> cycles;
  for (std::size_t k = 0; k + 1 < landings.size(); ++k) cycles.push_back({landings[k], landings[k + 1]});
  return cycles;
}

FootContacts detect_foot_contacts(const MotionSequence& seq, const std::vector<KeyEvent>& events,
                                  const SegmentationConfig& cfg) {
  FootContacts out;
  std::vector<Cycle> cycles;
  try {
    cycles = extract_cycles(events);
  } catch (const Error&) {
    return out;
  }
  const auto track = motion::pose_track(seq);
  const auto& sk = seq.skeleton();
  const double eps_h = cfg.contact_height * seq.subject_height();
  const std::size_t n = track.size();

  auto detect = [&](motion::Joint joint) {
    const std::size_t j = sk.index(joint);
    std::vector<double> speed(n, 0.0);
    for (std::size_t f = 0; f < n && n > 1; ++f) {
      const std::size_t a = f > 0 ? f - 1 : 0, b = std::min(n - 1, f + 1);
      speed[f] = (track[b][j] - track[a][j]).norm() * seq.fps() / static_cast<double>(b - a);
    }
    std::vector<bool> on(n, false);
    for (const auto& c : cycles) {
      double ground = std::numeric_limits<double>::infinity();
      for (std::size_t f = c.start_frame; f <= c.end_frame; ++f) ground = std::min(ground, track[f][j].y());
      for (std::size_t f = c.start_frame; f <= c.end_frame; ++f) {
        if (track[f][j].y() <= ground + eps_h && speed[f] < cfg.contact_speed) on[f] = true;
      }
    }
    std::vector<FrameInterval> runs;
    for (std::size_t f = 0; f < n; ++f) {
      if (!on[f]) continue;
      if (!runs.empty() && f - runs.back().end_frame <= 2) {
        runs.back().end_frame = f;
      } else {
        runs.push_back({f, f});
      }
    }
    return runs;
  };
  out.left = detect(motion::Joint::left_ankle);
  out.right = detect(motion::Joint::right_ankle);
  return out;
}

CycleSegmentation segment(const MotionSequence& seq, const SegmentationConfig& cfg) {
  CycleSegmentation seg;
  seg.events = detect_key_events(seq, cfg);
  seg.phase_curve = assign_phase(seq.size(), seg.events);
  seg.cycles = extract_cycles(seg.events);
  seg.contacts = detect_foot_contacts(seq, seg.events, cfg);
  return seg;
}

}  // namespace gaitcoach::gait
