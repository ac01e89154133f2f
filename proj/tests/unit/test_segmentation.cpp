#include <doctest.h>

#include <chrono>
#include <cmath>

#include "gaitcoach/error.hpp"
#include "gaitcoach/gait/segmentation.hpp"
#include "gaitcoach/motion/orientation.hpp"
#include "gaitcoach/motion/synth.hpp"

using namespace gaitcoach;
using namespace gaitcoach::gait;
using motion::GaitGenerator;
using motion::GaitParams;

namespace {

// Every generator event inside the detected span has a detection of the same
// kind within one frame, and vice versa.
void check_against_truth(const GaitGenerator& g, const std::vector<KeyEvent>& events, double tol = 1.0) {
  const auto truth = g.events();
  REQUIRE(!events.empty());
  for (const auto& e : events) {
    double best = 1e9;
    for (const auto& t : truth) {
      if (t.kind == static_cast<int>(e.kind)) best = std::min(best, std::abs(t.frame - double(e.frame)));
    }
    CHECK(best <= tol);
  }
  const double first = double(events.front().frame) - tol, last = double(events.back().frame) + tol;
  for (const auto& t : truth) {
    if (t.frame < first || t.frame > last) continue;
    bool found = false;
    for (const auto& e : events) {
      found = found || (static_cast<int>(e.kind) == t.kind && std::abs(t.frame - double(e.frame)) <= tol);
    }
    CHECK_MESSAGE(found, "missed event kind " << t.kind << " at frame " << t.frame);
  }
}

}  // namespace

TEST_CASE("event phases are the fixed constants") {
  CHECK(event_phase(EventKind::RL) == 0.0);
  CHECK(event_phase(EventKind::RE) == 0.25);
  CHECK(event_phase(EventKind::LL) == 0.5);
  CHECK(event_phase(EventKind::LE) == 0.75);
  CHECK(next(EventKind::LE) == EventKind::RL);
  CHECK(to_string(EventKind::LL) == "LL");
}

TEST_CASE("events match generator ground truth over five cycles") {
  GaitParams p;
  p.n_cycles = 5;
  GaitGenerator g(p);
  const auto seq = g.sequence();
  const auto events = detect_key_events(seq);
  CHECK(events.size() >= 20);
  check_against_truth(g, events);
  for (const auto& e : events) CHECK(e.phase == event_phase(e.kind));
  for (std::size_t i = 1; i < events.size(); ++i) {
    CHECK(events[i].kind == next(events[i - 1].kind));
    CHECK(events[i].frame > events[i - 1].frame);
  }
  const auto cycles = extract_cycles(events);
  CHECK(cycles.size() >= 5);
}

TEST_CASE("detection holds across parameter variations") {
  struct Case {
    double fps, duration, stance, scale, heading, knee;
  };
  for (const Case c : {Case{30, 1.0, 0.35, 1.0, 0.0, 1.0}, Case{60, 0.7, 0.3, 1.0, 0.0, 1.0},
                       Case{25, 0.8, 0.4, 0.9, 0.0, 0.6}, Case{30, 1.1, 0.25, 1.2, 0.0, 1.2},
                       Case{50, 0.75, 0.35, 1.0, 0.0, 0.8}}) {
    GaitParams p;
    p.fps = c.fps;
    p.cycle_duration = c.duration;
    p.stance_fraction = c.stance;
    p.body_scale = c.scale;
    p.knee_drive = c.knee;
    p.n_cycles = 5;
    GaitGenerator g(p);
    CAPTURE(c.fps);
    CAPTURE(c.duration);
    check_against_truth(g, detect_key_events(g.sequence()));
  }
}

TEST_CASE("phase curve: exact at events, monotone between") {
  GaitParams p;
  p.n_cycles = 4;
  const auto seq = motion::synth_gait(p);
  const auto seg = segment(seq);
  REQUIRE(seg.phase_curve.size() == seq.size());
  for (const auto& e : seg.events) CHECK(seg.phase_curve[e.frame] == e.phase);
  for (double v : seg.phase_curve) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
  for (const auto& c : seg.cycles) {
    for (std::size_t f = c.start_frame + 1; f < c.end_frame; ++f) {
      CHECK(seg.phase_curve[f] > seg.phase_curve[f - 1]);
    }
  }
}

TEST_CASE("phase assignment interpolates linearly between events") {
  const std::vector<KeyEvent> ev = {{EventKind::RL, 10, 0.0},  {EventKind::RE, 20, 0.25},
                                    {EventKind::LL, 30, 0.5},  {EventKind::LE, 40, 0.75},
                                    {EventKind::RL, 50, 0.0}};
  const auto ph = assign_phase(60, ev);
  CHECK(ph[15] == doctest::Approx(0.125));
  CHECK(ph[35] == doctest::Approx(0.625));
  CHECK(ph[45] == doctest::Approx(0.875));
  CHECK(ph[50] == 0.0);
  // Outside the events the nearest interval is extended and wrapped.
  CHECK(ph[5] == doctest::Approx(0.875));
  CHECK(ph[55] == doctest::Approx(0.125));

  const auto cycles = extract_cycles(ev);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0] == Cycle{10, 50});
  CHECK(cycles[0].length() == 40);
}

TEST_CASE("foot contacts follow ground truth") {
  GaitParams p;
  p.n_cycles = 5;
  GaitGenerator g(p);
  const auto seq = g.sequence();
  const auto seg = segment(seq);
  const double fps = p.fps;
  for (auto foot : {motion::Foot::left, motion::Foot::right}) {
    const auto& detected = foot == motion::Foot::left ? seg.contacts.left : seg.contacts.right;
    REQUIRE(!detected.empty());
    for (const auto& iv : detected) {
      // Each detected interval overlaps a generator stance whose ends are within two frames.
      bool matched = false;
      for (const auto& t : g.contacts(foot)) {
        const double a = t.start * fps, b = t.end * fps;
        if (std::abs(a - double(iv.start_frame)) <= 2.0 && std::abs(b - double(iv.end_frame)) <= 2.0) matched = true;
      }
      CHECK_MESSAGE(matched, "interval " << iv.start_frame << ".." << iv.end_frame);
    }
  }
}

TEST_CASE("moving average") {
  const std::vector<double> x = {0, 0, 3, 0, 0};
  const auto y = moving_average(x, 3);
  CHECK(y[2] == doctest::Approx(1.0));
  CHECK(y[1] == doctest::Approx(1.0));
  CHECK(y[0] == doctest::Approx(0.0));
  const auto same = moving_average(x, 1);
  CHECK(same == x);
  const std::vector<double> ramp = {1, 2, 3, 4, 5, 6};
  const auto r = moving_average(ramp, 5);
  for (std::size_t i = 0; i < ramp.size(); ++i) CHECK(r[i] == doctest::Approx(ramp[i]));
}

TEST_CASE("motion without gait is rejected") {
  const auto still = motion::synth_gait(GaitParams::still());
  try {
    segment(still);
    FAIL("accepted a still subject");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_gait_detected);
  }

  // Under one stride: events exist but no RL to RL span.
  GaitParams p;
  p.n_cycles = 1;
  const auto seq = motion::synth_gait(p);
  std::vector<motion::PoseFrame> part(seq.frames().begin() + 2, seq.frames().begin() + 27);
  const motion::MotionSequence cut(seq.skeleton(), seq.fps(), part);
  try {
    segment(cut);
    FAIL("accepted a partial stride");
  } catch (const Error& e) {
    CHECK((e.code() == ErrorCode::no_complete_cycle || e.code() == ErrorCode::no_gait_detected));
  }
}

TEST_CASE("segmentation of 300 frames is fast") {
  GaitParams p;
  p.n_cycles = 10;
  const auto seq = motion::synth_gait(p);
  REQUIRE(seq.size() >= 300);
  const auto t0 = std::chrono::steady_clock::now();
  const auto seg = segment(seq);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(s < 1.0);
  CHECK(seg.cycles.size() >= 9);
}

TEST_CASE("detection is unaffected by travel heading after normalization") {
  GaitParams p;
  p.heading = 2.2;
  p.n_cycles = 5;
  GaitGenerator g(p);
  const auto seq = motion::normalize_orientation(g.sequence());
  check_against_truth(g, detect_key_events(seq));
}
