#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gaitcoach/align/anchored.hpp"
#include "gaitcoach/align/dtw.hpp"
#include "gaitcoach/error.hpp"
#include "gaitcoach/gait/segmentation.hpp"
#include "gaitcoach/motion/kinematics.hpp"
#include "gaitcoach/motion/synth.hpp"
#include "oracles.hpp"

using namespace gaitcoach;
using namespace gaitcoach::align;
using motion::GaitGenerator;
using motion::GaitParams;
using motion::PoseFrame;

namespace {

void check_path_shape(const WarpPath& w, std::size_t n, std::size_t m) {
  REQUIRE(!w.pairs.empty());
  CHECK(w.pairs.front() == FramePair{0, 0});
  CHECK(w.pairs.back() == FramePair{n - 1, m - 1});
  for (std::size_t k = 1; k < w.pairs.size(); ++k) {
    const auto [i0, j0] = w.pairs[k - 1];
    const auto [i1, j1] = w.pairs[k];
    CHECK(i1 - i0 <= 1);
    CHECK(j1 - j0 <= 1);
    CHECK(i1 + j1 > i0 + j0);
    CHECK(i1 >= i0);
    CHECK(j1 >= j0);
  }
}

double tau(double u) { return u + 0.5 * std::sin(2 * std::numbers::pi * u) / (2 * std::numbers::pi); }

}  // namespace

TEST_CASE("dtw equals the recursive oracle on random instances") {
  for (unsigned seed = 0; seed < 100; ++seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> len(1, 12);
    std::uniform_real_distribution<double> val(0.0, 5.0);
    const std::size_t n = len(rng), m = len(rng);
    std::vector<std::vector<double>> c(n, std::vector<double>(m));
    for (auto& row : c)
      for (auto& v : row) v = seed % 3 == 0 ? std::round(val(rng)) : val(rng);
    auto cost = [&](std::size_t i, std::size_t j) { return c[i][j]; };
    const auto w = dtw(n, m, cost);
    CAPTURE(seed);
    CHECK(w.cost == doctest::Approx(oracle::dtw_cost(n, m, cost)).epsilon(1e-12));
    check_path_shape(w, n, m);
    double along = 0.0;
    for (auto [i, j] : w.pairs) along += c[i][j];
    CHECK(along == doctest::Approx(w.cost).epsilon(1e-12));
  }
}

TEST_CASE("dtw on pose frames matches the oracle on frame distances") {
  const auto weights = default_weights(motion::Skeleton::canonical());
  for (unsigned seed = 0; seed < 20; ++seed) {
    std::mt19937 rng(1000 + seed);
    std::uniform_int_distribution<int> len(2, 10);
    std::vector<PoseFrame> a(len(rng)), b(len(rng));
    for (auto& f : a) f = oracle::random_pose(rng, 0.8);
    for (auto& f : b) f = oracle::random_pose(rng, 0.8);
    const auto w = dtw_align(a, b, weights);
    const double expect = oracle::dtw_cost(a.size(), b.size(), [&](std::size_t i, std::size_t j) {
      return frame_distance(a[i], b[j], weights);
    });
    CHECK(w.cost == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("frame distance ignores the root and is a weighted geodesic sum") {
  const auto sk = motion::Skeleton::canonical();
  const auto w = default_weights(sk);
  CHECK(w[0] == 0.0);
  PoseFrame a = PoseFrame::identity(), b = PoseFrame::identity();
  b.rotations[0] = motion::axis_angle(motion::Vec3::UnitY(), 1.0);
  b.root_translation = motion::Vec3(3, 0, 0);
  CHECK(frame_distance(a, b, w) == 0.0);
  b.rotations[5] = motion::axis_angle(motion::Vec3::UnitX(), 0.4);
  CHECK(frame_distance(a, b, unit_weights()) == doctest::Approx(0.4));
  CHECK(frame_distance(a, b, w) == doctest::Approx(0.4 * w[5]));
  CHECK(frame_distance(b, a, w) == doctest::Approx(frame_distance(a, b, w)));
}

TEST_CASE("self alignment is free and diagonal") {
  const auto seq = motion::synth_gait({});
  const auto w = dtw_align(seq.frames(), seq.frames(), default_weights(seq.skeleton()));
  CHECK(w.cost == 0.0);
  REQUIRE(w.pairs.size() == seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) CHECK(w.pairs[i] == FramePair{i, i});
}

TEST_CASE("a known time warp is recovered") {
  GaitParams p;
  p.n_cycles = 2;
  GaitGenerator g(p);
  const std::size_t n = g.frame_count();
  const double duration = double(n - 1) / p.fps;
  std::vector<PoseFrame> exemplar, sample;
  for (std::size_t i = 0; i < n; ++i) {
    exemplar.push_back(g.pose_at(double(i) / p.fps));
    sample.push_back(g.pose_at(tau(double(i) / double(n - 1)) * duration));
  }
  const auto w = dtw_align(sample, exemplar, default_weights(g.skeleton()));
  check_path_shape(w, n, n);
  std::size_t good = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double expect = tau(double(i) / double(n - 1)) * double(n - 1);
    bool ok = true;
    for (const auto& [si, ej] : w.pairs) {
      if (si == i && std::abs(double(ej) - expect) > 2.0) ok = false;
    }
    good += ok;
  }
  CHECK(double(good) / double(n) >= 0.95);
}

TEST_CASE("anchored alignment pins key events") {
  GaitParams ps, pe;
  ps.n_cycles = 4;
  pe.n_cycles = 4;
  ps.cycle_duration = 0.8;
  pe.knee_drive = 0.7;
  const auto s = motion::synth_gait(ps), e = motion::synth_gait(pe);
  const auto ss = gait::segment(s), es = gait::segment(e);
  const auto map = anchored_align(s, ss, e, es, default_weights(s.skeleton()));
  REQUIRE(map.anchors().size() >= 8);
  for (const auto& a : map.anchors()) {
    const auto m = map.matches(a.sample_frame);
    CHECK(std::find(m.begin(), m.end(), a.exemplar_frame) != m.end());
  }
  for (std::size_t k = 1; k < map.pairs().size(); ++k) {
    CHECK(map.pairs()[k].first >= map.pairs()[k - 1].first);
    CHECK(map.pairs()[k].second >= map.pairs()[k - 1].second);
    CHECK(map.pairs()[k] != map.pairs()[k - 1]);
  }
  for (std::size_t f = map.first_sample_frame(); f <= map.last_sample_frame(); ++f) {
    CHECK(map.covers(f));
    CHECK(!map.matches(f).empty());
  }
  CHECK_FALSE(map.covers(map.last_sample_frame() + 1));
  double total = 0.0;
  for (const auto& sg : map.segments()) total += sg.cost;
  CHECK(map.cost() == doctest::Approx(total));
  const auto cp = map.cycle_pairs();
  CHECK(cp.size() == std::min(ss.cycles.size(), es.cycles.size()));
  for (std::size_t k = 0; k < cp.size(); ++k) CHECK(cp[k] == FramePair{k, k});
}

TEST_CASE("self anchored alignment has zero cost") {
  const auto s = motion::synth_gait({});
  const auto seg = gait::segment(s);
  const auto map = anchored_align(s, seg, s, seg, default_weights(s.skeleton()));
  CHECK(map.cost() == 0.0);
  for (const auto& [i, j] : map.pairs()) CHECK(i == j);
}

TEST_CASE("alignment needs two shared anchors") {
  const auto s = motion::synth_gait({});
  auto seg = gait::segment(s);
  auto other = seg;
  other.events.resize(1);
  try {
    anchored_align(s, seg, s, other, unit_weights());
    FAIL("aligned with one anchor");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_overlapping_cycles);
  }
}
