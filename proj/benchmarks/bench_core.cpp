#include <benchmark/benchmark.h>

#include "gaitcoach/align/dtw.hpp"
#include "gaitcoach/gait/segmentation.hpp"
#include "gaitcoach/motion/kinematics.hpp"
#include "gaitcoach/motion/synth.hpp"
#include "gaitcoach/service/pipeline.hpp"

using namespace gaitcoach;

namespace {

motion::MotionSequence run(int cycles, double knee = 1.0) {
  motion::GaitParams p;
  p.n_cycles = cycles;
  p.knee_drive = knee;
  return motion::synth_gait(p);
}

void BM_ForwardKinematics(benchmark::State& state) {
  const auto seq = run(1);
  const auto& frame = seq.frame(10);
  for (auto _ : state) benchmark::DoNotOptimize(motion::forward_kinematics(frame, seq.skeleton()));
}
BENCHMARK(BM_ForwardKinematics);

void BM_Segment(benchmark::State& state) {
  const auto seq = run(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gait::segment(seq));
  state.SetLabel(std::to_string(seq.size()) + " frames");
}
BENCHMARK(BM_Segment)->Arg(3)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_Dtw(benchmark::State& state) {
  const auto a = run(static_cast<int>(state.range(0)));
  const auto b = run(static_cast<int>(state.range(0)), 0.7);
  const auto w = align::default_weights(a.skeleton());
  for (auto _ : state) benchmark::DoNotOptimize(align::dtw_align(a.frames(), b.frames(), w));
  state.SetLabel(std::to_string(a.size()) + "x" + std::to_string(b.size()));
}
BENCHMARK(BM_Dtw)->Arg(1)->Arg(3)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_RunSession(benchmark::State& state) {
  const auto s = run(static_cast<int>(state.range(0)), 0.6);
  const auto e = run(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(service::run_session(s, e));
}
BENCHMARK(BM_RunSession)->Arg(3)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
