#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "gaitcoach/motion/pose.hpp"

namespace gaitcoach::gait {

enum class EventKind { RL, RE, LL, LE };

/// RL 0, RE 0.25, LL 0.5, LE 0.75.
double event_phase(EventKind kind) noexcept;
std::string_view to_string(EventKind kind) noexcept;
EventKind next(EventKind kind) noexcept;

struct KeyEvent {
  EventKind kind;
  std::size_t frame;
  double phase;

  friend bool operator==(const KeyEvent&, const KeyEvent&) = default;
};

/// Frames [start_frame, end_frame]; end is the next cycle's start.
struct Cycle {
  std::size_t start_frame;
  std::size_t end_frame;

  std::size_t length() const noexcept { return end_frame - start_frame; }
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// Inclusive frame interval.
struct FrameInterval {
  std::size_t start_frame;
  std::size_t end_frame;

  std::size_t frames() const noexcept { return end_frame - start_frame + 1; }
  bool contains(std::size_t f) const noexcept { return f >= start_frame && f <= end_frame; }
  friend bool operator==(const FrameInterval&, const FrameInterval&) = default;
};

struct FootContacts {
  std::vector<FrameInterval> left;
  std::vector<FrameInterval> right;
};

struct CycleSegmentation {
  std::vector<KeyEvent> events;
  std::vector<double> phase_curve;
  std::vector<Cycle> cycles;
  FootContacts contacts;
};

struct SegmentationConfig {
  double contact_height = 0.05;  // fraction of subject height above cycle ground
  double contact_speed = 0.5;    // m/s
  int smoothing_window = 0;      // frames; 0 picks max(3, fps/10)
  double noise_floor = 0.01;     // minimum trajectory range, fraction of height
};

/// Landings and extensions from ankle trajectories of a heading-normalized
/// sequence. Throws Error(no_gait_detected).
std::vector<KeyEvent> detect_key_events(const motion::MotionSequence& seq,
                                        const SegmentationConfig& cfg = {});

/// Per-frame phase in [0, 1). Requires at least two events.
std::vector<double> assign_phase(std::size_t frame_count, const std::vector<KeyEvent>& events);

/// One cycle per consecutive RL pair. Throws Error(no_complete_cycle).
std::vector<Cycle> extract_cycles(const std::vector<KeyEvent>& events);

FootContacts detect_foot_contacts(const motion::MotionSequence& seq,
                                  const std::vector<KeyEvent>& events,
                                  const SegmentationConfig& cfg = {});

/// Runs all of the above.
CycleSegmentation segment(const motion::MotionSequence& seq, const SegmentationConfig& cfg = {});

std::vector<double> moving_average(const std::vector<double>& x, int window);

}  // namespace gaitcoach::gait
