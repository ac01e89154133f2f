#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gaitcoach {

enum class ErrorCode {
  malformed_document,
  invalid_argument,
  unknown_joint,
  invalid_skeleton,
  invalid_rotation,
  cannot_infer_heading,
  no_gait_detected,
  no_complete_cycle,
  no_overlapping_cycles,
  nothing_to_compare,
  target_unreachable,
  validation_failed,
  duplicate_name,
  not_found,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for every failure the engine reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// One problem found while validating a user supplied document.
struct ValidationIssue {
  std::string field;
  std::string message;

  friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);
  ValidationError(std::string field, std::string message)
      : ValidationError(std::vector<ValidationIssue>{ValidationIssue{std::move(field), std::move(message)}}) {}

  const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

/// A module error re-raised by the pipeline with the stage that produced it.
/// what() reads "<stage>: <original message>".
class PipelineError : public Error {
 public:
  PipelineError(std::string stage, std::string input, const Error& cause);

  const std::string& stage() const noexcept { return stage_; }
  /// "sample", "exemplar" or empty when the stage consumes both inputs.
  const std::string& input() const noexcept { return input_; }
  ErrorCode cause_code() const noexcept { return code(); }

 private:
  std::string stage_;
  std::string input_;
};

}  // namespace gaitcoach
