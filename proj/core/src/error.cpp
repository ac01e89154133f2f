#include "gaitcoach/error.hpp"

namespace gaitcoach {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::malformed_document: return "malformed_document";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::unknown_joint: return "unknown_joint";
    case ErrorCode::invalid_skeleton: return "invalid_skeleton";
    case ErrorCode::invalid_rotation: return "invalid_rotation";
    case ErrorCode::cannot_infer_heading: return "cannot_infer_heading";
    case ErrorCode::no_gait_detected: return "no_gait_detected";
    case ErrorCode::no_complete_cycle: return "no_complete_cycle";
    case ErrorCode::no_overlapping_cycles: return "no_overlapping_cycles";
    case ErrorCode::nothing_to_compare: return "nothing_to_compare";
    case ErrorCode::target_unreachable: return "target_unreachable";
    case ErrorCode::validation_failed: return "validation_failed";
    case ErrorCode::duplicate_name: return "duplicate_name";
    case ErrorCode::not_found: return "not_found";
  }
  return "unknown";
}

namespace {

std::string join_issues(const std::vector<ValidationIssue>& issues) {
  std::string out;
  for (const auto& issue : issues) {
    if (!out.empty()) out += "; ";
    if (!issue.field.empty()) out += issue.field + ": ";
    out += issue.message;
  }
  return out.empty() ? std::string("validation failed") : out;
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : Error(ErrorCode::validation_failed, join_issues(issues)),
      issues_(std::move(issues)) {}

PipelineError::PipelineError(std::string stage, std::string input, const Error& cause)
    : Error(cause.code(), stage + ": " + cause.what()),
      stage_(std::move(stage)),
      input_(std::move(input)) {}

}  // namespace gaitcoach
