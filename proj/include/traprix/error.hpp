#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace traprix {

enum class errc {
  x_range_violation,
  degenerate_box,
  degenerate_segment,
  vertical_segment,
  intersects_existing,
  out_of_box,
  duplicate_segment,
  validation_failed,
  rebuild_limit_exceeded,
  cycle_detected,
  unknown_curve,
  invalid_rectangle,
  parse_error,
  generation_stalled,
  io_error,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::x_range_violation: return "XRangeViolation";
    case errc::degenerate_box: return "DegenerateBox";
    case errc::degenerate_segment: return "DegenerateSegment";
    case errc::vertical_segment: return "VerticalSegment";
    case errc::intersects_existing: return "IntersectsExisting";
    case errc::out_of_box: return "OutOfBox";
    case errc::duplicate_segment: return "DuplicateSegment";
    case errc::validation_failed: return "ValidationFailed";
    case errc::rebuild_limit_exceeded: return "RebuildLimitExceeded";
    case errc::cycle_detected: return "CycleDetected";
    case errc::unknown_curve: return "UnknownCurve";
    case errc::invalid_rectangle: return "InvalidRectangle";
    case errc::parse_error: return "ParseError";
    case errc::generation_stalled: return "GenerationStalled";
    case errc::io_error: return "IOError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` identifies the condition;
/// `what()` carries a human-readable message prefixed with the code name.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

  errc code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  errc code_;
  std::string message_;
};

}  // namespace traprix
