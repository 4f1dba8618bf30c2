#pragma once

namespace logsum {

// Comparison points reported next to measured numbers so regressions are
// visible at a glance.
inline constexpr double kReferenceCachedLogsPerSec = 8550.66;
inline constexpr double kReferenceColdLogsPerSec = 39.05;
inline constexpr double kReferenceMeanF1 = 0.741;
inline constexpr double kReferenceCompressionRatio = 0.031;

}  // namespace logsum
