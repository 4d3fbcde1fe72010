#pragma once

#include <map>
#include <string>

namespace leakaudit {

/// Percentage of truth ids whose normalized prediction equals the normalized
/// truth. Missing or unnormalizable predictions count as wrong.
/// Throws Error(Validation) on an empty truth set or a prediction id that has
/// no truth.
double recognition_rate(const std::map<std::string, std::string>& predictions,
                        const std::map<std::string, std::string>& truths);

struct GapMetrics {
    double acc_orig = 0;
    double acc_fair = 0;
    double gap = 0;      // percentage points
    double rel_gap = 0;  // percent of the original error
};

/// gap = orig - fair; rel_gap = 100 * gap / (100 - orig).
/// Throws Error(InvalidArgument) for accuracies outside [0, 100] and
/// Error(Undefined) when acc_orig is 100 (no original error to relate to).
GapMetrics gap_metrics(double acc_orig, double acc_fair);

}  // namespace leakaudit
