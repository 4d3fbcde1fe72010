#include "metrics.hpp"

#include "error.hpp"
#include "plate.hpp"

#include <cmath>

namespace leakaudit {

double recognition_rate(const std::map<std::string, std::string>& predictions,
                        const std::map<std::string, std::string>& truths) {
    if (truths.empty()) throw Error(ErrorCode::Validation, "recognition rate needs a non-empty truth set");
    for (const auto& [id, _] : predictions)
        if (!truths.count(id)) throw Error(ErrorCode::Validation, "prediction for unknown id '" + id + "'");

    std::size_t correct = 0;
    for (const auto& [id, truth] : truths) {
        auto it = predictions.find(id);
        if (it == predictions.end()) continue;
        const PlateKey want = normalize_plate(truth);
        try {
            if (normalize_plate(it->second) == want) ++correct;
        } catch (const Error&) {
            // garbage prediction; wrong
        }
    }
    return 100.0 * static_cast<double>(correct) / static_cast<double>(truths.size());
}

GapMetrics gap_metrics(double acc_orig, double acc_fair) {
    auto check = [](double v, const char* name) {
        if (!std::isfinite(v) || v < 0.0 || v > 100.0)
            throw Error(ErrorCode::InvalidArgument, std::string(name) + " accuracy " + std::to_string(v) +
                                                        " is outside [0, 100]");
    };
    check(acc_orig, "original");
    check(acc_fair, "fair");
    if (acc_orig == 100.0)
        throw Error(ErrorCode::Undefined, "relative gap is undefined when the original accuracy is 100%");
    const double gap = acc_orig - acc_fair;
    return {acc_orig, acc_fair, gap, 100.0 * gap / (100.0 - acc_orig)};
}

}  // namespace leakaudit
