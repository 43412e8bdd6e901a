#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "lcorpp/errors.hpp"

namespace lcorpp {

// Row-normalized 2x2 estimate of P(predicted label | true label).
// Row/column 0 is "interested", row/column 1 is "not_interested".
struct ConfusionMatrix {
    std::array<std::array<double, 2>, 2> p{{{0.5, 0.5}, {0.5, 0.5}}};

    static ConfusionMatrix uniform() { return ConfusionMatrix{}; }

    // row-normalize raw counts, adding `smoothing` to every cell first
    static ConfusionMatrix from_counts(const std::array<std::array<double, 2>, 2>& counts,
                                       double smoothing = 1.0) {
        ConfusionMatrix m;
        for (int r = 0; r < 2; ++r) {
            const double total = counts[r][0] + counts[r][1] + 2.0 * smoothing;
            m.p[r][0] = (counts[r][0] + smoothing) / total;
            m.p[r][1] = (counts[r][1] + smoothing) / total;
        }
        return m;
    }

    void validate() const {
        for (int r = 0; r < 2; ++r) {
            double sum = 0.0;
            for (int c = 0; c < 2; ++c) {
                if (!(p[r][c] >= 0.0 && p[r][c] <= 1.0) || !std::isfinite(p[r][c]))
                    throw config_error("confusion matrix entry outside [0,1]");
                sum += p[r][c];
            }
            if (std::abs(sum - 1.0) > 1e-9)
                throw config_error("confusion matrix row does not sum to 1");
        }
    }

    bool operator==(const ConfusionMatrix&) const = default;
};

}  // namespace lcorpp
