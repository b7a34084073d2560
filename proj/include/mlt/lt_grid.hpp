#pragma once

#include <vector>

namespace mlt::estimation {

// Abscissas for transform evaluation: nonempty, strictly positive, strictly
// increasing. Shared by the fitting objective and the reversibility gap.
struct LTGrid {
    std::vector<double> points;

    explicit LTGrid(std::vector<double> points_);
};

}  // namespace mlt::estimation
