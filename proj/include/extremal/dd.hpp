#pragma once

#include <cstddef>
#include <vector>

#include "extremal/scalar.hpp"

namespace extremal {

/// Generators of { y in R^dim : <h, y> <= 0 for every h in hrows }.
/// The cone equals span(lineality) + cone(rays). Rays are extreme modulo the
/// lineality space and scaled to primitive integer vectors.
struct DdResult {
    std::vector<Vector> rays;
    std::vector<Vector> lineality;

    /// rays followed by +/- each lineality vector.
    std::vector<Vector> conic_generators() const;
};

DdResult double_description(const std::vector<Vector>& hrows, std::size_t dim);

}  // namespace extremal
