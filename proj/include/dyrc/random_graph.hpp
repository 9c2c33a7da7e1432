#pragma once

#include <cstddef>

#include "dyrc/error.hpp"
#include "dyrc/graph.hpp"
#include "dyrc/rng.hpp"

namespace dyrc {

/// Directed G(n, p): each ordered pair (i, j), i != j, is an arc with
/// probability p, independently. Pairs are visited row-major, so the graph is
/// a pure function of the generator state.
[[nodiscard]] inline WeightedDigraph erdos_renyi(std::size_t n, double p, Rng& rng) {
    require(n >= 2, Errc::InvalidArgument, "Erdos-Renyi graph needs n >= 2");
    require(p >= 0.0 && p <= 1.0, Errc::InvalidArgument, "edge probability must lie in [0, 1]");
    const auto m = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            if (i != j && rng.bernoulli(p)) w(i, j) = 1.0;
        }
    }
    return {std::move(w), true};
}

}  // namespace dyrc
