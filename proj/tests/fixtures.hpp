#pragma once

// Random inputs shared by the unit and acceptance tests.

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "dyrc/graph.hpp"
#include "dyrc/rng.hpp"

namespace fixture {

struct Series {
    std::vector<double> x;
    std::vector<double> t;
};

/// Length in [2, max_len]; values uniform on [-1, 1) or standard normal;
/// times either the indices or a strictly increasing irregular grid.
inline Series random_series(dyrc::Rng& rng, std::size_t max_len, bool gaussian, bool irregular_times = false) {
    const auto n = 2 + static_cast<std::size_t>(rng.below(max_len - 1));
    Series s;
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s.x.push_back(gaussian ? rng.normal() : rng.uniform(-1.0, 1.0));
        s.t.push_back(irregular_times ? t : static_cast<double>(i));
        t += 0.1 + rng.uniform01();
    }
    return s;
}

/// Integer-valued series on a small grid: ties and collinear triples are common.
inline Series lattice_series(dyrc::Rng& rng, std::size_t max_len) {
    const auto n = 2 + static_cast<std::size_t>(rng.below(max_len - 1));
    Series s;
    for (std::size_t i = 0; i < n; ++i) {
        s.x.push_back(static_cast<double>(rng.below(5)));
        s.t.push_back(static_cast<double>(i));
    }
    return s;
}

/// Binary graph on n nodes with arc probability p, directed or symmetric.
inline dyrc::WeightedDigraph random_graph(dyrc::Rng& rng, std::size_t n, double p, bool directed) {
    const auto m = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = directed ? 0 : i + 1; j < m; ++j)
            if (i != j && rng.bernoulli(p)) {
                w(i, j) = 1.0;
                if (!directed) w(j, i) = 1.0;
            }
    return {std::move(w), directed};
}

inline std::vector<double> row_major(const Eigen::MatrixXd& m) {
    std::vector<double> out;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
    return out;
}

}  // namespace fixture
