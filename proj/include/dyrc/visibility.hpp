#pragma once

// Natural visibility graphs of time-series sections.
//
// Points (t_i, x_i) and (t_j, x_j), i < j, are linked iff every intermediate
// point lies strictly below the straight line joining them:
//
//   x_l < x_j + (x_i - x_j) * (t_j - t_l) / (t_j - t_i)   for all i < l < j.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dyrc/error.hpp"
#include "dyrc/graph.hpp"
#include "dyrc/rng.hpp"

namespace dyrc {

/// Undirected, binary. Node order is time order.
///
/// For a fixed left endpoint i the visible right endpoints are exactly those
/// whose slope from i beats every earlier slope, so one left-to-right sweep per
/// node keeping the steepest point seen so far suffices (O(n^2) total). Slopes
/// are compared in cross-multiplied form to avoid the division.
[[nodiscard]] inline WeightedDigraph visibility_graph(std::span<const double> values, std::span<const double> times) {
    require(values.size() == times.size(), Errc::LengthMismatch, "values and times differ in length");
    require(values.size() >= 2, Errc::TooShort, "visibility graph needs at least 2 points");
    for (std::size_t i = 0; i < values.size(); ++i)
        require(std::isfinite(values[i]) && std::isfinite(times[i]), Errc::NonFinite, "series must be finite");
    for (std::size_t i = 1; i < times.size(); ++i)
        require(times[i] > times[i - 1], Errc::NonMonotonicTimes, "times must be strictly increasing");

    const auto n = values.size();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t steepest = i + 1;
        w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = 1.0;
        for (std::size_t j = i + 2; j < n; ++j) {
            const double dx_s = values[steepest] - values[i];
            const double dt_s = times[steepest] - times[i];
            const double dx_j = values[j] - values[i];
            const double dt_j = times[j] - times[i];
            // slope(i, j) > slope(i, steepest)
            if (dx_j * dt_s > dx_s * dt_j) {
                w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
                steepest = j;
            }
        }
    }
    w += w.transpose().eval();
    return {std::move(w), false};
}

/// A window of `length` points taken every `stride` samples from `start`.
struct Section {
    std::size_t start = 0;
    std::size_t stride = 1;
    std::size_t length = 0;

    [[nodiscard]] std::size_t span() const noexcept { return length == 0 ? 0 : (length - 1) * stride + 1; }
    [[nodiscard]] std::size_t last_index() const noexcept { return start + span() - 1; }

    friend bool operator==(const Section&, const Section&) = default;
};

namespace detail {
inline std::size_t checked_span(std::size_t train_len, std::size_t n_points, std::size_t stride) {
    require(n_points >= 1, Errc::InvalidArgument, "section needs at least one point");
    require(stride >= 1, Errc::InvalidArgument, "stride must be positive");
    const std::size_t span = (n_points - 1) * stride + 1;
    if (span > train_len) {
        throw Error(Errc::SectionTooLong, "section of " + std::to_string(n_points) + " points at stride " +
                                              std::to_string(stride) + " spans " + std::to_string(span) +
                                              " samples but only " + std::to_string(train_len) + " are available");
    }
    return span;
}
}  // namespace detail

/// Evenly spaced sections covering the feasible range:
/// start_i = round(i * (train_len - span) / (n_sections - 1)), halves rounded up.
[[nodiscard]] inline std::vector<Section> sample_sections(std::size_t train_len, std::size_t n_points,
                                                          std::size_t stride, std::size_t n_sections) {
    require(n_sections >= 1, Errc::InvalidArgument, "need at least one section");
    const std::size_t span = detail::checked_span(train_len, n_points, stride);
    const std::size_t room = train_len - span;
    std::vector<Section> out;
    out.reserve(n_sections);
    for (std::size_t i = 0; i < n_sections; ++i) {
        std::size_t start = 0;
        if (n_sections > 1) {
            const std::size_t den = n_sections - 1;
            start = (2 * i * room + den) / (2 * den);
        }
        out.push_back({start, stride, n_points});
    }
    return out;
}

/// Seeded uniform-random section starts over the feasible range.
[[nodiscard]] inline std::vector<Section> sample_sections_random(std::size_t train_len, std::size_t n_points,
                                                                 std::size_t stride, std::size_t n_sections,
                                                                 Rng& rng) {
    require(n_sections >= 1, Errc::InvalidArgument, "need at least one section");
    const std::size_t span = detail::checked_span(train_len, n_points, stride);
    const std::size_t room = train_len - span;
    std::vector<Section> out;
    out.reserve(n_sections);
    for (std::size_t i = 0; i < n_sections; ++i)
        out.push_back({static_cast<std::size_t>(rng.below(room + 1)), stride, n_points});
    return out;
}

/// Gathers the section's points from a sampled signal. Times are the sample
/// indices themselves; the graph is invariant to affine time maps, so this
/// matches using the physical time stamps.
struct SectionData {
    std::vector<double> values;
    std::vector<double> times;
};

[[nodiscard]] inline SectionData extract_section(std::span<const double> signal, const Section& s) {
    require(s.length >= 1 && s.stride >= 1, Errc::InvalidArgument, "degenerate section");
    if (s.last_index() >= signal.size())
        throw Error(Errc::SectionTooLong, "section ends at index " + std::to_string(s.last_index()) +
                                              " beyond signal length " + std::to_string(signal.size()));
    SectionData d;
    d.values.reserve(s.length);
    d.times.reserve(s.length);
    for (std::size_t k = 0; k < s.length; ++k) {
        const std::size_t idx = s.start + k * s.stride;
        d.values.push_back(signal[idx]);
        d.times.push_back(static_cast<double>(idx));
    }
    return d;
}

[[nodiscard]] inline WeightedDigraph section_visibility_graph(std::span<const double> signal, const Section& s) {
    const auto d = extract_section(signal, s);
    return visibility_graph(d.values, d.times);
}

}  // namespace dyrc
