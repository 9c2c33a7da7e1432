#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <string>

#include "dyrc/error.hpp"
#include "dyrc/io.hpp"

namespace dyrc {

/// Dense weighted adjacency. Entry (i, j) is the weight of edge i -> j, zero
/// meaning absent. Invariants: square, finite, zero diagonal, and exactly
/// symmetric when undirected.
class WeightedDigraph {
public:
    WeightedDigraph() = default;

    WeightedDigraph(Eigen::MatrixXd weights, bool directed) : w_(std::move(weights)), directed_(directed) {
        validate();
    }

    [[nodiscard]] static WeightedDigraph empty(std::size_t n, bool directed) {
        const auto m = static_cast<Eigen::Index>(n);
        return {Eigen::MatrixXd::Zero(m, m), directed};
    }

    [[nodiscard]] std::size_t n() const noexcept { return static_cast<std::size_t>(w_.rows()); }
    [[nodiscard]] bool directed() const noexcept { return directed_; }
    [[nodiscard]] const Eigen::MatrixXd& weights() const noexcept { return w_; }
    [[nodiscard]] double weight(std::size_t i, std::size_t j) const {
        return w_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    [[nodiscard]] bool has_edge(std::size_t i, std::size_t j) const { return weight(i, j) != 0.0; }

    /// Nonzero off-diagonal entries (ordered pairs).
    [[nodiscard]] std::size_t arc_count() const noexcept {
        return static_cast<std::size_t>((w_.array() != 0.0).count());
    }

    /// Undirected graphs: unordered edges. Directed graphs: arcs.
    [[nodiscard]] std::size_t edge_count() const noexcept {
        return directed_ ? arc_count() : arc_count() / 2;
    }

    [[nodiscard]] WeightedDigraph scaled(double factor) const { return {w_ * factor, directed_}; }

    friend bool operator==(const WeightedDigraph& a, const WeightedDigraph& b) {
        return a.directed_ == b.directed_ && a.w_.rows() == b.w_.rows() && a.w_ == b.w_;
    }

private:
    void validate() const {
        require(w_.rows() == w_.cols(), Errc::DimensionMismatch, "adjacency must be square");
        require(w_.allFinite(), Errc::NonFinite, "adjacency weights must be finite");
        for (Eigen::Index i = 0; i < w_.rows(); ++i)
            require(w_(i, i) == 0.0, Errc::InvalidArgument, "self-loops are not allowed");
        if (!directed_) require(w_ == w_.transpose(), Errc::InvalidArgument, "undirected adjacency must be symmetric");
    }

    Eigen::MatrixXd w_;
    bool directed_ = true;
};

/// Edge-list CSV:
///   # n=<N> directed=<true|false>
///   src,dst,weight
///   ...
/// Undirected graphs list each edge once with src < dst.
inline void write_edge_list(std::ostream& out, const WeightedDigraph& g) {
    out << "# n=" << g.n() << " directed=" << (g.directed() ? "true" : "false") << '\n';
    out << "src,dst,weight\n";
    for (std::size_t i = 0; i < g.n(); ++i) {
        for (std::size_t j = g.directed() ? 0 : i + 1; j < g.n(); ++j) {
            if (g.has_edge(i, j)) out << i << ',' << j << ',' << io::format_real(g.weight(i, j)) << '\n';
        }
    }
}

[[nodiscard]] inline WeightedDigraph read_edge_list(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(Errc::ParseError, "empty edge-list file");
    io::strip_cr(line);

    long long n = -1;
    std::string dir;
    {
        const auto npos = line.find("n=");
        const auto dpos = line.find("directed=");
        if (line.rfind('#', 0) != 0 || npos == std::string::npos || dpos == std::string::npos)
            throw Error(Errc::ParseError, "expected '# n=<N> directed=<bool>' header, got '" + line + "'");
        const auto nend = line.find(' ', npos);
        n = io::parse_int(std::string_view(line).substr(npos + 2, nend - npos - 2));
        dir = line.substr(dpos + 9);
        while (!dir.empty() && dir.back() == ' ') dir.pop_back();
    }
    if (n < 1) throw Error(Errc::ParseError, "node count must be positive");
    if (dir != "true" && dir != "false") throw Error(Errc::ParseError, "directed must be true or false");
    const bool directed = dir == "true";

    if (!std::getline(in, line)) throw Error(Errc::ParseError, "missing column header");
    io::strip_cr(line);
    if (line != "src,dst,weight") throw Error(Errc::ParseError, "expected 'src,dst,weight', got '" + line + "'");

    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    std::size_t row = 2;
    while (std::getline(in, line)) {
        ++row;
        io::strip_cr(line);
        if (line.empty()) continue;
        const auto f = io::split(line);
        if (f.size() != 3) throw Error(Errc::ParseError, "row " + std::to_string(row) + ": expected 3 fields");
        const auto s = io::parse_int(f[0]);
        const auto d = io::parse_int(f[1]);
        const double v = io::parse_real(f[2]);
        if (s < 0 || d < 0 || s >= n || d >= n)
            throw Error(Errc::ParseError, "row " + std::to_string(row) + ": node index out of range");
        if (s == d) throw Error(Errc::ParseError, "row " + std::to_string(row) + ": self-loop");
        w(s, d) = v;
        if (!directed) w(d, s) = v;
    }
    try {
        return {std::move(w), directed};
    } catch (const Error& e) {
        throw Error(Errc::ParseError, e.what());
    }
}

}  // namespace dyrc
