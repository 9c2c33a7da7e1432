#pragma once

// Forced Duffing oscillator: parameter sets, fixed-step RK4 trajectories,
// and train/test splitting of the recorded series.
//
//   q'' + d q' + k q + k_nl q^3 = F cos(Omega t)

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dyrc/error.hpp"
#include "dyrc/io.hpp"

namespace dyrc {

struct DuffingParams {
    double d = 0.0;      // damping
    double k = 1.0;      // linear stiffness
    double k_nl = 0.0;   // cubic stiffness
    double F = 0.0;      // forcing amplitude
    double Omega = 1.0;  // forcing angular frequency

    void validate() const {
        require(std::isfinite(d) && std::isfinite(k) && std::isfinite(k_nl) && std::isfinite(F) &&
                    std::isfinite(Omega),
                Errc::InvalidArgument, "Duffing parameters must be finite");
        require(Omega > 0.0, Errc::InvalidArgument, "Omega must be positive");
        require(F >= 0.0, Errc::InvalidArgument, "F must be non-negative");
    }

    [[nodiscard]] double forcing(double t) const noexcept { return F * std::cos(Omega * t); }
    [[nodiscard]] double forcing_period() const noexcept { return 2.0 * std::numbers::pi / Omega; }
};

/// The three benchmark parameter sets (ids 1..3).
[[nodiscard]] inline DuffingParams duffing_set(int id) {
    switch (id) {
        case 1: return {.d = 0.02, .k = 1.0, .k_nl = 5.0, .F = 0.5, .Omega = 8.0};
        case 2: return {.d = 0.1, .k = -1.0, .k_nl = 0.25, .F = 2.0, .Omega = 2.5};
        case 3: return {.d = 0.1, .k = 1.0, .k_nl = 2.0, .F = 2.0, .Omega = 35.0};
        default: throw Error(Errc::InvalidArgument, "dataset id must be 1, 2 or 3, got " + std::to_string(id));
    }
}

struct SimConfig {
    double dt_record = 0.01;
    int substeps = 1;
    std::size_t n_transient = 2000;
    std::size_t n_samples = 12000;  // includes the transient
    double q0 = 1.0;
    double v0 = 0.0;

    /// 100 recorded samples per forcing period.
    [[nodiscard]] static SimConfig defaults_for(const DuffingParams& p) {
        SimConfig c;
        c.dt_record = p.forcing_period() / 100.0;
        return c;
    }

    void validate() const {
        require(dt_record > 0.0 && std::isfinite(dt_record), Errc::InvalidArgument, "dt_record must be positive");
        require(substeps >= 1, Errc::InvalidArgument, "substeps must be >= 1");
        require(n_samples > n_transient, Errc::InvalidArgument, "n_samples must exceed n_transient");
        require(std::isfinite(q0) && std::isfinite(v0), Errc::InvalidArgument, "initial condition must be finite");
    }
};

struct TimeSeries {
    std::vector<double> t;
    std::vector<double> q;
    std::vector<double> qdot;
    std::vector<double> g;

    [[nodiscard]] std::size_t size() const noexcept { return t.size(); }

    /// Samples [begin, end).
    [[nodiscard]] TimeSeries slice(std::size_t begin, std::size_t end) const {
        require(begin <= end && end <= size(), Errc::InvalidArgument, "slice out of range");
        auto cut = [&](const std::vector<double>& v) {
            return std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(begin),
                                       v.begin() + static_cast<std::ptrdiff_t>(end));
        };
        return {cut(t), cut(q), cut(qdot), cut(g)};
    }

    void validate() const {
        const auto n = t.size();
        require(q.size() == n && qdot.size() == n && g.size() == n, Errc::LengthMismatch,
                "time series columns differ in length");
        require(n >= 2, Errc::TooShort, "time series needs at least 2 samples");
        const double dt = t[1] - t[0];
        require(dt > 0.0, Errc::NonMonotonicTimes, "times must be strictly increasing");
        for (std::size_t i = 1; i < n; ++i) {
            const double step = t[i] - t[i - 1];
            require(step > 0.0, Errc::NonMonotonicTimes, "times must be strictly increasing");
            // Uniform grid; absolute slack scaled by the largest time magnitude.
            const double scale = std::max({std::abs(t[i]), std::abs(t[0]), dt});
            require(std::abs(step - dt) <= 1e-12 * scale, Errc::InvalidArgument,
                    "times are not uniformly spaced at index " + std::to_string(i));
        }
    }
};

/// Right-hand side of the first-order system: returns (q', q'').
[[nodiscard]] inline std::array<double, 2> duffing_rhs(const std::array<double, 2>& state, double t,
                                                       const DuffingParams& p) noexcept {
    const double q = state[0];
    const double v = state[1];
    return {v, p.forcing(t) - p.d * v - p.k * q - p.k_nl * q * q * q};
}

/// Classical RK4 with step dt_record / substeps. Sample i of the full run sits
/// at t = i * dt_record; the first n_transient samples are dropped.
[[nodiscard]] inline TimeSeries integrate(const DuffingParams& p, const SimConfig& cfg) {
    p.validate();
    cfg.validate();

    const double h = cfg.dt_record / cfg.substeps;
    const std::size_t kept = cfg.n_samples - cfg.n_transient;
    TimeSeries ts;
    ts.t.reserve(kept);
    ts.q.reserve(kept);
    ts.qdot.reserve(kept);
    ts.g.reserve(kept);

    std::array<double, 2> y{cfg.q0, cfg.v0};
    auto record = [&](std::size_t i) {
        if (i < cfg.n_transient) return;
        const double t = static_cast<double>(i) * cfg.dt_record;
        ts.t.push_back(t);
        ts.q.push_back(y[0]);
        ts.qdot.push_back(y[1]);
        ts.g.push_back(p.forcing(t));
    };

    record(0);
    const auto sub = static_cast<std::size_t>(cfg.substeps);
    for (std::size_t i = 1; i < cfg.n_samples; ++i) {
        for (std::size_t s = 0; s < sub; ++s) {
            const double t = static_cast<double>((i - 1) * sub + s) * h;
            const auto k1 = duffing_rhs(y, t, p);
            const auto k2 = duffing_rhs({y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]}, t + 0.5 * h, p);
            const auto k3 = duffing_rhs({y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]}, t + 0.5 * h, p);
            const auto k4 = duffing_rhs({y[0] + h * k3[0], y[1] + h * k3[1]}, t + h, p);
            y[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
            y[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        }
        if (!std::isfinite(y[0]) || !std::isfinite(y[1])) {
            throw Error(Errc::NonFinite, "trajectory diverged at t=" +
                                             io::format_real(static_cast<double>(i) * cfg.dt_record, 6));
        }
        record(i);
    }
    return ts;
}

/// Contiguous split at floor(train_fraction * size).
[[nodiscard]] inline std::pair<TimeSeries, TimeSeries> split(const TimeSeries& ts, double train_fraction) {
    require(train_fraction > 0.0 && train_fraction < 1.0, Errc::InvalidArgument,
            "train_fraction must lie in (0, 1)");
    const auto n = ts.size();
    const auto cut = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n)));
    if (cut < 2 || n - cut < 2) {
        throw Error(Errc::TooShort, "split of " + std::to_string(n) + " samples at fraction " +
                                        io::format_real(train_fraction, 6) + " leaves a side with < 2 samples");
    }
    return {ts.slice(0, cut), ts.slice(cut, n)};
}

inline void write_csv(std::ostream& out, const TimeSeries& ts) {
    out << "t,q,qdot,g\n";
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out << io::format_real(ts.t[i]) << ',' << io::format_real(ts.q[i]) << ','
            << io::format_real(ts.qdot[i]) << ',' << io::format_real(ts.g[i]) << '\n';
    }
}

[[nodiscard]] inline TimeSeries read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(Errc::ParseError, "empty time series file");
    io::strip_cr(line);
    if (line != "t,q,qdot,g") throw Error(Errc::ParseError, "expected header 't,q,qdot,g', got '" + line + "'");
    TimeSeries ts;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        io::strip_cr(line);
        if (line.empty()) continue;
        const auto f = io::split(line);
        if (f.size() != 4) throw Error(Errc::ParseError, "row " + std::to_string(row) + ": expected 4 fields");
        ts.t.push_back(io::parse_real(f[0]));
        ts.q.push_back(io::parse_real(f[1]));
        ts.qdot.push_back(io::parse_real(f[2]));
        ts.g.push_back(io::parse_real(f[3]));
    }
    ts.validate();
    return ts;
}

}  // namespace dyrc
