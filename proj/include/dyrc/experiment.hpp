#pragma once

// Four-way benchmark: random ER reservoirs, density-matched ER reservoirs, and
// visibility-graph reservoirs built from stride-1 and stride-16 sections of
// the training signal, swept over reservoir sizes and replicates.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "dyrc/dynamics.hpp"
#include "dyrc/error.hpp"
#include "dyrc/graph.hpp"
#include "dyrc/io.hpp"
#include "dyrc/metrics.hpp"
#include "dyrc/random_graph.hpp"
#include "dyrc/reservoir.hpp"
#include "dyrc/rng.hpp"
#include "dyrc/spectral.hpp"
#include "dyrc/visibility.hpp"

namespace dyrc {

enum class Variant { ER, DenseER, DyRC_VG, DyRC_VG_16 };

inline constexpr std::array<Variant, 4> kAllVariants{Variant::ER, Variant::DenseER, Variant::DyRC_VG,
                                                     Variant::DyRC_VG_16};

[[nodiscard]] constexpr std::string_view to_string(Variant v) noexcept {
    switch (v) {
        case Variant::ER: return "ER";
        case Variant::DenseER: return "DenseER";
        case Variant::DyRC_VG: return "DyRC_VG";
        case Variant::DyRC_VG_16: return "DyRC_VG_16";
    }
    return "?";
}

[[nodiscard]] inline Variant parse_variant(std::string_view s) {
    std::string key;
    for (char c : s)
        if (c != '_' && c != '-' && c != ' ') key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (key == "er") return Variant::ER;
    if (key == "denseer") return Variant::DenseER;
    if (key == "dyrcvg") return Variant::DyRC_VG;
    if (key == "dyrcvg16") return Variant::DyRC_VG_16;
    throw Error(Errc::InvalidArgument, "unknown variant '" + std::string(s) + "'");
}

enum class EvalMode { ClosedLoop, OpenLoop };

[[nodiscard]] constexpr std::string_view to_string(EvalMode m) noexcept {
    return m == EvalMode::ClosedLoop ? "closed_loop" : "open_loop";
}

[[nodiscard]] inline EvalMode parse_mode(std::string_view s) {
    if (s == "closed" || s == "closed_loop") return EvalMode::ClosedLoop;
    if (s == "open" || s == "open_loop") return EvalMode::OpenLoop;
    throw Error(Errc::InvalidArgument, "unknown evaluation mode '" + std::string(s) + "'");
}

enum class SectionPlacement { Even, Random };

struct ExperimentConfig {
    int dataset = 1;
    std::optional<DuffingParams> params;  // overrides the dataset's parameter set
    std::optional<SimConfig> sim;         // defaults to SimConfig::defaults_for(params)
    double train_fraction = 0.8;
    std::vector<std::size_t> sizes{50, 100, 200, 300, 400, 500};
    std::size_t n_replicates = 100;
    std::uint64_t seed = 42;
    std::vector<Variant> variants{kAllVariants.begin(), kAllVariants.end()};
    ReservoirParams reservoir;  // n_nodes is set per sweep cell
    EvalMode mode = EvalMode::ClosedLoop;
    SectionPlacement sections = SectionPlacement::Even;
    double er_density = 0.1;
    std::size_t coarse_stride = 16;
    std::size_t parallelism = 0;  // 0 = hardware concurrency
    bool zero_readout = false;    // diagnostic: replace the trained readout by zeros

    [[nodiscard]] DuffingParams duffing() const { return params ? *params : duffing_set(dataset); }
    [[nodiscard]] SimConfig simulation() const { return sim ? *sim : SimConfig::defaults_for(duffing()); }

    void validate() const {
        require(!sizes.empty(), Errc::InvalidArgument, "no reservoir sizes configured");
        for (auto n : sizes) require(n >= 2, Errc::InvalidArgument, "reservoir sizes must be >= 2");
        require(n_replicates >= 1, Errc::InvalidArgument, "n_replicates must be >= 1");
        require(!variants.empty(), Errc::InvalidArgument, "no variants configured");
        require(er_density >= 0.0 && er_density <= 1.0, Errc::InvalidArgument, "er_density must lie in [0, 1]");
        require(coarse_stride >= 1, Errc::InvalidArgument, "coarse_stride must be positive");
        reservoir.validate();
        duffing().validate();
        simulation().validate();
    }
};

[[nodiscard]] inline std::size_t section_stride(Variant v, const ExperimentConfig& cfg) noexcept {
    return v == Variant::DyRC_VG_16 ? cfg.coarse_stride : 1;
}

/// Train/test data laid out for the reservoir:
///   input k  = [q_{k-1}, qdot_{k-1}, g_k],  target k = [q_k, qdot_k].
struct Dataset {
    DuffingParams params;
    SimConfig sim;
    TimeSeries train;
    TimeSeries test;
    Eigen::MatrixXd train_inputs;   // 3 x (L_train - 1)
    Eigen::MatrixXd train_targets;  // 2 x (L_train - 1)
    Eigen::MatrixXd test_inputs;    // 3 x L_test, first column uses the last training sample
    Eigen::MatrixXd test_targets;   // 2 x L_test
    Eigen::MatrixXd test_forcing;   // 1 x L_test
    Eigen::VectorXd y_init;         // last training target
};

namespace detail {
inline void fill_pairs(const TimeSeries& ts, std::size_t first_target, double q_prev, double v_prev,
                       Eigen::MatrixXd& inputs, Eigen::MatrixXd& targets) {
    const auto cols = static_cast<Eigen::Index>(ts.size() - first_target);
    inputs.resize(3, cols);
    targets.resize(2, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        const auto k = first_target + static_cast<std::size_t>(c);
        inputs(0, c) = k == 0 ? q_prev : ts.q[k - 1];
        inputs(1, c) = k == 0 ? v_prev : ts.qdot[k - 1];
        inputs(2, c) = ts.g[k];
        targets(0, c) = ts.q[k];
        targets(1, c) = ts.qdot[k];
    }
}
}  // namespace detail

[[nodiscard]] inline Dataset make_dataset(const TimeSeries& series, const DuffingParams& params, const SimConfig& sim,
                                          double train_fraction) {
    Dataset d;
    d.params = params;
    d.sim = sim;
    std::tie(d.train, d.test) = split(series, train_fraction);
    detail::fill_pairs(d.train, 1, 0.0, 0.0, d.train_inputs, d.train_targets);
    const double q_last = d.train.q.back();
    const double v_last = d.train.qdot.back();
    detail::fill_pairs(d.test, 0, q_last, v_last, d.test_inputs, d.test_targets);
    d.test_forcing = d.test_inputs.bottomRows(1);
    d.y_init = Eigen::Vector2d(q_last, v_last);
    return d;
}

[[nodiscard]] inline Dataset make_dataset(const ExperimentConfig& cfg) {
    const auto p = cfg.duffing();
    const auto sim = cfg.simulation();
    return make_dataset(integrate(p, sim), p, sim, cfg.train_fraction);
}

/// Section used by replicate `replicate` for a VG of `n_points` at `stride`.
/// Shared between DyRC_VG and DenseER so the density pairing sees the same graph.
[[nodiscard]] inline Section replicate_section(const ExperimentConfig& cfg, std::size_t train_len,
                                               std::size_t n_points, std::size_t stride, std::size_t replicate) {
    if (cfg.sections == SectionPlacement::Random) {
        Rng rng(derive_seed(cfg.seed, hash_tag("sections"), n_points, stride));
        return sample_sections_random(train_len, n_points, stride, cfg.n_replicates, rng).at(replicate);
    }
    return sample_sections(train_len, n_points, stride, cfg.n_replicates).at(replicate);
}

struct BuiltReservoir {
    WeightedDigraph graph;  // scaled to the target spectral radius
    NetworkMetrics metrics;  // topology of the binary graph, nu of the scaled one
    std::optional<double> generation_p;
    std::optional<Section> section;
};

/// Topological metrics of the unscaled graph (nu left at zero).
[[nodiscard]] inline NetworkMetrics topology_metrics(const WeightedDigraph& g) {
    NetworkMetrics m;
    const auto n = static_cast<double>(g.n());
    m.rho = density(g);
    m.k_out = static_cast<double>(g.arc_count()) / n;
    m.k_in = m.k_out;
    const auto adj = undirected_support(g);
    m.c = average_clustering(adj);
    m.b = average_betweenness(adj);
    return m;
}

/// Reservoir adjacency for one sweep cell. Consumes `rng` only for ER draws.
[[nodiscard]] inline BuiltReservoir build_reservoir(const ExperimentConfig& cfg, std::span<const double> train_signal,
                                                    Variant variant, std::size_t n, std::size_t replicate, Rng& rng) {
    BuiltReservoir out;
    WeightedDigraph binary;
    switch (variant) {
        case Variant::ER:
            out.generation_p = cfg.er_density;
            binary = erdos_renyi(n, cfg.er_density, rng);
            break;
        case Variant::DenseER: {
            const auto s = replicate_section(cfg, train_signal.size(), n, 1, replicate);
            out.generation_p = density(section_visibility_graph(train_signal, s));
            binary = erdos_renyi(n, *out.generation_p, rng);
            break;
        }
        case Variant::DyRC_VG:
        case Variant::DyRC_VG_16: {
            const auto s = replicate_section(cfg, train_signal.size(), n, section_stride(variant, cfg), replicate);
            out.section = s;
            binary = section_visibility_graph(train_signal, s);
            break;
        }
    }
    out.metrics = topology_metrics(binary);
    out.graph = scale_to_spectral_radius(binary, cfg.reservoir.spectral_target);
    out.metrics.nu = spectral_radius(out.graph);
    return out;
}

struct RunRecord {
    Variant variant = Variant::ER;
    int dataset = 1;
    std::size_t n = 0;
    std::size_t replicate = 0;
    std::uint64_t seed = 0;
    EvalMode mode = EvalMode::ClosedLoop;
    std::string status = "ok";  // "ok" or "failed:<reason>"
    std::optional<double> mae;
    std::optional<NetworkMetrics> metrics;
    std::optional<double> generation_p;
    std::optional<Section> section;
    double wall_ms = 0.0;

    [[nodiscard]] bool ok() const noexcept { return status == "ok"; }

    /// Equality of everything except the wall-clock time.
    [[nodiscard]] bool same_outcome(const RunRecord& o) const {
        auto metrics_eq = [](const std::optional<NetworkMetrics>& a, const std::optional<NetworkMetrics>& b) {
            if (a.has_value() != b.has_value()) return false;
            if (!a) return true;
            return a->nu == b->nu && a->rho == b->rho && a->k_in == b->k_in && a->k_out == b->k_out &&
                   a->c == b->c && a->b == b->b;
        };
        return variant == o.variant && dataset == o.dataset && n == o.n && replicate == o.replicate &&
               seed == o.seed && mode == o.mode && status == o.status && mae == o.mae &&
               metrics_eq(metrics, o.metrics) && generation_p == o.generation_p && section == o.section;
    }
};

[[nodiscard]] inline std::uint64_t replicate_seed(std::uint64_t master, Variant v, std::size_t n,
                                                  std::size_t replicate) noexcept {
    return derive_seed(master, hash_tag(to_string(v)), n, replicate);
}

[[nodiscard]] inline std::string failure_reason(Errc code) {
    switch (code) {
        case Errc::NonFinite: return "diverged";
        case Errc::ZeroSpectralRadius: return "zero_spectral_radius";
        case Errc::SectionTooLong: return "section_too_long";
        case Errc::SingularSystem: return "singular_system";
        case Errc::NoConvergence: return "no_convergence";
        default: return to_string(code);
    }
}

/// Reservoir -> input layer -> teacher-forced training -> ridge readout ->
/// prediction over the test split. Errors end up in `status`.
[[nodiscard]] inline RunRecord run_replicate(const ExperimentConfig& cfg, const Dataset& data, Variant variant,
                                             std::size_t n, std::size_t replicate,
                                             ReservoirModel* model_out = nullptr) {
    const auto started = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.variant = variant;
    rec.dataset = cfg.params ? 0 : cfg.dataset;
    rec.n = n;
    rec.replicate = replicate;
    rec.mode = cfg.mode;
    rec.seed = replicate_seed(cfg.seed, variant, n, replicate);
    Rng rng(rec.seed);

    try {
        auto built = build_reservoir(cfg, data.train.q, variant, n, replicate, rng);
        rec.metrics = built.metrics;
        rec.generation_p = built.generation_p;
        rec.section = built.section;

        ReservoirModel model;
        model.A = built.graph.weights();
        model.W_in = build_input_layer(n, static_cast<std::size_t>(data.train_inputs.rows()),
                                       cfg.reservoir.input_fraction, rng);
        model.alpha = cfg.reservoir.alpha;
        model.spectral_target = cfg.reservoir.spectral_target;
        model.seed = rec.seed;

        const StateMatrix states = evolve(model, data.train_inputs);
        model.W_out = train_readout(states, data.train_targets, cfg.reservoir.ridge_lambda, cfg.reservoir.washout);
        if (cfg.zero_readout) model.W_out->setZero();

        const Eigen::VectorXd r_last = states.col(states.cols() - 1);
        const Eigen::MatrixXd prediction = cfg.mode == EvalMode::ClosedLoop
                                               ? predict_closed_loop(model, data.test_forcing, data.y_init, r_last)
                                               : predict_open_loop(model, data.test_inputs, r_last);
        if (!prediction.allFinite()) throw Error(Errc::NonFinite, "prediction is not finite");
        rec.mae = mae(prediction, data.test_targets);
        if (model_out) *model_out = std::move(model);
    } catch (const Error& e) {
        rec.status = "failed:" + failure_reason(e.code());
        rec.mae.reset();
    }
    rec.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return rec;
}

// ---------------------------------------------------------------------------
// Summary statistics
// ---------------------------------------------------------------------------

/// Linear interpolation between order statistics at h = (n - 1) p.
[[nodiscard]] inline double quantile_sorted(const std::vector<double>& sorted, double p) {
    require(!sorted.empty(), Errc::EmptyCell, "quantile of an empty sample");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

struct SummaryRow {
    Variant variant = Variant::ER;
    std::size_t n = 0;
    std::size_t count_ok = 0;
    std::size_t count_failed = 0;
    double median = std::numeric_limits<double>::quiet_NaN();
    double q1 = std::numeric_limits<double>::quiet_NaN();
    double q3 = std::numeric_limits<double>::quiet_NaN();
    double mean = std::numeric_limits<double>::quiet_NaN();
    double stddev = std::numeric_limits<double>::quiet_NaN();  // sample (n - 1) convention
    double min = std::numeric_limits<double>::quiet_NaN();
    double max = std::numeric_limits<double>::quiet_NaN();

    [[nodiscard]] double iqr() const noexcept { return q3 - q1; }
};

struct Summary {
    std::vector<SummaryRow> rows;  // first-appearance order of (variant, N)
    std::vector<std::pair<Variant, std::size_t>> empty_cells;

    [[nodiscard]] const SummaryRow& at(Variant v, std::size_t n) const {
        for (const auto& r : rows)
            if (r.variant == v && r.n == n) return r;
        throw Error(Errc::EmptyCell, "no summary row for " + std::string(to_string(v)) + " N=" + std::to_string(n));
    }
};

[[nodiscard]] inline Summary summarize(const std::vector<RunRecord>& records) {
    Summary s;
    std::vector<std::vector<double>> samples;
    for (const auto& rec : records) {
        auto it = std::find_if(s.rows.begin(), s.rows.end(),
                               [&](const SummaryRow& r) { return r.variant == rec.variant && r.n == rec.n; });
        if (it == s.rows.end()) {
            s.rows.push_back({.variant = rec.variant, .n = rec.n});
            samples.emplace_back();
            it = s.rows.end() - 1;
        }
        const auto idx = static_cast<std::size_t>(it - s.rows.begin());
        if (rec.ok() && rec.mae) {
            ++it->count_ok;
            samples[idx].push_back(*rec.mae);
        } else {
            ++it->count_failed;
        }
    }
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        auto& row = s.rows[i];
        auto& v = samples[i];
        if (v.empty()) {
            s.empty_cells.emplace_back(row.variant, row.n);
            continue;
        }
        std::sort(v.begin(), v.end());
        const auto count = static_cast<double>(v.size());
        row.median = quantile_sorted(v, 0.5);
        row.q1 = quantile_sorted(v, 0.25);
        row.q3 = quantile_sorted(v, 0.75);
        row.min = v.front();
        row.max = v.back();
        double sum = 0.0;
        for (double x : v) sum += x;
        row.mean = sum / count;
        double ss = 0.0;
        for (double x : v) ss += (x - row.mean) * (x - row.mean);
        row.stddev = v.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Sweep
// ---------------------------------------------------------------------------

struct ExperimentResult {
    std::vector<RunRecord> records;  // canonical (variant, N, replicate) order
    Summary summary;
};

struct SweepTask {
    Variant variant;
    std::size_t n;
    std::size_t replicate;
};

/// Canonical (variant, N, replicate) enumeration of the sweep.
[[nodiscard]] inline std::vector<SweepTask> sweep_tasks(const ExperimentConfig& cfg) {
    std::vector<SweepTask> tasks;
    tasks.reserve(cfg.variants.size() * cfg.sizes.size() * cfg.n_replicates);
    for (auto v : cfg.variants)
        for (auto n : cfg.sizes)
            for (std::size_t r = 0; r < cfg.n_replicates; ++r) tasks.push_back({v, n, r});
    return tasks;
}

using ProgressFn = std::function<void(const RunRecord&, std::size_t done, std::size_t total)>;

[[nodiscard]] inline ExperimentResult run_experiment(const ExperimentConfig& cfg, const Dataset& data,
                                                     const ProgressFn& progress = {}) {
    cfg.validate();
    const auto tasks = sweep_tasks(cfg);

    std::vector<RunRecord> records(tasks.size());
    std::atomic<std::size_t> next{0};
    std::size_t done = 0;
    std::mutex progress_mutex;

    auto worker = [&] {
        for (auto i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
            const auto& t = tasks[i];
            records[i] = run_replicate(cfg, data, t.variant, t.n, t.replicate);
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(records[i], ++done, tasks.size());
            }
        }
    };

    std::size_t threads = cfg.parallelism ? cfg.parallelism : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(tasks.size(), 1));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    ExperimentResult result{std::move(records), {}};
    result.summary = summarize(result.records);
    return result;
}

[[nodiscard]] inline ExperimentResult run_experiment(const ExperimentConfig& cfg, const ProgressFn& progress = {}) {
    cfg.validate();
    return run_experiment(cfg, make_dataset(cfg), progress);
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

inline constexpr std::string_view kResultsHeader =
    "variant,dataset,N,replicate,seed,mode,status,mae,nu,rho,k_in,k_out,clustering,betweenness,wall_ms";
inline constexpr std::string_view kSummaryHeader =
    "variant,N,count_ok,count_failed,mae_median,mae_q1,mae_q3,mae_mean,mae_std,mae_min,mae_max";

namespace detail {
inline std::string opt_real(const std::optional<double>& v) { return v ? io::format_real(*v) : std::string{}; }
inline std::string nan_blank(double v) { return std::isnan(v) ? std::string{} : io::format_real(v); }
}  // namespace detail

/// One row per record. wall_ms is left blank unless `with_timing`, which keeps
/// the file a pure function of the configuration.
[[nodiscard]] inline std::string results_csv(const std::vector<RunRecord>& records, bool with_timing = false) {
    std::ostringstream out;
    out << kResultsHeader << '\n';
    for (const auto& r : records) {
        out << to_string(r.variant) << ',' << r.dataset << ',' << r.n << ',' << r.replicate << ',' << r.seed << ','
            << to_string(r.mode) << ',' << r.status << ',' << detail::opt_real(r.mae);
        if (r.metrics) {
            const auto& m = *r.metrics;
            out << ',' << io::format_real(m.nu) << ',' << io::format_real(m.rho) << ',' << io::format_real(m.k_in)
                << ',' << io::format_real(m.k_out) << ',' << io::format_real(m.c) << ',' << io::format_real(m.b);
        } else {
            out << ",,,,,,";
        }
        out << ',' << (with_timing ? io::format_real(r.wall_ms, 6) : std::string{}) << '\n';
    }
    return out.str();
}

/// Inverse of results_csv (generation probabilities and sections are not stored).
[[nodiscard]] inline std::vector<RunRecord> parse_results_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(Errc::ParseError, "empty results file");
    io::strip_cr(line);
    if (line != kResultsHeader) throw Error(Errc::ParseError, "unexpected results header");
    std::vector<RunRecord> out;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        io::strip_cr(line);
        if (line.empty()) continue;
        const auto f = io::split(line);
        if (f.size() != 15) throw Error(Errc::ParseError, "results row " + std::to_string(row) + ": expected 15 fields");
        RunRecord r;
        r.variant = parse_variant(f[0]);
        r.dataset = static_cast<int>(io::parse_int(f[1]));
        r.n = static_cast<std::size_t>(io::parse_int(f[2]));
        r.replicate = static_cast<std::size_t>(io::parse_int(f[3]));
        r.seed = std::stoull(std::string(f[4]));
        r.mode = parse_mode(f[5]);
        r.status = std::string(f[6]);
        if (!f[7].empty()) r.mae = io::parse_real(f[7]);
        if (!f[8].empty()) {
            r.metrics = NetworkMetrics{io::parse_real(f[8]),  io::parse_real(f[9]),  io::parse_real(f[10]),
                                       io::parse_real(f[11]), io::parse_real(f[12]), io::parse_real(f[13])};
        }
        if (!f[14].empty()) r.wall_ms = io::parse_real(f[14]);
        out.push_back(std::move(r));
    }
    return out;
}

[[nodiscard]] inline std::string summary_csv(const Summary& s) {
    std::ostringstream out;
    out << kSummaryHeader << '\n';
    for (const auto& r : s.rows) {
        out << to_string(r.variant) << ',' << r.n << ',' << r.count_ok << ',' << r.count_failed << ','
            << detail::nan_blank(r.median) << ',' << detail::nan_blank(r.q1) << ',' << detail::nan_blank(r.q3) << ','
            << detail::nan_blank(r.mean) << ',' << detail::nan_blank(r.stddev) << ',' << detail::nan_blank(r.min)
            << ',' << detail::nan_blank(r.max) << '\n';
    }
    return out.str();
}

/// Long format for MAE-vs-size box plots: variant,N,replicate,mae (ok records only).
[[nodiscard]] inline std::string plot_mae_by_size_csv(const std::vector<RunRecord>& records) {
    std::ostringstream out;
    out << "variant,N,replicate,mae\n";
    for (const auto& r : records)
        if (r.ok() && r.mae)
            out << to_string(r.variant) << ',' << r.n << ',' << r.replicate << ',' << io::format_real(*r.mae) << '\n';
    return out.str();
}

/// Long format for MAE-vs-metric scatter panels: one row per (record, metric).
[[nodiscard]] inline std::string plot_mae_by_metric_csv(const std::vector<RunRecord>& records) {
    std::ostringstream out;
    out << "variant,N,replicate,metric,value,mae\n";
    for (const auto& r : records) {
        if (!r.ok() || !r.mae || !r.metrics) continue;
        const auto& m = *r.metrics;
        const std::array<std::pair<const char*, double>, 6> cols{
            {{"nu", m.nu}, {"rho", m.rho}, {"k_in", m.k_in}, {"k_out", m.k_out}, {"clustering", m.c},
             {"betweenness", m.b}}};
        for (const auto& [name, value] : cols)
            out << to_string(r.variant) << ',' << r.n << ',' << r.replicate << ',' << name << ','
                << io::format_real(value) << ',' << io::format_real(*r.mae) << '\n';
    }
    return out.str();
}

/// Generation probability of every ER-family record and section of every VG record.
[[nodiscard]] inline std::string reservoir_provenance_csv(const std::vector<RunRecord>& records) {
    std::ostringstream out;
    out << "variant,N,replicate,generation_p,section_start,section_stride,section_length\n";
    for (const auto& r : records) {
        out << to_string(r.variant) << ',' << r.n << ',' << r.replicate << ',' << detail::opt_real(r.generation_p);
        if (r.section)
            out << ',' << r.section->start << ',' << r.section->stride << ',' << r.section->length;
        else
            out << ",,,";
        out << '\n';
    }
    return out.str();
}

}  // namespace dyrc
