// dyrc: command-line front end for the reservoir benchmark.
//
//   dyrc simulate --set 1 [--force F=0] [--ic 0,0]
//   dyrc vg --input series.csv --points 100 [--stride 16] [--section-index 3]
//   dyrc metrics graph.csv
//   dyrc run [--config run.toml] [--sizes 50,100] [--replicates 20] ...
//   dyrc export [--results results.csv]
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical divergence, 4 data/file error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>
#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dyrc/dyrc.hpp"

#ifndef DYRC_VERSION
#define DYRC_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;

namespace {

enum Exit : int { kOk = 0, kConfig = 2, kDiverged = 3, kData = 4 };

/// Failure that carries its exit code up to main.
struct CliFailure : std::runtime_error {
    CliFailure(int code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
    int exit_code;
};

int exit_code_for(dyrc::Errc c) {
    switch (c) {
        case dyrc::Errc::InvalidArgument: return kConfig;
        case dyrc::Errc::NonFinite: return kDiverged;
        default: return kData;
    }
}

void setup_logging() {
    auto logger = spdlog::stderr_logger_mt("dyrc");
    logger->set_pattern("[%l] %v");
    logger->flush_on(spdlog::level::info);
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::info);
    if (const char* env = std::getenv("DYRC_LOG")) {
        const std::string lvl = env;
        if (lvl == "error" || lvl == "warn" || lvl == "info" || lvl == "debug")
            spdlog::set_level(spdlog::level::from_str(lvl));
        else
            spdlog::warn("ignoring DYRC_LOG={} (expected error|warn|info|debug)", lvl);
    }
}

struct GlobalOptions {
    std::optional<std::uint64_t> seed;
    std::string out = ".";
    std::optional<std::size_t> parallel;
    std::string config;
};

nlohmann::json load_config_file(const std::string& path) {
    std::string text;
    try {
        text = dyrc::io::read_file(path);
    } catch (const dyrc::Error& e) {
        throw CliFailure(kConfig, e.what());
    }
    if (fs::path(path).extension() == ".json") {
        try {
            return nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw CliFailure(kConfig, "config " + path + ": " + e.what());
        }
    }
    try {
        const auto table = toml::parse(text, path);
        std::ostringstream ss;
        ss << toml::json_formatter{table};
        return nlohmann::json::parse(ss.str());
    } catch (const toml::parse_error& e) {
        throw CliFailure(kConfig, "config " + path + ": " + std::string(e.description()));
    }
}

std::string metrics_json(const dyrc::NetworkMetrics& m, int digits) {
    auto r = [digits](double v) { return dyrc::io::parse_real(dyrc::io::format_real(v, digits)); };
    nlohmann::ordered_json j = {{"nu", r(m.nu)},     {"rho", r(m.rho)},       {"k_in", r(m.k_in)},
                                {"k_out", r(m.k_out)}, {"clustering", r(m.c)}, {"betweenness", r(m.b)}};
    return j.dump(2);
}

void write_text(const fs::path& path, const std::string& text) {
    dyrc::io::atomic_write(path, text);
    spdlog::info("wrote {}", path.string());
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateOptions {
    int set = 1;
    std::vector<std::string> force;
    std::string ic;
    std::optional<double> dt;
    std::optional<int> substeps;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> transient;
    std::string name = "series";
};

dyrc::DuffingParams apply_overrides(dyrc::DuffingParams p, const std::vector<std::string>& overrides) {
    for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw CliFailure(kConfig, "--force expects KEY=VALUE, got '" + kv + "'");
        const auto key = kv.substr(0, eq);
        double value = 0.0;
        try {
            value = dyrc::io::parse_real(std::string_view(kv).substr(eq + 1));
        } catch (const dyrc::Error&) {
            throw CliFailure(kConfig, "--force " + key + ": value is not a number");
        }
        if (key == "d") p.d = value;
        else if (key == "k") p.k = value;
        else if (key == "k_nl") p.k_nl = value;
        else if (key == "F") p.F = value;
        else if (key == "Omega") p.Omega = value;
        else throw CliFailure(kConfig, "--force: unknown parameter '" + key + "' (d, k, k_nl, F, Omega)");
    }
    return p;
}

int cmd_simulate(const GlobalOptions& g, const SimulateOptions& o) {
    auto p = apply_overrides(dyrc::duffing_set(o.set), o.force);
    p.validate();
    auto sim = dyrc::SimConfig::defaults_for(p);
    if (!o.ic.empty()) {
        const auto f = dyrc::io::split(o.ic);
        if (f.size() != 2) throw CliFailure(kConfig, "--ic expects q0,v0");
        try {
            sim.q0 = dyrc::io::parse_real(f[0]);
            sim.v0 = dyrc::io::parse_real(f[1]);
        } catch (const dyrc::Error&) {
            throw CliFailure(kConfig, "--ic values must be numbers");
        }
    }
    if (o.dt) sim.dt_record = *o.dt;
    if (o.substeps) sim.substeps = *o.substeps;
    if (o.samples) sim.n_samples = *o.samples;
    if (o.transient) sim.n_transient = *o.transient;
    sim.validate();

    spdlog::info("integrating Duffing set {} ({} samples, dt={})", o.set, sim.n_samples, sim.dt_record);
    const auto ts = dyrc::integrate(p, sim);

    std::ostringstream csv;
    dyrc::write_csv(csv, ts);
    const fs::path out = g.out;
    write_text(out / (o.name + ".csv"), csv.str());

    nlohmann::ordered_json side = {
        {"generator", "dyrc simulate"},
        {"version", DYRC_VERSION},
        {"dataset", o.set},
        {"duffing", {{"d", p.d}, {"k", p.k}, {"k_nl", p.k_nl}, {"F", p.F}, {"Omega", p.Omega}}},
        {"simulation",
         {{"integrator", "rk4"},
          {"dt_record", sim.dt_record},
          {"substeps", sim.substeps},
          {"n_transient", sim.n_transient},
          {"n_samples", sim.n_samples},
          {"q0", sim.q0},
          {"v0", sim.v0}}},
        {"rows", ts.size()},
    };
    write_text(out / (o.name + ".json"), side.dump(2) + "\n");
    return kOk;
}

// ---------------------------------------------------------------------------
// vg
// ---------------------------------------------------------------------------

struct VgOptions {
    std::string input;
    std::size_t points = 0;
    std::size_t stride = 1;
    std::size_t section_index = 0;
    std::size_t sections = 100;
    double train_fraction = 0.8;
    bool whole = false;
    std::string placement = "even";
    std::string name = "vg";
};

int cmd_vg(const GlobalOptions& g, const VgOptions& o) {
    if (o.points < 2) throw CliFailure(kConfig, "--points must be >= 2");
    if (o.stride < 1) throw CliFailure(kConfig, "--stride must be >= 1");
    if (o.sections < 1) throw CliFailure(kConfig, "--sections must be >= 1");

    std::ifstream in(o.input);
    if (!in) throw CliFailure(kData, "cannot open " + o.input);
    const auto series = dyrc::read_csv(in);
    const auto source = o.whole ? series : dyrc::split(series, o.train_fraction).first;

    std::vector<dyrc::Section> candidates;
    if (o.placement == "random") {
        dyrc::Rng rng(dyrc::derive_seed(g.seed.value_or(42), dyrc::hash_tag("sections"), o.points, o.stride));
        candidates = dyrc::sample_sections_random(source.size(), o.points, o.stride, o.sections, rng);
    } else {
        candidates = dyrc::sample_sections(source.size(), o.points, o.stride, o.sections);
    }
    if (o.section_index >= candidates.size()) {
        throw CliFailure(kData, "--section-index " + std::to_string(o.section_index) + " outside [0, " +
                                    std::to_string(candidates.size()) + ")");
    }
    const auto section = candidates[o.section_index];
    const auto graph = dyrc::section_visibility_graph(source.q, section);
    const auto m = dyrc::metrics(graph);

    std::ostringstream edges;
    dyrc::write_edge_list(edges, graph);
    const fs::path out = g.out;
    write_text(out / (o.name + ".csv"), edges.str());

    nlohmann::ordered_json j = nlohmann::ordered_json::parse(metrics_json(m, 17));
    j["edges"] = graph.edge_count();
    j["section"] = {{"index", o.section_index},  {"start", section.start}, {"stride", section.stride},
                    {"length", section.length}, {"span", section.span()}};
    j["source_samples"] = source.size();
    write_text(out / (o.name + "_metrics.json"), j.dump(2) + "\n");
    return kOk;
}

// ---------------------------------------------------------------------------
// metrics
// ---------------------------------------------------------------------------

int cmd_metrics(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliFailure(kData, "cannot open " + path);
    const auto graph = dyrc::read_edge_list(in);
    const auto m = dyrc::metrics(graph);
    if (m.nu == 0.0) {
        throw dyrc::Error(dyrc::Errc::ZeroSpectralRadius, "graph has spectral radius 0 and cannot serve as a reservoir");
    }
    std::cout << metrics_json(m, 12) << std::endl;
    return kOk;
}

// ---------------------------------------------------------------------------
// run / export
// ---------------------------------------------------------------------------

struct RunOptions {
    std::optional<int> dataset;
    std::vector<std::size_t> sizes;
    std::optional<std::size_t> replicates;
    std::vector<std::string> variants;
    std::string mode;
    std::string sections;
    std::optional<double> alpha;
    std::optional<double> ridge;
    std::optional<std::size_t> washout;
    std::optional<double> input_fraction;
    std::optional<double> spectral_target;
    std::optional<double> er_density;
    std::optional<double> train_fraction;
    bool timing = false;
    bool zero_readout = false;
};

void write_tables(const fs::path& out, const std::vector<dyrc::RunRecord>& records, const dyrc::Summary& summary,
                  bool with_provenance) {
    write_text(out / "summary.csv", dyrc::summary_csv(summary));
    write_text(out / "plotdata" / "mae_by_size.csv", dyrc::plot_mae_by_size_csv(records));
    write_text(out / "plotdata" / "mae_by_metric.csv", dyrc::plot_mae_by_metric_csv(records));
    if (with_provenance) write_text(out / "plotdata" / "reservoir_provenance.csv", dyrc::reservoir_provenance_csv(records));
    for (const auto& [v, n] : summary.empty_cells)
        spdlog::warn("EmptyCell: no successful replicate for {} N={}", dyrc::to_string(v), n);
}

int cmd_run(const GlobalOptions& g, const RunOptions& o) {
    dyrc::ExperimentConfig cfg;
    nlohmann::json file_cfg = nlohmann::json::object();
    if (!g.config.empty()) file_cfg = load_config_file(g.config);
    dyrc::apply_config(file_cfg, cfg);

    if (o.dataset) cfg.dataset = *o.dataset;
    if (!o.sizes.empty()) cfg.sizes = o.sizes;
    if (o.replicates) cfg.n_replicates = *o.replicates;
    if (!o.variants.empty()) {
        cfg.variants.clear();
        for (const auto& v : o.variants) cfg.variants.push_back(dyrc::parse_variant(v));
    }
    if (!o.mode.empty()) cfg.mode = dyrc::parse_mode(o.mode);
    if (!o.sections.empty()) dyrc::apply_config({{"sections", o.sections}}, cfg);
    if (o.alpha) cfg.reservoir.alpha = *o.alpha;
    if (o.ridge) cfg.reservoir.ridge_lambda = *o.ridge;
    if (o.washout) cfg.reservoir.washout = *o.washout;
    if (o.input_fraction) cfg.reservoir.input_fraction = *o.input_fraction;
    if (o.spectral_target) cfg.reservoir.spectral_target = *o.spectral_target;
    if (o.er_density) cfg.er_density = *o.er_density;
    if (o.train_fraction) cfg.train_fraction = *o.train_fraction;
    if (g.seed) cfg.seed = *g.seed;
    if (g.parallel) cfg.parallelism = *g.parallel;
    cfg.zero_readout = o.zero_readout;

    fs::path out = g.out;
    if (g.out == "." && file_cfg.contains("out")) out = file_cfg.at("out").get<std::string>();
    cfg.validate();

    const std::size_t total = cfg.variants.size() * cfg.sizes.size() * cfg.n_replicates;
    spdlog::info("sweep: {} variants x {} sizes x {} replicates = {} runs", cfg.variants.size(), cfg.sizes.size(),
                 cfg.n_replicates, total);
    const auto data = dyrc::make_dataset(cfg);
    const auto result = dyrc::run_experiment(cfg, data, [](const dyrc::RunRecord& r, std::size_t done, std::size_t n) {
        if (!r.ok())
            spdlog::warn("{} N={} replicate {}: {}", dyrc::to_string(r.variant), r.n, r.replicate, r.status);
        spdlog::debug("[{}/{}] {} N={} replicate {} mae={}", done, n, dyrc::to_string(r.variant), r.n, r.replicate,
                      r.mae ? dyrc::io::format_real(*r.mae, 6) : "-");
        if (done % 50 == 0 || done == n) spdlog::info("progress {}/{}", done, n);
    });

    write_text(out / "results.csv", dyrc::results_csv(result.records, o.timing));
    write_tables(out, result.records, result.summary, true);
    nlohmann::json manifest = dyrc::to_json(cfg);
    manifest["version"] = DYRC_VERSION;
    write_text(out / "run.json", manifest.dump(2) + "\n");
    return kOk;
}

int cmd_export(const GlobalOptions& g, const std::string& results_path) {
    const fs::path out = g.out;
    const fs::path src = results_path.empty() ? out / "results.csv" : fs::path(results_path);
    std::ifstream in(src);
    if (!in) throw CliFailure(kData, "cannot open " + src.string());
    const auto records = dyrc::parse_results_csv(in);
    write_tables(out, records, dyrc::summarize(records), false);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();

    CLI::App app{"Visibility-graph reservoir benchmark on forced Duffing data"};
    app.set_version_flag("--version", DYRC_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--seed", g.seed, "Master random seed");
    app.add_option("--out", g.out, "Output directory");
    app.add_option("--parallel", g.parallel, "Worker threads (0 = all cores)");
    app.add_option("--config", g.config, "TOML or JSON configuration file");

    SimulateOptions sim_o;
    auto* sim = app.add_subcommand("simulate", "Integrate a Duffing parameter set and write its time series");
    sim->add_option("--set", sim_o.set, "Parameter set 1, 2 or 3")->check(CLI::Range(1, 3));
    sim->add_option("--force", sim_o.force, "Parameter override KEY=VALUE (d, k, k_nl, F, Omega)");
    sim->add_option("--ic", sim_o.ic, "Initial condition q0,v0");
    sim->add_option("--dt", sim_o.dt, "Recording step");
    sim->add_option("--substeps", sim_o.substeps, "RK4 steps per recorded sample");
    sim->add_option("--samples", sim_o.samples, "Recorded samples including transient");
    sim->add_option("--transient", sim_o.transient, "Leading samples to drop");
    sim->add_option("--name", sim_o.name, "Output file stem");

    VgOptions vg_o;
    auto* vg = app.add_subcommand("vg", "Visibility graph of one section of a series' position column");
    vg->add_option("--input", vg_o.input, "Time series CSV (t,q,qdot,g)")->required();
    vg->add_option("--points", vg_o.points, "Nodes in the graph")->required();
    vg->add_option("--stride", vg_o.stride, "Sample stride within the section");
    vg->add_option("--section-index", vg_o.section_index, "Which of the sampled sections to use");
    vg->add_option("--sections", vg_o.sections, "Number of sections sampled over the series");
    vg->add_option("--sections-mode", vg_o.placement, "even or random")->check(CLI::IsMember({"even", "random"}));
    vg->add_option("--train-fraction", vg_o.train_fraction, "Use only this leading fraction of the series");
    vg->add_flag("--whole", vg_o.whole, "Use the whole series instead of the training split");
    vg->add_option("--name", vg_o.name, "Output file stem");

    std::string graph_path;
    auto* met = app.add_subcommand("metrics", "Network metrics of an edge-list graph");
    met->add_option("graph", graph_path, "Edge-list CSV")->required();

    RunOptions run_o;
    auto* run = app.add_subcommand("run", "Run the variant x size x replicate benchmark sweep");
    run->add_option("--set,--dataset", run_o.dataset, "Duffing parameter set")->check(CLI::Range(1, 3));
    run->add_option("--sizes", run_o.sizes, "Reservoir sizes")->delimiter(',');
    run->add_option("--replicates", run_o.replicates, "Replicates per (variant, size)");
    run->add_option("--variants", run_o.variants, "ER, DenseER, DyRC_VG, DyRC_VG_16")->delimiter(',');
    run->add_option("--mode", run_o.mode, "closed_loop or open_loop");
    run->add_option("--sections", run_o.sections, "even or random section placement");
    run->add_option("--alpha", run_o.alpha, "Leakage rate");
    run->add_option("--ridge", run_o.ridge, "Ridge regularization");
    run->add_option("--washout", run_o.washout, "Discarded initial states");
    run->add_option("--input-fraction", run_o.input_fraction, "Fraction of nodes receiving input");
    run->add_option("--spectral-target", run_o.spectral_target, "Target spectral radius");
    run->add_option("--er-density", run_o.er_density, "Density of the baseline ER reservoir");
    run->add_option("--train-fraction", run_o.train_fraction, "Training share of the series");
    run->add_flag("--timing", run_o.timing, "Fill the wall_ms column (makes results.csv run-dependent)");
    run->add_flag("--zero-readout", run_o.zero_readout, "Diagnostic: predict with an all-zero readout");

    std::string results_path;
    auto* exp = app.add_subcommand("export", "Rebuild summary and plot tables from results.csv");
    exp->add_option("--results", results_path, "results.csv to read (default <out>/results.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        if (g.parallel && *g.parallel > 4096) throw CliFailure(kConfig, "--parallel is unreasonably large");
        if (*sim) return cmd_simulate(g, sim_o);
        if (*vg) return cmd_vg(g, vg_o);
        if (*met) return cmd_metrics(graph_path);
        if (*run) return cmd_run(g, run_o);
        if (*exp) return cmd_export(g, results_path);
    } catch (const CliFailure& e) {
        spdlog::error("{}", e.what());
        return e.exit_code;
    } catch (const dyrc::Error& e) {
        spdlog::error("{}", e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kData;
    }
    return kConfig;
}
