#pragma once

// JSON view of ExperimentConfig. TOML files are converted to this form by the
// command-line front end before reaching here.
//
//   dataset, seed, sizes, replicates, variants, mode, sections, parallel,
//   train_fraction, er_density, coarse_stride,
//   reservoir  { alpha, input_fraction, ridge_lambda, washout, spectral_target }
//   simulation { dt_record, substeps, n_transient, n_samples, q0, v0 }
//   duffing    { d, k, k_nl, F, Omega }        (replaces the dataset's set)

#include <nlohmann/json.hpp>

#include <string>

#include "dyrc/error.hpp"
#include "dyrc/experiment.hpp"

namespace dyrc {

namespace detail {
template <typename T>
void read_key(const nlohmann::json& j, const char* key, T& dst) {
    if (!j.contains(key)) return;
    try {
        dst = j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::InvalidArgument, std::string("config key '") + key + "': " + e.what());
    }
}
}  // namespace detail

inline void apply_config(const nlohmann::json& j, ExperimentConfig& cfg) {
    if (!j.is_object()) throw Error(Errc::InvalidArgument, "config root must be a table/object");
    static constexpr const char* kKnown[] = {"dataset",        "seed",       "sizes",        "replicates",
                                             "variants",       "mode",       "sections",     "parallel",
                                             "train_fraction", "er_density", "coarse_stride", "reservoir",
                                             "simulation",     "duffing",    "out"};
    for (const auto& [key, _] : j.items()) {
        bool known = false;
        for (const char* k : kKnown) known = known || key == k;
        if (!known) throw Error(Errc::InvalidArgument, "unknown config key '" + key + "'");
    }

    detail::read_key(j, "dataset", cfg.dataset);
    detail::read_key(j, "seed", cfg.seed);
    detail::read_key(j, "sizes", cfg.sizes);
    detail::read_key(j, "replicates", cfg.n_replicates);
    detail::read_key(j, "parallel", cfg.parallelism);
    detail::read_key(j, "train_fraction", cfg.train_fraction);
    detail::read_key(j, "er_density", cfg.er_density);
    detail::read_key(j, "coarse_stride", cfg.coarse_stride);
    if (j.contains("variants")) {
        cfg.variants.clear();
        for (const auto& v : j.at("variants")) cfg.variants.push_back(parse_variant(v.get<std::string>()));
    }
    if (j.contains("mode")) cfg.mode = parse_mode(j.at("mode").get<std::string>());
    if (j.contains("sections")) {
        const auto s = j.at("sections").get<std::string>();
        if (s == "even") cfg.sections = SectionPlacement::Even;
        else if (s == "random") cfg.sections = SectionPlacement::Random;
        else throw Error(Errc::InvalidArgument, "sections must be 'even' or 'random'");
    }
    if (j.contains("reservoir")) {
        const auto& r = j.at("reservoir");
        detail::read_key(r, "alpha", cfg.reservoir.alpha);
        detail::read_key(r, "input_fraction", cfg.reservoir.input_fraction);
        detail::read_key(r, "ridge_lambda", cfg.reservoir.ridge_lambda);
        detail::read_key(r, "washout", cfg.reservoir.washout);
        detail::read_key(r, "spectral_target", cfg.reservoir.spectral_target);
    }
    if (j.contains("duffing")) {
        auto p = cfg.duffing();
        const auto& d = j.at("duffing");
        detail::read_key(d, "d", p.d);
        detail::read_key(d, "k", p.k);
        detail::read_key(d, "k_nl", p.k_nl);
        detail::read_key(d, "F", p.F);
        detail::read_key(d, "Omega", p.Omega);
        cfg.params = p;
    }
    if (j.contains("simulation")) {
        auto s = cfg.simulation();
        const auto& js = j.at("simulation");
        detail::read_key(js, "dt_record", s.dt_record);
        detail::read_key(js, "substeps", s.substeps);
        detail::read_key(js, "n_transient", s.n_transient);
        detail::read_key(js, "n_samples", s.n_samples);
        detail::read_key(js, "q0", s.q0);
        detail::read_key(js, "v0", s.v0);
        cfg.sim = s;
    }
}

[[nodiscard]] inline nlohmann::json to_json(const ExperimentConfig& cfg) {
    nlohmann::json variants = nlohmann::json::array();
    for (auto v : cfg.variants) variants.push_back(std::string(to_string(v)));
    const auto p = cfg.duffing();
    const auto s = cfg.simulation();
    nlohmann::json j = {
        {"dataset", cfg.dataset},
        {"seed", cfg.seed},
        {"sizes", cfg.sizes},
        {"replicates", cfg.n_replicates},
        {"variants", variants},
        {"mode", std::string(to_string(cfg.mode))},
        {"sections", cfg.sections == SectionPlacement::Even ? "even" : "random"},
        {"train_fraction", cfg.train_fraction},
        {"er_density", cfg.er_density},
        {"coarse_stride", cfg.coarse_stride},
        {"reservoir",
         {{"alpha", cfg.reservoir.alpha},
          {"input_fraction", cfg.reservoir.input_fraction},
          {"ridge_lambda", cfg.reservoir.ridge_lambda},
          {"washout", cfg.reservoir.washout},
          {"spectral_target", cfg.reservoir.spectral_target}}},
        {"simulation",
         {{"dt_record", s.dt_record},
          {"substeps", s.substeps},
          {"n_transient", s.n_transient},
          {"n_samples", s.n_samples},
          {"q0", s.q0},
          {"v0", s.v0}}},
    };
    if (cfg.params) j["duffing"] = {{"d", p.d}, {"k", p.k}, {"k_nl", p.k_nl}, {"F", p.F}, {"Omega", p.Omega}};
    return j;
}

}  // namespace dyrc
