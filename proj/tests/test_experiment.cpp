#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dyrc/config.hpp"
#include "dyrc/experiment.hpp"
#include "oracles.hpp"

using namespace dyrc;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    auto sim = SimConfig::defaults_for(cfg.duffing());
    sim.n_samples = 4000;
    sim.n_transient = 1000;
    cfg.sim = sim;
    cfg.sizes = {30, 50};
    cfg.n_replicates = 4;
    cfg.parallelism = 1;
    return cfg;
}

const Dataset& small_data() {
    static const Dataset d = make_dataset(small_config());
    return d;
}

RunRecord ok_record(Variant v, std::size_t n, std::size_t rep, double mae) {
    RunRecord r;
    r.variant = v;
    r.n = n;
    r.replicate = rep;
    r.mae = mae;
    return r;
}

}  // namespace

// ---- dataset layout --------------------------------------------------------

TEST(Dataset, InputTargetAlignment) {
    const auto& d = small_data();
    const auto L = static_cast<Eigen::Index>(d.train.size());
    ASSERT_EQ(d.train_inputs.cols(), L - 1);
    ASSERT_EQ(d.train_inputs.rows(), 3);
    ASSERT_EQ(d.train_targets.rows(), 2);
    for (Eigen::Index k : {Eigen::Index{0}, Eigen::Index{17}, L - 2}) {
        const auto i = static_cast<std::size_t>(k);
        EXPECT_EQ(d.train_inputs(0, k), d.train.q[i]);
        EXPECT_EQ(d.train_inputs(1, k), d.train.qdot[i]);
        EXPECT_EQ(d.train_inputs(2, k), d.train.g[i + 1]);
        EXPECT_EQ(d.train_targets(0, k), d.train.q[i + 1]);
        EXPECT_EQ(d.train_targets(1, k), d.train.qdot[i + 1]);
    }
    EXPECT_EQ(d.test_inputs(0, 0), d.train.q.back());
    EXPECT_EQ(d.test_inputs(2, 0), d.test.g[0]);
    EXPECT_EQ(d.test_targets(0, 0), d.test.q[0]);
    EXPECT_EQ(d.test_targets.cols(), static_cast<Eigen::Index>(d.test.size()));
    EXPECT_EQ(d.test_forcing, d.test_inputs.bottomRows(1));
    EXPECT_EQ(d.y_init(0), d.train.q.back());
    EXPECT_EQ(d.y_init(1), d.train.qdot.back());
}

// ---- reservoir construction ------------------------------------------------

TEST(BuildReservoir, ErdosRenyiDensityAndNormalization) {
    ExperimentConfig cfg;
    Rng rng(1);
    const auto b = build_reservoir(cfg, small_data().train.q, Variant::ER, 100, 0, rng);
    const double sigma = std::sqrt(0.1 * 0.9 / (100.0 * 99.0));
    EXPECT_NEAR(b.metrics.rho, 0.1, 3 * sigma);
    EXPECT_NEAR(b.metrics.nu, 0.9, 0.9e-9);
    EXPECT_EQ(b.generation_p, 0.1);
    EXPECT_TRUE(b.graph.directed());
}

TEST(BuildReservoir, RampGivesPath) {
    std::vector<double> ramp(2000);
    for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i);
    ExperimentConfig cfg;
    Rng rng(1);
    for (auto v : {Variant::DyRC_VG, Variant::DyRC_VG_16}) {
        const auto b = build_reservoir(cfg, ramp, v, 80, 3, rng);
        EXPECT_NEAR(b.metrics.rho, 2.0 / 80.0, 1e-15);
        EXPECT_EQ(b.graph.edge_count(), 79u);
        EXPECT_NEAR(b.metrics.nu, 0.9, 0.9e-9);
        ASSERT_TRUE(b.section.has_value());
        EXPECT_EQ(b.section->stride, v == Variant::DyRC_VG ? 1u : 16u);
    }
}

TEST(BuildReservoir, DenseErPairsWithSameReplicateVg) {
    const auto cfg = small_config();
    const auto& q = small_data().train.q;
    for (std::size_t rep = 0; rep < cfg.n_replicates; ++rep) {
        Rng r1(rep), r2(rep + 100);
        const auto vg = build_reservoir(cfg, q, Variant::DyRC_VG, 50, rep, r1);
        const auto dense = build_reservoir(cfg, q, Variant::DenseER, 50, rep, r2);
        ASSERT_TRUE(dense.generation_p.has_value());
        EXPECT_EQ(*dense.generation_p, vg.metrics.rho);
    }
}

TEST(BuildReservoir, TopologyMeasuredBeforeScaling) {
    const auto cfg = small_config();
    Rng rng(2);
    const auto b = build_reservoir(cfg, small_data().train.q, Variant::DyRC_VG, 50, 1, rng);
    const auto unscaled = topology_metrics(section_visibility_graph(small_data().train.q, *b.section));
    EXPECT_EQ(b.metrics.rho, unscaled.rho);
    EXPECT_EQ(b.metrics.c, unscaled.c);
    EXPECT_EQ(b.metrics.b, unscaled.b);
    EXPECT_EQ(b.metrics.k_in, unscaled.k_in);
}

TEST(BuildReservoir, SectionsFollowReplicateIndex) {
    const auto cfg = small_config();
    const auto L = small_data().train.size();
    const auto all = sample_sections(L, 50, 16, cfg.n_replicates);
    for (std::size_t rep = 0; rep < cfg.n_replicates; ++rep)
        EXPECT_EQ(replicate_section(cfg, L, 50, 16, rep), all[rep]);
    auto random_cfg = cfg;
    random_cfg.sections = SectionPlacement::Random;
    EXPECT_EQ(replicate_section(random_cfg, L, 50, 16, 2), replicate_section(random_cfg, L, 50, 16, 2));
}

// ---- replicates ------------------------------------------------------------

TEST(Replicate, Deterministic) {
    const auto cfg = small_config();
    for (auto v : kAllVariants) {
        const auto a = run_replicate(cfg, small_data(), v, 50, 1);
        const auto b = run_replicate(cfg, small_data(), v, 50, 1);
        EXPECT_TRUE(a.same_outcome(b)) << to_string(v);
    }
}

TEST(Replicate, RecordsNormalizedReservoir) {
    auto cfg = small_config();
    ReservoirModel model;
    const auto rec = run_replicate(cfg, small_data(), Variant::ER, 50, 0, &model);
    ASSERT_TRUE(rec.ok()) << rec.status;
    ASSERT_TRUE(rec.mae.has_value());
    EXPECT_TRUE(std::isfinite(*rec.mae));
    EXPECT_NEAR(rec.metrics->nu, 0.9, 0.9e-9);
    EXPECT_NEAR(spectral_radius({model.A, true}), 0.9, 0.9e-9);
    EXPECT_EQ(rec.seed, replicate_seed(cfg.seed, Variant::ER, 50, 0));
}

TEST(Replicate, ZeroReadoutScoresMeanAbsoluteTarget) {
    auto cfg = small_config();
    cfg.zero_readout = true;
    for (auto mode : {EvalMode::ClosedLoop, EvalMode::OpenLoop}) {
        cfg.mode = mode;
        const auto rec = run_replicate(cfg, small_data(), Variant::DyRC_VG_16, 30, 0);
        ASSERT_TRUE(rec.ok());
        const double expected = small_data().test_targets.cwiseAbs().mean();
        EXPECT_NEAR(*rec.mae, expected, 1e-14 * expected);
    }
}

TEST(Replicate, FailureIsRecordedNotThrown) {
    auto cfg = small_config();
    // A 30-node stride-16 section cannot fit in a 100-sample training split.
    auto sim = *cfg.sim;
    sim.n_samples = sim.n_transient + 125;
    cfg.sim = sim;
    const auto data = make_dataset(cfg);
    const auto rec = run_replicate(cfg, data, Variant::DyRC_VG_16, 30, 0);
    EXPECT_FALSE(rec.ok());
    EXPECT_EQ(rec.status, "failed:section_too_long");
    EXPECT_FALSE(rec.mae.has_value());
}

TEST(Replicate, SeedIsolation) {
    auto cfg = small_config();
    cfg.variants = {Variant::ER};
    cfg.sizes = {30};
    const auto base = run_experiment(cfg, small_data()).records;
    auto more = cfg;
    more.n_replicates = 6;
    const auto extended = run_experiment(more, small_data()).records;
    for (std::size_t i = 0; i < base.size(); ++i) EXPECT_TRUE(base[i].same_outcome(extended[i]));
    EXPECT_NE(extended[4].seed, extended[5].seed);
    EXPECT_NE(extended[4].mae, extended[5].mae);
}

// ---- sweep -----------------------------------------------------------------

TEST(Sweep, DefaultCardinality) {
    ExperimentConfig cfg;
    EXPECT_EQ(sweep_tasks(cfg).size(), 2400u);
    cfg.variants = {Variant::ER};
    cfg.sizes = {50};
    cfg.n_replicates = 1;
    EXPECT_EQ(sweep_tasks(cfg).size(), 1u);
}

TEST(Sweep, OrderIndependentOfParallelism) {
    auto cfg = small_config();
    cfg.n_replicates = 3;
    const auto serial = run_experiment(cfg, small_data());
    cfg.parallelism = 4;
    const auto parallel = run_experiment(cfg, small_data());
    ASSERT_EQ(serial.records.size(), 4u * 2u * 3u);
    EXPECT_EQ(results_csv(serial.records), results_csv(parallel.records));
    const auto tasks = sweep_tasks(cfg);
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        EXPECT_EQ(serial.records[i].variant, tasks[i].variant);
        EXPECT_EQ(serial.records[i].n, tasks[i].n);
        EXPECT_EQ(serial.records[i].replicate, tasks[i].replicate);
    }
    for (const auto& r : serial.records)
        if (r.ok()) {
            EXPECT_NEAR(r.metrics->nu, 0.9, 0.9e-9);
        }
}

TEST(Sweep, ProgressCallbackSeesEveryRecord) {
    auto cfg = small_config();
    cfg.variants = {Variant::ER};
    std::size_t calls = 0, last_total = 0;
    (void)run_experiment(cfg, small_data(), [&](const RunRecord&, std::size_t, std::size_t total) {
        ++calls;
        last_total = total;
    });
    EXPECT_EQ(calls, 8u);
    EXPECT_EQ(last_total, 8u);
}

// ---- summary ---------------------------------------------------------------

TEST(Summary, MedianConventions) {
    std::vector<RunRecord> odd, even;
    for (double v : {3.0, 1.0, 2.0}) odd.push_back(ok_record(Variant::ER, 50, odd.size(), v));
    for (double v : {4.0, 1.0, 3.0, 2.0}) even.push_back(ok_record(Variant::ER, 50, even.size(), v));
    EXPECT_EQ(summarize(odd).at(Variant::ER, 50).median, 2.0);
    EXPECT_EQ(summarize(even).at(Variant::ER, 50).median, 2.5);
}

TEST(Summary, MatchesOracle) {
    Rng rng(9);
    std::vector<RunRecord> recs;
    std::vector<double> values;
    for (std::size_t i = 0; i < 100; ++i) {
        const double v = rng.uniform(0.0, 2.0);
        values.push_back(v);
        recs.push_back(ok_record(Variant::DyRC_VG, 100, i, v));
    }
    auto failed = ok_record(Variant::DyRC_VG, 100, 100, 0.0);
    failed.status = "failed:diverged";
    failed.mae.reset();
    recs.push_back(failed);

    const auto row = summarize(recs).at(Variant::DyRC_VG, 100);
    EXPECT_EQ(row.count_ok, 100u);
    EXPECT_EQ(row.count_failed, 1u);
    EXPECT_EQ(row.median, oracle::median(values));
    auto sorted = values;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(row.min, sorted.front());
    EXPECT_EQ(row.max, sorted.back());
    // h = 99/4 = 24.75 and 74.25
    EXPECT_NEAR(row.q1, sorted[24] + 0.75 * (sorted[25] - sorted[24]), 1e-15);
    EXPECT_NEAR(row.q3, sorted[74] + 0.25 * (sorted[75] - sorted[74]), 1e-15);
    long double sum = 0, ss = 0;
    for (double v : values) sum += v;
    const long double mean = sum / 100;
    for (double v : values) ss += (v - mean) * (v - mean);
    EXPECT_NEAR(row.mean, static_cast<double>(mean), 1e-14);
    EXPECT_NEAR(row.stddev, std::sqrt(static_cast<double>(ss / 99)), 1e-14);
}

TEST(Summary, AllFailedCellIsReported) {
    auto r = ok_record(Variant::DenseER, 200, 0, 0.0);
    r.status = "failed:zero_spectral_radius";
    r.mae.reset();
    const auto s = summarize({r});
    ASSERT_EQ(s.empty_cells.size(), 1u);
    EXPECT_TRUE(std::isnan(s.at(Variant::DenseER, 200).median));
    EXPECT_THROW((void)s.at(Variant::ER, 200), Error);
    EXPECT_NE(summary_csv(s).find("DenseER,200,0,1,,,,,,,"), std::string::npos);
}

// ---- tables ----------------------------------------------------------------

TEST(Tables, ResultsRoundTrip) {
    auto cfg = small_config();
    cfg.sizes = {30};
    cfg.n_replicates = 2;
    const auto res = run_experiment(cfg, small_data());
    const auto csv = results_csv(res.records);
    EXPECT_EQ(csv.substr(0, kResultsHeader.size()), kResultsHeader);
    std::istringstream in(csv);
    const auto back = parse_results_csv(in);
    ASSERT_EQ(back.size(), res.records.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        EXPECT_EQ(back[i].variant, res.records[i].variant);
        EXPECT_EQ(back[i].seed, res.records[i].seed);
        EXPECT_EQ(back[i].mae, res.records[i].mae);
        EXPECT_EQ(back[i].metrics->b, res.records[i].metrics->b);
    }
    EXPECT_EQ(results_csv(back), csv);
    EXPECT_EQ(summary_csv(summarize(back)), summary_csv(res.summary));
}

TEST(Tables, TimingColumnOptIn) {
    auto rec = ok_record(Variant::ER, 50, 0, 0.5);
    rec.metrics = NetworkMetrics{0.9, 0.1, 4.9, 4.9, 0.1, 1.0};
    rec.wall_ms = 12.5;
    const auto plain = results_csv({rec});
    EXPECT_EQ(plain.substr(plain.size() - 2), ",\n");
    EXPECT_NE(results_csv({rec}, true).find(",12.5\n"), std::string::npos);
}

TEST(Tables, PlotData) {
    auto rec = ok_record(Variant::DyRC_VG_16, 50, 3, 0.25);
    rec.metrics = NetworkMetrics{0.9, 0.1, 4.9, 4.9, 0.2, 1.5};
    rec.section = Section{12, 16, 50};
    const auto by_size = plot_mae_by_size_csv({rec});
    EXPECT_EQ(by_size, "variant,N,replicate,mae\nDyRC_VG_16,50,3,0.25\n");
    const auto by_metric = plot_mae_by_metric_csv({rec});
    EXPECT_EQ(std::count(by_metric.begin(), by_metric.end(), '\n'), 7);
    EXPECT_NE(by_metric.find("DyRC_VG_16,50,3,betweenness,1.5,0.25"), std::string::npos);
    EXPECT_NE(reservoir_provenance_csv({rec}).find("DyRC_VG_16,50,3,,12,16,50"), std::string::npos);
}

TEST(Tables, RejectMalformedResults) {
    std::istringstream bad_header("variant,N\n");
    EXPECT_THROW((void)parse_results_csv(bad_header), Error);
    std::istringstream short_row(std::string(kResultsHeader) + "\nER,1,50\n");
    EXPECT_THROW((void)parse_results_csv(short_row), Error);
}

// ---- naming and config -----------------------------------------------------

TEST(Naming, VariantAndModeParsing) {
    for (auto v : kAllVariants) EXPECT_EQ(parse_variant(to_string(v)), v);
    EXPECT_EQ(parse_variant("dyrc_vg_16"), Variant::DyRC_VG_16);
    EXPECT_EQ(parse_variant("denseer"), Variant::DenseER);
    EXPECT_THROW((void)parse_variant("BA"), Error);
    EXPECT_EQ(parse_mode("open"), EvalMode::OpenLoop);
    EXPECT_EQ(parse_mode("closed_loop"), EvalMode::ClosedLoop);
    EXPECT_THROW((void)parse_mode("sideways"), Error);
}

TEST(Config, AppliesKnownKeys) {
    ExperimentConfig cfg;
    const auto j = nlohmann::json::parse(R"({
        "dataset": 2, "seed": 7, "sizes": [50, 100], "replicates": 5,
        "variants": ["ER", "DyRC_VG_16"], "mode": "open_loop", "sections": "random",
        "reservoir": {"alpha": 0.3, "ridge_lambda": 1e-4, "washout": 50},
        "simulation": {"n_samples": 5000},
        "duffing": {"F": 1.5}
    })");
    apply_config(j, cfg);
    EXPECT_EQ(cfg.dataset, 2);
    EXPECT_EQ(cfg.seed, 7u);
    EXPECT_EQ(cfg.sizes, (std::vector<std::size_t>{50, 100}));
    EXPECT_EQ(cfg.n_replicates, 5u);
    EXPECT_EQ(cfg.variants, (std::vector<Variant>{Variant::ER, Variant::DyRC_VG_16}));
    EXPECT_EQ(cfg.mode, EvalMode::OpenLoop);
    EXPECT_EQ(cfg.sections, SectionPlacement::Random);
    EXPECT_EQ(cfg.reservoir.alpha, 0.3);
    EXPECT_EQ(cfg.reservoir.washout, 50u);
    EXPECT_EQ(cfg.simulation().n_samples, 5000u);
    EXPECT_EQ(cfg.duffing().F, 1.5);
    EXPECT_EQ(cfg.duffing().k, -1.0);  // other set-2 values retained

    ExperimentConfig again;
    apply_config(to_json(cfg), again);
    EXPECT_EQ(to_json(again), to_json(cfg));
}

TEST(Config, RejectsUnknownAndMistypedKeys) {
    ExperimentConfig cfg;
    EXPECT_THROW(apply_config(nlohmann::json::parse(R"({"sizez": [1]})"), cfg), Error);
    EXPECT_THROW(apply_config(nlohmann::json::parse(R"({"seed": "abc"})"), cfg), Error);
    EXPECT_THROW(apply_config(nlohmann::json::parse(R"({"sections": "spiral"})"), cfg), Error);
    EXPECT_THROW(apply_config(nlohmann::json::parse("[1, 2]"), cfg), Error);
}

TEST(Config, Validation) {
    ExperimentConfig cfg;
    cfg.sizes = {};
    EXPECT_THROW(cfg.validate(), Error);
    cfg = ExperimentConfig{};
    cfg.er_density = 2.0;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = ExperimentConfig{};
    cfg.reservoir.alpha = 1.5;
    EXPECT_THROW(cfg.validate(), Error);
}
