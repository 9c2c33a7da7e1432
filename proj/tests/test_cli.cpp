#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_runner.hpp"
#include "dyrc/dynamics.hpp"
#include "dyrc/experiment.hpp"
#include "dyrc/graph.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override { dir = cli::scratch("cli"); }
    void TearDown() override { fs::remove_all(dir); }

    cli::Result run(const std::string& args) { return cli::run("--out '" + dir.string() + "' " + args, dir); }

    void write(const std::string& name, const std::string& text) { std::ofstream(dir / name) << text; }

    fs::path dir;
};

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_F(Cli, SimulateSetOne) {
    ASSERT_EQ(run("simulate --set 1 --samples 3000").code, 0);
    std::ifstream in(dir / "series.csv");
    const auto ts = dyrc::read_csv(in);
    EXPECT_EQ(ts.size(), 1000u);
    EXPECT_NEAR(ts.g[0], 0.5, 1e-12);
    const auto side = nlohmann::json::parse(cli::slurp(dir / "series.json"));
    EXPECT_EQ(side["duffing"]["F"], 0.5);
    EXPECT_EQ(side["duffing"]["Omega"], 8.0);
    EXPECT_TRUE(side.contains("version"));
}

TEST_F(Cli, SimulateFixedPoint) {
    ASSERT_EQ(run("simulate --set 1 --force F=0 --ic 0,0 --samples 2500").code, 0);
    std::ifstream in(dir / "series.csv");
    const auto ts = dyrc::read_csv(in);
    for (double q : ts.q) ASSERT_EQ(q, 0.0);
}

TEST_F(Cli, SimulateIsDeterministic) {
    ASSERT_EQ(run("simulate --set 2 --samples 2500 --name a").code, 0);
    ASSERT_EQ(run("simulate --set 2 --samples 2500 --name b").code, 0);
    EXPECT_EQ(cli::slurp(dir / "a.csv"), cli::slurp(dir / "b.csv"));
}

TEST_F(Cli, SimulateExitCodes) {
    EXPECT_EQ(run("simulate --set 4").code, 2);
    EXPECT_EQ(run("simulate --force X=1").code, 2);
    EXPECT_EQ(run("simulate --force Omega=0").code, 2);
    EXPECT_EQ(run("simulate --ic 1").code, 2);
    EXPECT_EQ(run("simulate --force k_nl=-10 --force F=0 --ic 3,0 --samples 100000 --transient 0").code, 3);
    EXPECT_EQ(run("frobnicate").code, 2);
}

TEST_F(Cli, VgOnRamp) {
    std::ostringstream csv;
    csv << "t,q,qdot,g\n";
    for (int i = 0; i < 500; ++i) csv << i * 0.01 << ',' << i << ",1,0\n";
    write("ramp.csv", csv.str());
    ASSERT_EQ(run("vg --input '" + (dir / "ramp.csv").string() + "' --points 100").code, 0);
    std::ifstream in(dir / "vg.csv");
    const auto g = dyrc::read_edge_list(in);
    EXPECT_EQ(g.n(), 100u);
    EXPECT_EQ(g.edge_count(), 99u);
    const auto j = nlohmann::json::parse(cli::slurp(dir / "vg_metrics.json"));
    EXPECT_EQ(j["edges"], 99);
    EXPECT_DOUBLE_EQ(j["rho"].get<double>(), 0.02);
}

TEST_F(Cli, VgStrideAndRange) {
    ASSERT_EQ(run("simulate --set 1 --samples 6000").code, 0);
    const auto series = "--input '" + (dir / "series.csv").string() + "'";
    ASSERT_EQ(run("vg " + series + " --points 50 --stride 16 --section-index 3").code, 0);
    const auto j = nlohmann::json::parse(cli::slurp(dir / "vg_metrics.json"));
    EXPECT_EQ(j["section"]["span"], 49 * 16 + 1);
    EXPECT_EQ(j["section"]["stride"], 16);
    EXPECT_EQ(run("vg " + series + " --points 50 --section-index 100").code, 4);
    EXPECT_EQ(run("vg " + series + " --points 400 --stride 16").code, 4);
    EXPECT_EQ(run("vg " + series + " --points 1").code, 2);
    EXPECT_EQ(run("vg --input '" + (dir / "missing.csv").string() + "' --points 5").code, 4);
    EXPECT_EQ(run("vg " + series).code, 2);
}

TEST_F(Cli, MetricsExamples) {
    write("tri.csv", "# n=3 directed=false\nsrc,dst,weight\n0,1,1\n1,2,1\n0,2,1\n");
    auto r = run("metrics '" + (dir / "tri.csv").string() + "'");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["clustering"], 1.0);
    EXPECT_EQ(j["rho"], 1.0);

    write("p3.csv", "# n=3 directed=false\nsrc,dst,weight\n0,1,1\n1,2,1\n");
    r = run("metrics '" + (dir / "p3.csv").string() + "'");
    ASSERT_EQ(r.code, 0);
    j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["betweenness"].get<double>(), 0.333333333333);
    EXPECT_EQ(j["clustering"], 0.0);
}

TEST_F(Cli, MetricsErrors) {
    write("empty.csv", "# n=4 directed=true\nsrc,dst,weight\n");
    EXPECT_EQ(run("metrics '" + (dir / "empty.csv").string() + "'").code, 4);
    write("bad.csv", "not a graph\n");
    EXPECT_EQ(run("metrics '" + (dir / "bad.csv").string() + "'").code, 4);
    EXPECT_EQ(run("metrics '" + (dir / "nope.csv").string() + "'").code, 4);
}

TEST_F(Cli, RunMinimalSweep) {
    const auto r = run("--seed 3 run --variants ER --sizes 30 --replicates 1");
    ASSERT_EQ(r.code, 0);
    const auto results = cli::slurp(dir / "results.csv");
    EXPECT_EQ(lines(results), 2u);
    EXPECT_EQ(results.substr(0, dyrc::kResultsHeader.size()), dyrc::kResultsHeader);
    EXPECT_EQ(lines(cli::slurp(dir / "summary.csv")), 2u);
    for (const char* f : {"plotdata/mae_by_size.csv", "plotdata/mae_by_metric.csv",
                          "plotdata/reservoir_provenance.csv", "run.json"})
        EXPECT_TRUE(fs::exists(dir / f)) << f;
    const auto manifest = nlohmann::json::parse(cli::slurp(dir / "run.json"));
    EXPECT_EQ(manifest["seed"], 3);
    EXPECT_FALSE(fs::exists(dir / "results.csv.tmp"));
}

TEST_F(Cli, RunFromTomlAndFlagsOverride) {
    write("cfg.toml",
          "seed = 5\nsizes = [30]\nreplicates = 2\nvariants = [\"DyRC_VG_16\", \"ER\"]\n"
          "mode = \"open_loop\"\n[reservoir]\nwashout = 50\n");
    ASSERT_EQ(run("--config '" + (dir / "cfg.toml").string() + "' run --replicates 1").code, 0);
    std::istringstream in(cli::slurp(dir / "results.csv"));
    const auto recs = dyrc::parse_results_csv(in);
    ASSERT_EQ(recs.size(), 2u);
    EXPECT_EQ(recs[0].variant, dyrc::Variant::DyRC_VG_16);
    EXPECT_EQ(recs[0].mode, dyrc::EvalMode::OpenLoop);
    EXPECT_EQ(recs[0].seed, dyrc::replicate_seed(5, dyrc::Variant::DyRC_VG_16, 30, 0));
    const auto manifest = nlohmann::json::parse(cli::slurp(dir / "run.json"));
    EXPECT_EQ(manifest["reservoir"]["washout"], 50);
}

TEST_F(Cli, RunConfigErrors) {
    write("bad.toml", "sizes = [30\n");
    EXPECT_EQ(run("--config '" + (dir / "bad.toml").string() + "' run").code, 2);
    write("unknown.json", R"({"colour": "red"})");
    EXPECT_EQ(run("--config '" + (dir / "unknown.json").string() + "' run").code, 2);
    EXPECT_EQ(run("run --variants BA --sizes 30 --replicates 1").code, 2);
    EXPECT_EQ(run("run --alpha 2 --sizes 30 --replicates 1").code, 2);
    EXPECT_EQ(run("run --sizes 1 --replicates 1").code, 2);
}

TEST_F(Cli, ExportRebuildsTables) {
    ASSERT_EQ(run("run --variants ER,DyRC_VG --sizes 30 --replicates 2").code, 0);
    const auto summary = cli::slurp(dir / "summary.csv");
    const auto by_size = cli::slurp(dir / "plotdata/mae_by_size.csv");
    fs::remove(dir / "summary.csv");
    fs::remove(dir / "plotdata/mae_by_size.csv");
    ASSERT_EQ(run("export").code, 0);
    EXPECT_EQ(cli::slurp(dir / "summary.csv"), summary);
    EXPECT_EQ(cli::slurp(dir / "plotdata/mae_by_size.csv"), by_size);
    EXPECT_EQ(run("export --results '" + (dir / "none.csv").string() + "'").code, 4);
}
