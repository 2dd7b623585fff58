#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dwlab/cli.hpp"
#include "dwlab/store.hpp"

using namespace dwlab;
namespace fs = std::filesystem;

namespace {

std::string fresh_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("dwlab-test-" + tag);
    fs::remove_all(p);
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<LifespanRecord> random_records(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<LifespanRecord> out;
    for (std::size_t i = 0; i < n; ++i) {
        LifespanRecord r;
        r.eps = std::exp(4.0 * U(rng) - 3.0);
        r.t0 = std::exp(12.0 * U(rng));
        r.censored = U(rng) < 0.3;
        r.data_class = U(rng) < 0.5 ? DataClass::A : DataClass::B;
        r.p = 1.0 + 2.0 * U(rng);
        out.push_back(r);
    }
    return out;
}

bool same_record(const LifespanRecord& a, const LifespanRecord& b) {
    return a.eps == b.eps && a.t0 == b.t0 && a.censored == b.censored &&
           a.data_class == b.data_class && a.p == b.p;
}

}  // namespace

TEST_CASE("seventeen-digit formatting round-trips doubles") {
    std::vector<double> vals = {0.0,   1.0,    -1.0,    0.1,   1.0 / 3.0,
                                1e-300, 1e300, 2.5e-17, 123.456};
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int k = 0; k < 200; ++k) vals.push_back(std::ldexp(U(rng), k % 160 - 80));
    for (double v : vals) {
        CHECK(std::stod(format_g17(v)) == v);
        CHECK(std::stod(format_short(v)) == v);
    }
    CHECK(format_short(0.1) == "0.1");
    CHECK(format_short(2.0) == "2");
}

TEST_CASE("result store writes atomically named files") {
    const std::string dir = fresh_dir("store");
    ResultStore store(dir);
    const std::string path = store.write_text("a.txt", "hello\n");
    CHECK(slurp(path) == "hello\n");
    store.write_text("a.txt", "replaced\n");
    CHECK(slurp(path) == "replaced\n");
    CHECK(!fs::exists(fs::path(dir) / "a.txt.tmp"));
    CHECK_THROWS_AS(ResultStore(""), std::invalid_argument);
}

TEST_CASE("lifespan tables round-trip bitwise") {
    std::mt19937 rng(20260825);
    const auto recs = random_records(rng, 120);
    const std::string dir = fresh_dir("tables");
    ResultStore store(dir);
    const std::string path = store.write_text("lifespan_test.csv",
                                              lifespan_table(recs));
    const auto back = read_lifespan_table(path);
    REQUIRE(back.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i)
        CHECK(same_record(recs[i], back[i]));
}

TEST_CASE("emit splits lifespan records per class and exponent") {
    std::vector<LifespanRecord> recs;
    for (double p : {2.0, 2.5}) {
        for (int k = 0; k < 3; ++k) {
            LifespanRecord r;
            r.eps = 0.1 * (k + 1);
            r.t0 = 7.0 + k;
            r.p = p;
            r.censored = (k == 2);
            r.data_class = k == 0 ? DataClass::A : DataClass::B;
            recs.push_back(r);
        }
    }
    const std::string dir = fresh_dir("emit");
    ResultStore store(dir);
    const auto paths = emit_plot_data(store, recs);
    REQUIRE(paths.size() == 4);  // {A,B} x {2, 2.5}
    CHECK(fs::exists(fs::path(dir) / "lifespan_A_p2.csv"));
    CHECK(fs::exists(fs::path(dir) / "lifespan_B_p2.5.csv"));
    const std::string body = slurp((fs::path(dir) / "lifespan_B_p2.csv").string());
    CHECK(body.find("eps,t0,censored,class,p") == 0);
    CHECK(body.find("true") != std::string::npos);  // censored row kept

    CHECK_THROWS_AS(emit_plot_data(store, std::vector<LifespanRecord>{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(emit_plot_data(store, std::vector<ApproximationCurve>{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        emit_plot_data(store, std::vector<SolverState>{}, DataClass::A, 2.0),
        std::invalid_argument);
}

TEST_CASE("re-ingested table reproduces the fit exactly") {
    std::vector<LifespanRecord> recs;
    for (double e : {0.8, 0.4, 0.2, 0.1}) {
        LifespanRecord r;
        r.eps = e;
        r.t0 = 1.7 * std::pow(e, -3.7);
        r.p = 2.0;
        r.data_class = DataClass::B;
        r.censored = false;
        recs.push_back(r);
    }
    const FitReport direct = fit_power_law(recs);

    const std::string dir = fresh_dir("roundtrip");
    ResultStore store(dir);
    const auto paths = emit_plot_data(store, recs);
    REQUIRE(paths.size() == 1);
    const FitReport again = fit_power_law(read_lifespan_table(paths[0]));
    CHECK(again.slope == direct.slope);
    CHECK(again.intercept == direct.intercept);
    CHECK(again.r_squared == direct.r_squared);
}

TEST_CASE("config parsing follows the flag grammar") {
    const auto cfg = parse_config(
        {"sweep", "--p", "2", "--class", "B", "--eps", "0.3,0.2,0.1"});
    CHECK(cfg.command == "sweep");
    CHECK(cfg.p == 2.0);
    CHECK(cfg.data_class == DataClass::B);
    REQUIRE(cfg.eps_list.size() == 3);
    CHECK(cfg.eps_list[0] == 0.3);
    CHECK(cfg.eps_list[1] == 0.2);
    CHECK(cfg.eps_list[2] == 0.1);
    CHECK(cfg.solver == SolverKind::fdtd);
    CHECK(cfg.output_dir == "dwlab-out");

    // option and constraint failures name the key
    auto naming = [](const std::vector<std::string>& args,
                     const std::string& key) {
        try {
            parse_config(args);
            return false;
        } catch (const std::invalid_argument& e) {
            return std::string(e.what()).find(key) != std::string::npos;
        }
    };
    CHECK(naming({"sweep", "--class", "B", "--eps", "0.1,0.2,0.8"}, "p"));
    CHECK(naming({"sweep", "--p", "2"}, "eps"));
    CHECK(naming({"solve", "--p", "abc"}, "--p"));
    CHECK(naming({"solve", "--p", "5"}, "p"));
    CHECK(naming({"solve", "--bogus", "1"}, "--bogus"));
    CHECK(naming({"fit"}, "input"));
    CHECK(naming({"solve", "--eps", "-0.1"}, "eps"));
    CHECK(naming({"launch"}, "command"));
}

TEST_CASE("config file values are overridden by flags") {
    const std::string dir = fresh_dir("cfgfile");
    fs::create_directories(dir);
    const std::string file = (fs::path(dir) / "run.cfg").string();
    {
        std::ofstream out(file);
        out << "command = sweep\n"
            << "p = 2\n"
            << "eps = 0.4,0.2,0.1\n"
            << "class = A\n"
            << "dx = 0.25\n";
    }
    const auto cfg = parse_config({"--config", file});
    CHECK(cfg.command == "sweep");
    CHECK(cfg.p == 2.0);
    CHECK(cfg.data_class == DataClass::A);
    CHECK(cfg.dx == 0.25);
    CHECK(cfg.config_file == file);

    const auto cfg2 = parse_config({"--config", file, "--p", "1.5"});
    CHECK(cfg2.p == 1.5);
    CHECK(cfg2.dx == 0.25);
}

TEST_CASE("environment variable supplies the default output directory") {
    setenv("DWLAB_OUT", "/tmp/dwlab-env-dir", 1);
    const auto cfg = parse_config({"verify"});
    CHECK(cfg.output_dir == "/tmp/dwlab-env-dir");
    const auto cfg2 = parse_config({"verify", "--out", "/tmp/elsewhere"});
    CHECK(cfg2.output_dir == "/tmp/elsewhere");
    unsetenv("DWLAB_OUT");
    const auto cfg3 = parse_config({"verify"});
    CHECK(cfg3.output_dir == "dwlab-out");
}

TEST_CASE("verify command passes and writes its residual table") {
    const std::string dir = fresh_dir("verify");
    auto cfg = parse_config({"verify", "--out", dir, "--dx", "0.01"});
    CHECK(run(cfg) == 0);
    const std::string table = slurp((fs::path(dir) / "verify_residuals.csv").string());
    CHECK(table.find("name,value,tolerance,pass") == 0);
    CHECK(table.find("mass-identity") != std::string::npos);
    CHECK(table.find("false") == std::string::npos);  // every row passed
    CHECK(fs::exists(fs::path(dir) / "verify_metadata.txt"));

    // byte-identical on re-run
    const std::string again_dir = fresh_dir("verify2");
    auto cfg2 = parse_config({"verify", "--out", again_dir, "--dx", "0.01"});
    CHECK(run(cfg2) == 0);
    CHECK(slurp((fs::path(again_dir) / "verify_residuals.csv").string()) == table);
}

TEST_CASE("solve command writes snapshots and metadata") {
    const std::string dir = fresh_dir("solve");
    auto cfg = parse_config({"solve", "--p", "2", "--eps", "0.1", "--class",
                             "B", "--dx", "0.1", "--t-end", "2", "--out", dir});
    CHECK(run(cfg) == 0);
    CHECK(fs::exists(fs::path(dir) / "snapshot_B_p2_t2.csv"));
    const std::string snap = slurp((fs::path(dir) / "snapshot_B_p2_t2.csv").string());
    CHECK(snap.find("x,u,ut") == 0);
    const std::string meta = slurp((fs::path(dir) / "solve_metadata.txt").string());
    CHECK(meta.find("command = solve") != std::string::npos);
    CHECK(meta.find("t-end = 2") != std::string::npos);
    CHECK(meta.find("version = ") != std::string::npos);
}

TEST_CASE("sweep and fit commands round-trip through the store") {
    const std::string dir = fresh_dir("sweepcmd");
    auto cfg = parse_config({"sweep", "--p", "2", "--class", "A", "--eps",
                             "0.8,0.4,0.2", "--amp", "3", "--dx", "0.1",
                             "--t-end", "40", "--no-refine", "--out", dir});
    CHECK(run(cfg) == 0);
    const std::string table_path = (fs::path(dir) / "lifespan_A_p2.csv").string();
    const std::string table = slurp(table_path);
    CHECK(table.find("eps,t0,censored,class,p") == 0);
    const auto recs = read_lifespan_table(table_path);
    REQUIRE(recs.size() == 3);
    for (const auto& r : recs) CHECK(!r.censored);
    CHECK(recs[0].t0 < recs[1].t0);
    CHECK(recs[1].t0 < recs[2].t0);

    // identical invocation reproduces the table byte for byte
    const std::string dir2 = fresh_dir("sweepcmd2");
    auto cfg2 = parse_config({"sweep", "--p", "2", "--class", "A", "--eps",
                              "0.8,0.4,0.2", "--amp", "3", "--dx", "0.1",
                              "--t-end", "40", "--no-refine", "--out", dir2});
    CHECK(run(cfg2) == 0);
    CHECK(slurp((fs::path(dir2) / "lifespan_A_p2.csv").string()) == table);

    // fit re-ingests the emitted table
    const std::string fit_dir = fresh_dir("fitcmd");
    auto fit_cfg = parse_config({"fit", "--input", dir, "--out", fit_dir});
    CHECK(run(fit_cfg) == 0);
    CHECK(fs::exists(fs::path(fit_dir) / "fit_A_p2.txt"));
    const std::string rep = slurp((fs::path(fit_dir) / "fit_A_p2.txt").string());
    CHECK(rep.find("slope = -") != std::string::npos);

    auto bad = parse_config({"fit", "--input", dir + "/nope.csv", "--out", fit_dir});
    CHECK(run(bad) == 1);
}

TEST_CASE("global-check gates on the sign hypotheses") {
    const std::string dir = fresh_dir("gc");
    auto good = parse_config({"global-check", "--eps", "-0.05", "--t-end", "5",
                              "--envelope-tol", "0.01", "--out", dir});
    CHECK(run(good) == 0);
    CHECK(fs::exists(fs::path(dir) / "apriori_report.txt"));
    const std::string rep = slurp((fs::path(dir) / "apriori_report.txt").string());
    CHECK(rep.find("hypotheses_hold = true") != std::string::npos);
    CHECK(rep.find("nonpositive = true") != std::string::npos);

    auto bad = parse_config({"global-check", "--eps", "0.05", "--t-end", "5",
                             "--out", dir});
    CHECK(run(bad) == 1);
    const std::string rep2 = slurp((fs::path(dir) / "apriori_report.txt").string());
    CHECK(rep2.find("hypotheses_hold = false") != std::string::npos);
}

TEST_CASE("error curves and snapshots use the pinned column layout") {
    const Grid pg = make_grid(1.0, 201);
    SweepConfig scfg;
    scfg.solver = SolverKind::dalembert;
    scfg.dx = 0.1;
    scfg.dt = 0.1;
    const ApproximationCurve curve =
        approximation_error_curve(2.0, 0.2, default_profile(pg), scfg);

    const std::string dir = fresh_dir("curves");
    ResultStore store(dir);
    const auto paths = emit_plot_data(store, std::vector<ApproximationCurve>{curve});
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].find("error_curve_B_p2_eps0.2.csv") != std::string::npos);
    const std::string body = slurp(paths[0]);
    CHECK(body.find("t,error") == 0);
    CHECK(body.find("0,0\n") != std::string::npos);  // exact zero at t = 0
}
