#include <catch2/catch.hpp>

#include <cstdio>
#include <fstream>

#include "exlab/cli.hpp"

using namespace exlab;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("exlab_test_" + name) { std::remove(path.c_str()); }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("minimal config gets defaults") {
    ExperimentConfig c = parse_config("curve = \"11a3\"\nexperiment = joint\nx = 1000\nell = [3]\n");
    CHECK(c.curve_label == "11a3");
    CHECK(c.experiment == "joint");
    CHECK(c.x == 1000);
    CHECK(c.ell == std::vector<u64>{3});
    CHECK(c.omega == 1.0);
    CHECK(c.bins == 40);
    CHECK(c.threads == 0); // resolved to hardware parallelism at run time
    CHECK(effective_threads(c) >= 1);
    validate_config(c);
}

TEST_CASE("config accepts sections, comments, lists, and fractions") {
    ExperimentConfig c = parse_config(
        "[run]\n"
        "experiment = balog   # with a comment\n"
        "x = 1e6\n"
        "; full-line comment\n"
        "alpha = 2/5\n"
        "theta = 1/2\n"
        "ell = 3, 5, 7\n");
    CHECK(c.x == 1000000);
    CHECK(c.alpha == Approx(0.4));
    REQUIRE(c.alpha_rational.has_value());
    CHECK(c.alpha_rational->first == 2);
    CHECK(c.alpha_rational->second == 5);
    CHECK(c.theta == Approx(0.5));
    CHECK(c.ell == std::vector<u64>{3, 5, 7});
}

TEST_CASE("config diagnostics name the offending field") {
    ExperimentConfig c;
    c.experiment = "joint";
    c.curve_label = "11a3";
    c.delta1 = 0.5;
    c.delta2 = 0.5;
    CHECK_THROWS_WITH(validate_config(c), Catch::Contains("empty window"));
    c.delta2 = 0.6;
    c.ell = {4};
    CHECK_THROWS_WITH(validate_config(c), Catch::Contains("odd prime"));
    c.ell = {3};
    c.experiment = "nonesuch";
    CHECK_THROWS_WITH(validate_config(c), Catch::Contains("experiment"));
    CHECK_THROWS_WITH(parse_config("bogus_key = 1\n"), Catch::Contains("unknown key"));
    CHECK_THROWS_WITH(parse_config("x = twelve\n"), Catch::Contains("x"));
}

TEST_CASE("curve resolution") {
    CHECK(resolve_curve("11a3").label == "11a3");
    CurveQ custom = resolve_curve("0,-1,1,0,0");
    CHECK(custom.bad_primes == std::vector<u64>{11});
    CHECK_THROWS_WITH(resolve_curve("0,0,0,0,0"), Catch::Contains("singular model"));
    CHECK_THROWS_WITH(resolve_curve(""), Catch::Contains("curve"));
    CHECK_THROWS_WITH(resolve_curve("1,2,3"), Catch::Contains("coefficients"));
}

TEST_CASE("cache round trip") {
    TempFile f("cache.bin");
    const u64 h = curve_label_hash("11a3");
    cache_write(f.path, {{h, 2, -2}, {h, 3, -1}, {curve_label_hash("other"), 5, 1}});
    CacheReadStats stats;
    auto got = cache_read(f.path, h, &stats);
    REQUIRE(got.size() == 2);
    CHECK(got[0].p == 2);
    CHECK(got[0].ap == -2);
    CHECK(got[1].p == 3);
    CHECK(got[1].ap == -1);
    CHECK(stats.total_records == 3);
    CHECK(stats.matched == 2);
    // append-only: a second write extends the file
    cache_write(f.path, {{h, 5, 1}});
    CHECK(cache_read(f.path, h).size() == 3);
}

TEST_CASE("cache rejects Hasse-violating rows and tolerates a torn tail") {
    TempFile f("cache_bad.bin");
    const u64 h = curve_label_hash("11a3");
    cache_write(f.path, {{h, 2, 9}, {h, 13, 4}}); // 81 > 8: first row invalid
    CacheReadStats stats;
    auto got = cache_read(f.path, h, &stats);
    REQUIRE(got.size() == 1);
    CHECK(got[0].p == 13);
    CHECK(stats.rejected_hasse == 1);
    // torn tail: append half a record
    {
        std::ofstream out(f.path, std::ios::binary | std::ios::app);
        out.write("partialrec", 10);
    }
    auto again = cache_read(f.path, h, &stats);
    CHECK(again.size() == 1);
    CHECK(stats.short_tail_bytes == 10);
}

TEST_CASE("empty or missing cache file reads as empty") {
    CHECK(cache_read("definitely_not_here.bin", 123).empty());
    TempFile f("cache_empty.bin");
    std::ofstream(f.path, std::ios::binary).close();
    CHECK(cache_read(f.path, 123).empty());
}

TEST_CASE("count report JSON round trip preserves full precision") {
    Session s(2);
    CountReport r = joint_count(*find_builtin_curve("11a3"), 3, 10, 1.0, s);
    r.extras["check"] = 0.1234567890123456789;
    json j = to_json(r);
    CountReport back = count_report_from_json(json::parse(j.dump()));
    CHECK(back.statement_id == r.statement_id);
    CHECK(back.observed == r.observed);
    CHECK(back.main_term == r.main_term);
    CHECK(back.envelope == r.envelope);
    CHECK(back.sigma_stat == r.sigma_stat);
    CHECK(back.z == r.z);
    CHECK(back.extras.at("check") == r.extras.at("check"));
    CHECK(back.window_lo == r.window_lo);
    CHECK(back.bad_primes_in_range == r.bad_primes_in_range);
}

TEST_CASE("run(joint) writes the expected JSON report") {
    TempFile out("joint.json");
    ExperimentConfig cfg;
    cfg.experiment = "joint";
    cfg.curve_label = "11a3";
    cfg.x = 10;
    cfg.ell = {3};
    cfg.out_path = out.path;
    RunResult res = run(cfg);
    CHECK(res.exit_code == 0);
    std::ifstream in(out.path);
    REQUIRE(in.good());
    json j = json::parse(in);
    CHECK(j["experiment"] == "joint");
    CHECK(j["reports"][0]["observed"] == 1);
    CHECK(j["reports"][0]["main_term"] == Approx(1.0));
    CHECK(j["curve"]["label"] == "11a3");
}

TEST_CASE("run(landau) reproduces the worked count") {
    ExperimentConfig cfg;
    cfg.experiment = "landau";
    cfg.alpha = 1.0;
    cfg.theta = 0.5;
    cfg.lambda = 0.5;
    cfg.x = 1000;
    RunResult res = run(cfg);
    CHECK(res.exit_code == 0);
    CHECK(res.report["report"]["observed"] == 10);
}

TEST_CASE("run(landau) surfaces an exact boundary tie as uncertain") {
    // with the exact rational alpha = 1/5 and theta = 0, {alpha} equals 5^-1
    // at p = 5 and the run must abort rather than guess (the CLI maps this to
    // exit code 2)
    ExperimentConfig cfg;
    cfg.experiment = "landau";
    cfg.alpha = 0.2;
    cfg.alpha_rational = std::make_pair<i64, i64>(1, 5);
    cfg.theta = 0.0;
    cfg.lambda = 1.0;
    cfg.x = 5;
    CHECK_THROWS_AS(run(cfg), uncertain_error);
    // the dyadic double 0.2 is strictly above 1/5, so the same run without
    // the exact rational is decidable
    cfg.alpha_rational.reset();
    RunResult res = run(cfg);
    CHECK(res.exit_code == 0);
    CHECK(res.report["report"]["observed"] == 2); // p = 2, 3; p = 5 decided out
}

TEST_CASE("run uses and extends the trace cache") {
    TempFile cache("trace.bin");
    ExperimentConfig cfg;
    cfg.experiment = "ap";
    cfg.curve_label = "11a3";
    cfg.x = 500;
    cfg.cache_path = cache.path;
    RunResult first = run(cfg);
    CHECK(first.report["cache"]["loaded"] == 0);
    CHECK(first.report["likely_cm_heuristic"] == false);
    auto appended = first.report["cache"]["appended"].get<std::size_t>();
    CHECK(appended == prime_count(500) - 1); // all good primes, 11 excluded
    RunResult second = run(cfg);
    CHECK(second.report["cache"]["loaded"] == appended);
    CHECK(second.report["cache"]["appended"] == 0);
}

TEST_CASE("run(extremal) rejects a singular model with exit semantics") {
    ExperimentConfig cfg;
    cfg.experiment = "extremal";
    cfg.curve_label = "0,0,0,0,0";
    cfg.x = 100;
    CHECK_THROWS_WITH(run(cfg), Catch::Contains("singular model"));
}

TEST_CASE("per-prime CSV rows") {
    TempFile csv("rows.csv");
    ExperimentConfig cfg;
    cfg.experiment = "joint";
    cfg.curve_label = "11a3";
    cfg.x = 10;
    cfg.ell = {3};
    cfg.alpha = 2.0;
    cfg.theta = 0.5;
    cfg.csv_path = csv.path;
    RunResult res = run(cfg);
    REQUIRE(res.exit_code == 0);
    std::ifstream in(csv.path);
    std::string header, line;
    REQUIRE(std::getline(in, header));
    CHECK(header == "p,ap,floor_two_sqrt,ap_mod_ell,bridge_mod_ell,frac_value,flags");
    int rows = 0, bad = 0, matches = 0;
    while (std::getline(in, line)) {
        ++rows;
        if (line.find("bad") != std::string::npos) ++bad;
        if (line.find("match") != std::string::npos) ++matches;
    }
    CHECK(rows == 4); // 11, 13, 17, 19
    CHECK(bad == 1);  // p = 11
    CHECK(matches == 1);
}

TEST_CASE("envelope subcommand fills torsion-field defaults from ell") {
    ExperimentConfig cfg;
    cfg.experiment = "envelope";
    cfg.theorem = "Thm1.3";
    cfg.x = 1000000;
    cfg.ell = {3};
    RunResult res = run(cfg);
    CHECK(res.exit_code == 0);
    const json& rep = res.report["report"];
    CHECK(rep["theorem"] == "Thm1.3");
    CHECK(rep["value"].get<double>() > 0.0);
    REQUIRE(rep["side_conditions"].size() == 1);
    CHECK(rep["side_conditions"][0].contains("satisfied"));

    cfg.theorem = "NoSuchThm";
    CHECK_THROWS_WITH(run(cfg), Catch::Contains("unknown id"));
}

TEST_CASE("verify subcommand runs the oracle suite") {
    ExperimentConfig cfg;
    cfg.experiment = "verify";
    RunResult res = run(cfg);
    CHECK(res.exit_code == 0);
    CHECK(res.report["failures"] == 0);
}
