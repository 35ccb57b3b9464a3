#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "drmf/runner.hpp"

using namespace drmf;

TEST_CASE("config round-trips through JSON bit-exactly") {
    RunConfig cfg;
    cfg.q = 2;
    cfg.m = 3;
    cfg.r = 3;
    cfg.precisionDigits = 48;
    cfg.tDegree = 10;
    cfg.latticeDegree = 6;
    cfg.expTerms = 9;
    cfg.sVector = {2, 4, 6};
    cfg.seed = 42;
    cfg.suites = {"at-omega", "difference-eq"};
    cfg.outputPath = "/tmp/report.json";
    cfg.toleranceExponent = 12;
    ojson j = config_to_json(cfg);
    RunConfig back = config_from_json(j);
    CHECK(config_to_json(back) == j);
    CHECK(config_to_json(back).dump() == j.dump());
}

TEST_CASE("config validation") {
    RunConfig cfg;  // defaults: q=3, m=2, r=2
    cfg.suites = {"difference-eq"};
    CHECK_NOTHROW(validate_config(cfg));

    RunConfig bad = cfg;
    bad.suites.clear();
    CHECK_THROWS_AS(validate_config(bad), usage_error);

    bad = cfg;
    bad.suites = {"no-such-suite"};
    CHECK_THROWS_AS(validate_config(bad), usage_error);

    bad = cfg;
    bad.r = 5;  // m < r
    CHECK_THROWS_AS(validate_config(bad), usage_error);

    bad = cfg;
    bad.q = 6;  // not a prime power
    CHECK_THROWS_AS(validate_config(bad), usage_error);

    bad = cfg;
    bad.sVector = {3, 2};
    CHECK_THROWS_AS(validate_config(bad), usage_error);

    bad = cfg;
    bad.suites = {"low-weight-vanishing"};  // requires (q, r) = (2, 3)
    CHECK_THROWS_AS(validate_config(bad), usage_error);

    bad = cfg;
    bad.suites = {"one-dimensionality"};
    bad.sVector = {2, 3};  // needs three family points
    CHECK_THROWS_AS(validate_config(bad), usage_error);
}

TEST_CASE("difference-eq suite passes and reports residuals") {
    RunConfig cfg;
    cfg.tDegree = 8;
    cfg.toleranceExponent = 20;
    cfg.suites = {"difference-eq"};
    SuiteRecord rec = run_suite(cfg, "difference-eq");
    CHECK(rec.verdict == "pass");
    CHECK(rec.residualNorms.size() == 4);  // r^2 entries
    CHECK(rec.wallTimeMs == 0);
}

TEST_CASE("reports are byte-deterministic") {
    RunConfig cfg;
    cfg.tDegree = 8;
    cfg.suites = {"at-omega", "difference-eq", "twisted-det"};
    cfg.toleranceExponent = 20;
    auto a = report_to_json(run_all(cfg));
    auto b = report_to_json(run_all(cfg));
    CHECK(a.dump() == b.dump());
}

TEST_CASE("CSV has one row per check") {
    RunConfig cfg;
    cfg.tDegree = 8;
    cfg.toleranceExponent = 20;
    cfg.suites = {"at-omega", "difference-eq"};
    VerificationReport rep = run_all(cfg);
    std::size_t checks = 0;
    for (const auto& s : rep.suites) checks += s.residualNorms.size();
    std::string csv = report_to_csv(rep);
    std::size_t rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    CHECK(rows == checks + 1);  // header line
}

TEST_CASE("golden comparison flags residual drift") {
    RunConfig cfg;
    cfg.tDegree = 8;
    cfg.toleranceExponent = 20;
    cfg.suites = {"at-omega"};
    ojson a = report_to_json(run_all(cfg));
    ojson b = a;
    CHECK(compare_reports(a, b).empty());
    b["suites"][0]["residualNorms"][0] = {{"num", 1}, {"den", 2}};
    auto drift = compare_reports(a, b);
    REQUIRE(drift.size() == 1);
    CHECK(drift[0].find("at-omega") != std::string::npos);
}

TEST_CASE("exit codes") {
    VerificationReport rep;
    SuiteRecord s;
    s.verdict = "pass";
    rep.suites.push_back(s);
    CHECK(exit_code_for(rep) == 0);
    s.verdict = "indeterminate";
    rep.suites.push_back(s);
    CHECK(exit_code_for(rep) == 3);
    s.verdict = "fail";
    rep.suites.push_back(s);
    CHECK(exit_code_for(rep) == 1);
}

TEST_CASE("default suites are applicable at every desk config") {
    for (auto [q, m, r] : {std::tuple{2, 3, 2}, {2, 3, 3}, {3, 2, 2}, {3, 3, 3}}) {
        RunConfig cfg;
        cfg.q = q;
        cfg.m = m;
        cfg.r = r;
        cfg.suites = default_suites(cfg);
        CHECK_NOTHROW(validate_config(cfg));
    }
}
