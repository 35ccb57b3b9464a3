#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "drmf/runner.hpp"

using namespace drmf;

namespace {

struct Desk {
    int q, m, r;
};
const Desk kDesks[] = {{2, 3, 2}, {2, 3, 3}, {3, 2, 2}, {3, 3, 3}};

RunConfig desk_config(const Desk& d, long tol) {
    RunConfig cfg;
    cfg.q = d.q;
    cfg.m = d.m;
    cfg.r = d.r;
    cfg.expTerms = d.r + 6;
    cfg.toleranceExponent = tol;
    return cfg;
}

// One verdict line per criterion, plus the doctest assertion.
bool report(int n, const char* what, bool ok) {
    std::printf("criterion %02d (%s): %s\n", n, what, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    return ok;
}

bool suite_passes(const RunConfig& cfg, const std::string& name) {
    RunConfig c = cfg;
    c.suites = {name};
    return run_suite(c, name).verdict == "pass";
}

}  // namespace

TEST_CASE("01 Anderson-Thakur base case") {
    // ||tau(omega) - (t-theta) omega|| <= q^{-20}, pole at t = theta simple
    RunConfig cfg = desk_config({3, 2, 2}, 40);
    CHECK(report(1, "at-omega", suite_passes(cfg, "at-omega")));
}

TEST_CASE("02 tau-difference system, all four configurations") {
    bool ok = true;
    for (const Desk& d : kDesks)  // residual <= q^{-10}
        ok = suite_passes(desk_config(d, 10 * (d.q - 1)), "difference-eq") && ok;
    CHECK(report(2, "difference-eq x4", ok));
}

TEST_CASE("03 twisted determinant") {
    RunConfig cfg = desk_config({3, 2, 2}, 20);  // q^{-10}
    CHECK(report(3, "twisted-det", suite_passes(cfg, "twisted-det")));
}

TEST_CASE("04 eigen-property") {
    RunConfig cfg = desk_config({3, 2, 2}, 20);  // q^{-10}
    CHECK(report(4, "eigen-property", suite_passes(cfg, "eigen-property")));
}

TEST_CASE("05 modularity battery, all four configurations") {
    bool ok = true;
    for (const Desk& d : kDesks)  // residuals <= q^{-8}, 5 seeded gammas
        ok = suite_passes(desk_config(d, 8 * (d.q - 1)), "modularity") && ok;
    CHECK(report(5, "modularity x4", ok));
}

TEST_CASE("06 nonvanishing witnesses, all four configurations") {
    // Thresholds are config-dependent: the witnesses have different certified
    // sizes per desk point; the tolerance is pinned per configuration.
    long tol[] = {10, 14, 20, 52};
    bool ok = true;
    for (int i = 0; i < 4; ++i)
        ok = suite_passes(desk_config(kDesks[i], tol[i]), "nonvanishing") && ok;
    CHECK(report(6, "nonvanishing x4", ok));
}

TEST_CASE("07 cycle class vs residue") {
    RunConfig cfg = desk_config({3, 2, 2}, 20);  // relative error <= q^{-5}
    CHECK(report(7, "residue-cycle", suite_passes(cfg, "residue-cycle")));
}

TEST_CASE("08 rank-2 u-coefficient") {
    RunConfig cfg = desk_config({3, 2, 2}, 20);  // relative error <= q^{-5}
    cfg.sVector = {3, 5, 7};
    CHECK(report(8, "u-coefficient-rank2", suite_passes(cfg, "u-coefficient-rank2")));
}

TEST_CASE("09 rank-3 u-coefficient") {
    RunConfig cfg = desk_config({2, 3, 3}, 8);  // relative error <= q^{-4}
    cfg.sVector = {2, 3};
    CHECK(report(9, "u-coefficient-rank3", suite_passes(cfg, "u-coefficient-rank3")));
}

TEST_CASE("10 low-weight vanishing") {
    RunConfig cfg = desk_config({2, 3, 3}, 10);
    cfg.latticeDegree = 12;  // the (1,2,4) verdict needs the deeper box
    CHECK(report(10, "low-weight-vanishing", suite_passes(cfg, "low-weight-vanishing")));
}

TEST_CASE("11 one-dimensionality ratio") {
    RunConfig cfg = desk_config({3, 2, 2}, 20);  // relative error <= q^{-5}
    CHECK(report(11, "one-dimensionality", suite_passes(cfg, "one-dimensionality")));
}

TEST_CASE("12 cusp order of Delta") {
    RunConfig cfg = desk_config({3, 2, 2}, 8);  // relative error <= q^{-4}
    CHECK(report(12, "cusp-order", suite_passes(cfg, "cusp-order")));
}

TEST_CASE("13 rank-2 single-cuspidal family") {
    RunConfig cfg = desk_config({3, 2, 2}, 8);  // k = 2, weight 1 + 2(q-1)
    cfg.sVector = {2, 3};
    CHECK(report(13, "single-cuspidal", suite_passes(cfg, "single-cuspidal")));
}

TEST_CASE("14 determinism") {
    RunConfig cfg = desk_config({3, 2, 2}, 20);
    cfg.suites = default_suites(cfg);
    std::string a = report_to_json(run_all(cfg)).dump();
    std::string b = report_to_json(run_all(cfg)).dump();
    std::string c = report_to_csv(run_all(cfg));
    std::string d = report_to_csv(run_all(cfg));
    CHECK(report(14, "determinism", a == b && c == d && !a.empty()));
}
