#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "drmf/runner.hpp"

namespace {

std::vector<int> parse_s(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw drmf::usage_error("empty entry in --s");
        out.push_back(std::stoi(item));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification runner for higher-rank Drinfeld modular forms"};

    std::string configPath, sArg, format = "json", goldenPath;
    std::vector<std::string> suiteArgs;
    drmf::RunConfig cfg;
    drmf::RunConfig flags;  // staging area so we can tell set flags apart

    app.add_option("--config", configPath, "JSON config file (flags override it)");
    auto* oq = app.add_option("--q", flags.q, "base field size q");
    auto* om = app.add_option("--m", flags.m, "residue extension degree m");
    auto* orr = app.add_option("--r", flags.r, "rank r");
    auto* oprec = app.add_option("--prec", flags.precisionDigits, "lambda-adic digits");
    auto* otdeg = app.add_option("--tdeg", flags.tDegree, "t-degree truncation");
    auto* olat = app.add_option("--latdeg", flags.latticeDegree, "lattice box degree");
    auto* oexp = app.add_option("--expterms", flags.expTerms, "exponential coefficient count");
    auto* os = app.add_option("--s", sArg, "family exponents, comma separated (e.g. \"2,4\")");
    auto* oseed = app.add_option("--seed", flags.seed, "seed for the random test matrices");
    auto* osuite = app.add_option("--suite", suiteArgs, "suite to run (repeatable)");
    auto* oout = app.add_option("--out", flags.outputPath, "report output path (default stdout)");
    app.add_option("--format", format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    auto* otol = app.add_option("--tol", flags.toleranceExponent,
                                "tolerance exponent T in lambda units");
    auto* otim = app.add_flag("--timings", flags.timings,
                              "record real wall times (breaks byte determinism)");
    app.add_option("--golden", goldenPath, "golden JSON report to compare against");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!configPath.empty()) {
            std::ifstream in(configPath);
            if (!in) throw drmf::usage_error("cannot read config file: " + configPath);
            drmf::ojson j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw drmf::usage_error(std::string("bad config JSON: ") + e.what());
            }
            cfg = drmf::config_from_json(j);
        }
        if (oq->count()) cfg.q = flags.q;
        if (om->count()) cfg.m = flags.m;
        if (orr->count()) cfg.r = flags.r;
        if (oprec->count()) cfg.precisionDigits = flags.precisionDigits;
        if (otdeg->count()) cfg.tDegree = flags.tDegree;
        if (olat->count()) cfg.latticeDegree = flags.latticeDegree;
        if (oexp->count()) cfg.expTerms = flags.expTerms;
        if (os->count()) cfg.sVector = parse_s(sArg);
        if (oseed->count()) cfg.seed = flags.seed;
        if (osuite->count()) cfg.suites = suiteArgs;
        if (oout->count()) cfg.outputPath = flags.outputPath;
        if (otol->count()) cfg.toleranceExponent = flags.toleranceExponent;
        if (otim->count()) cfg.timings = flags.timings;

        if (cfg.suites.empty()) cfg.suites = drmf::default_suites(cfg);
        drmf::validate_config(cfg);

        drmf::VerificationReport rep = drmf::run_all(cfg);
        drmf::ojson j = drmf::report_to_json(rep);
        std::string body = format == "csv" ? drmf::report_to_csv(rep) : j.dump(2) + "\n";

        if (cfg.outputPath.empty()) {
            std::cout << body;
        } else {
            std::ofstream out(cfg.outputPath, std::ios::binary);
            if (!out) throw drmf::usage_error("cannot write output file: " + cfg.outputPath);
            out << body;
        }

        int code = drmf::exit_code_for(rep);
        if (!goldenPath.empty()) {
            std::ifstream gin(goldenPath);
            if (!gin) throw drmf::usage_error("cannot read golden file: " + goldenPath);
            drmf::ojson golden;
            gin >> golden;
            auto drift = drmf::compare_reports(j, golden);
            for (const auto& d : drift) std::cerr << "drift: " << d << "\n";
            if (!drift.empty() && code == 0) code = 1;
        }
        for (const auto& s : rep.suites)
            std::cerr << s.suiteName << ": " << s.verdict << "\n";
        return code;
    } catch (const drmf::usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const drmf::precision_error& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
