// Command-line front end: formula generation, verification, pi digits,
// convergence-measure reporting, and series benchmarks.
//
// Exit codes: 0 success/valid, 1 invalid result, 2 usage/parse error,
// 3 precision failure (uncertifiable floor, pole proximity, non-convergence).

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "machin/formula.hpp"
#include "machin/formula_json.hpp"
#include "machin/quad_pi.hpp"
#include "machin/radicals.hpp"
#include "machin/u1_solver.hpp"

using namespace machin;
using ordered_json = nlohmann::ordered_json;

namespace {

struct CliConfig {
    long precision = 50;
    long guard = 10;
    std::string format = "text";
    std::string out_path;

    PrecisionContext ctx() const { return PrecisionContext(precision, guard); }
    bool json() const { return format == "json"; }

    // Primary output goes to --out when given, stdout otherwise.
    void emit(const std::string& text) const {
        if (out_path.empty()) {
            std::cout << text << "\n";
            return;
        }
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + out_path + "' for writing");
        out << text << "\n";
    }
};

Series parse_series(const std::string& name) {
    if (name == "euler") return Series::euler;
    if (name == "maclaurin") return Series::maclaurin;
    return Series::gh;
}

// The u2 materialization cap: beyond k = 24 the exact companion has ~10^7
// digits and growing; require an explicit override.
void check_formula_cap(long k, bool force) {
    if (k < 2) throw ParseError("k must be >= 2 for a two-term formula");
    if (k > 24 && !force)
        throw ParseError("k = " + std::to_string(k) +
                         " exceeds the companion materialization cap (24); pass --force to override");
}

TwoTermFormula build_two_term(long k, bool force, const PrecisionContext& ctx) {
    BigRational u1(u1_surdless(k, ctx));
    return TwoTermFormula{k, u1.num(), u2_exact(u1, k, force)};
}

MachinFormula builtin_formula(const std::string& name) {
    if (name == "machin") return machin_formula();
    if (name == "kanada1") return kanada_formula_1();
    return kanada_formula_2();
}

void cmd_u1(const CliConfig& cfg, long k, const std::string& method, int& rc) {
    std::optional<BigInt> iter, radical;
    if (method != "radical") iter = u1_surdless(k, cfg.ctx());
    if (method != "iter") radical = u1_radical(k, cfg.ctx());
    bool match = !iter || !radical || *iter == *radical;
    if (!match) rc = 1;

    if (cfg.json()) {
        ordered_json j;
        j["k"] = k;
        j["method"] = method;
        if (method == "both") {
            j["iter"] = iter->get_str();
            j["radical"] = radical->get_str();
            j["match"] = match;
        } else {
            j["value"] = (iter ? *iter : *radical).get_str();
        }
        cfg.emit(j.dump());
        return;
    }
    if (method == "both")
        cfg.emit(iter->get_str() + " " + radical->get_str() + (match ? " MATCH" : " MISMATCH"));
    else
        cfg.emit((iter ? *iter : *radical).get_str());
}

void cmd_formula(const CliConfig& cfg, long k, bool force) {
    check_formula_cap(k, force);
    TwoTermFormula f = build_two_term(k, force, cfg.ctx());
    if (!cfg.out_path.empty())
        write_two_term_file(f, cfg.out_path); // sidecar-aware
    else
        cfg.emit(two_term_json(f));
}

void cmd_verify(const CliConfig& cfg, const std::string& file, const std::string& builtin,
                int& rc) {
    std::string source;
    MachinFormula f = [&]() {
        if (!file.empty()) {
            source = "file:" + file;
            return as_machin(load_formula_file(file));
        }
        source = "builtin:" + builtin;
        return builtin_formula(builtin);
    }();
    bool valid = verify_formula(f);
    if (!valid) rc = 1;
    if (cfg.json()) {
        ordered_json j;
        j["source"] = source;
        j["valid"] = valid;
        cfg.emit(j.dump());
    } else {
        cfg.emit(valid ? "VALID" : "INVALID");
    }
}

void cmd_pi_series(const CliConfig& cfg, long digits, long k, const std::string& file,
                   const std::string& series) {
    std::string value;
    if (!file.empty()) {
        LoadedFormula loaded = load_formula_file(file);
        value = loaded.two_term ? compute_pi(*loaded.two_term, digits, parse_series(series))
                                : compute_pi(*loaded.generic, digits, parse_series(series));
    } else {
        check_formula_cap(k, /*force=*/false);
        value = compute_pi(build_two_term(k, false, cfg.ctx()), digits, parse_series(series));
    }
    if (cfg.json()) {
        ordered_json j;
        j["digits"] = digits;
        j["series"] = series;
        if (file.empty()) j["k"] = k;
        else j["formula"] = file;
        j["value"] = value;
        cfg.emit(j.dump());
    } else {
        cfg.emit(value);
    }
}

void cmd_pi_quad(const CliConfig& cfg, long digits, long k, long iters) {
    PrecisionContext base = cfg.ctx();
    std::vector<HPReal> seq = quad_sequence(k, iters, base);

    long top = std::max((1L << (iters + 1)) + 10, base.work_digits());
    HPReal ref = pi_hp(PrecisionContext(top + 50, base.guard));
    std::vector<long> counts;
    counts.reserve(seq.size());
    for (const HPReal& est : seq) counts.push_back(correct_digits(est, ref));

    if (counts.back() < digits)
        throw PrecisionError("pi --quad: " + std::to_string(iters) + " iteration(s) certify only " +
                             std::to_string(counts.back()) + " digits, " +
                             std::to_string(digits) + " requested; increase --iters");
    std::string value = seq.back().digit_string(digits);

    if (cfg.json()) {
        ordered_json j;
        j["k"] = k;
        j["iters"] = iters;
        j["digits"] = digits;
        j["value"] = value;
        ordered_json table = ordered_json::array();
        for (size_t i = 0; i < seq.size(); ++i)
            table.push_back(ordered_json{{"n", i + 1},
                                         {"estimate", seq[i].sci(25)},
                                         {"correct_digits", counts[i]}});
        j["table"] = table;
        cfg.emit(j.dump());
        return;
    }
    std::ostringstream os;
    os << value << "\n";
    os << " n  estimate                         correct_digits\n";
    for (size_t i = 0; i < seq.size(); ++i) {
        char row[96];
        std::snprintf(row, sizeof(row), "%2zu  %s  %ld", i + 1, seq[i].sci(25).c_str(),
                      counts[i]);
        os << row << "\n";
    }
    std::string text = std::move(os).str();
    text.pop_back(); // emit() appends the final newline
    cfg.emit(text);
}

void cmd_lehmer(const CliConfig& cfg, const std::string& file, long k, bool estimate) {
    HPReal mu = [&]() {
        if (!file.empty()) return lehmer_measure(as_machin(load_formula_file(file)), cfg.ctx());
        return lehmer_estimate_two_term(k, u1_surdless(k, cfg.ctx()), cfg.ctx());
    }();
    std::string printed = mu.fixed(6);
    if (cfg.json()) {
        ordered_json j;
        if (!file.empty()) j["formula"] = file;
        else j["k"] = k, j["estimate"] = estimate;
        j["measure"] = printed;
        cfg.emit(j.dump());
    } else {
        cfg.emit(printed);
    }
}

struct BenchCell {
    std::string series;
    long k;
    long millis;        // -1 on failure
    std::string digits; // computed digit string, for cross-series comparison
    std::string error;
};

void cmd_bench(const CliConfig& cfg, const std::string& series, const std::string& range,
               long digits, bool csv, int& rc) {
    long lo = 0, hi = 0;
    char tail = 0;
    if (std::sscanf(range.c_str(), "%ld..%ld%c", &lo, &hi, &tail) != 2 || lo > hi)
        throw ParseError("bench: --k-range must be 'a..b' with a <= b, got '" + range + "'");
    check_formula_cap(lo, false);
    check_formula_cap(hi, false);

    std::vector<std::string> series_list;
    if (series == "all") series_list = {"euler", "maclaurin", "gh"};
    else series_list = {series};

    std::vector<BenchCell> cells;
    for (long k = lo; k <= hi; ++k) {
        std::optional<TwoTermFormula> f;
        std::string build_error;
        try {
            f = build_two_term(k, false, cfg.ctx());
        } catch (const Error& e) {
            build_error = e.what();
        }
        for (const std::string& s : series_list) {
            BenchCell cell{s, k, -1, "", ""};
            if (!f) {
                cell.error = build_error;
            } else {
                try {
                    auto t0 = std::chrono::steady_clock::now();
                    cell.digits = compute_pi(*f, digits, parse_series(s));
                    cell.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                                      std::chrono::steady_clock::now() - t0)
                                      .count();
                } catch (const Error& e) {
                    cell.error = e.what();
                }
            }
            cells.push_back(std::move(cell));
        }
        // Cross-series digit agreement is part of the result, not a timing.
        for (size_t i = cells.size() - series_list.size() + 1; i < cells.size(); ++i) {
            if (!cells[i].error.empty() || !cells[i - 1].error.empty()) continue;
            if (cells[i].digits != cells[i - 1].digits) {
                std::fprintf(stderr, "bench: digit outputs differ between %s and %s at k=%ld\n",
                             cells[i - 1].series.c_str(), cells[i].series.c_str(), k);
                rc = 1;
            }
        }
    }
    for (const BenchCell& c : cells)
        if (!c.error.empty())
            std::fprintf(stderr, "bench: %s k=%ld failed: %s\n", c.series.c_str(), c.k,
                         c.error.c_str());

    std::ostringstream os;
    if (cfg.json()) {
        ordered_json rows = ordered_json::array();
        for (const BenchCell& c : cells) {
            ordered_json row{{"series", c.series}, {"k", c.k}, {"digits", digits},
                             {"millis", c.millis}};
            if (!c.error.empty()) row["error"] = c.error;
            rows.push_back(std::move(row));
        }
        os << rows.dump();
    } else if (csv) {
        os << "series,k,digits,millis";
        for (const BenchCell& c : cells)
            os << "\n" << c.series << "," << c.k << "," << digits << "," << c.millis;
    } else {
        os << "series      k  digits  millis";
        for (const BenchCell& c : cells) {
            char row[64];
            std::snprintf(row, sizeof(row), "\n%-9s %3ld  %6ld  %6ld", c.series.c_str(), c.k,
                          digits, c.millis);
            os << row;
        }
    }
    cfg.emit(std::move(os).str());
}

} // namespace

int main(int argc, char** argv) {
    CliConfig cfg;
    int rc = 0;

    CLI::App app{"Two-term Machin-like formulas: construction, verification, pi digits"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand name
    app.add_option("--precision", cfg.precision, "Decimal digits carried by approximate steps")
        ->envname("MACHIN_PRECISION")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--guard", cfg.guard, "Extra guard digits on top of --precision")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--out", cfg.out_path, "Write primary output to this file instead of stdout");

    // u1 ------------------------------------------------------------------
    long u1_k = 0;
    std::string u1_method = "both";
    CLI::App* u1 = app.add_subcommand("u1", "Large cotangent integer by one or both routes");
    u1->add_option("--k", u1_k, "Formula index")->required();
    u1->add_option("--method", u1_method, "iter (surd-free chain), radical, or both")
        ->check(CLI::IsMember({"iter", "radical", "both"}))
        ->capture_default_str();
    u1->callback([&] { cmd_u1(cfg, u1_k, u1_method, rc); });

    // formula --------------------------------------------------------------
    long formula_k = 0;
    bool formula_force = false;
    CLI::App* formula =
        app.add_subcommand("formula", "Emit the exact two-term formula for an index k as JSON");
    formula->add_option("--k", formula_k, "Formula index (2..24 without --force)")->required();
    formula->add_flag("--force", formula_force, "Bypass the k <= 24 materialization cap");
    formula->callback([&] { cmd_formula(cfg, formula_k, formula_force); });

    // verify ----------------------------------------------------------------
    std::string verify_file, verify_builtin;
    CLI::App* verify = app.add_subcommand("verify", "Exactly verify a formula file or a builtin");
    verify->add_option("--formula", verify_file, "Formula JSON file");
    verify->add_option("--builtin", verify_builtin, "machin, kanada1, or kanada2")
        ->check(CLI::IsMember({"machin", "kanada1", "kanada2"}));
    verify->callback([&] {
        if (verify_file.empty() == verify_builtin.empty())
            throw ParseError("verify: exactly one of --formula or --builtin is required");
        cmd_verify(cfg, verify_file, verify_builtin, rc);
    });

    // pi ---------------------------------------------------------------------
    long pi_digits = 0, pi_k = 0, pi_iters = 0;
    std::string pi_file, pi_series = "euler";
    bool pi_quad = false;
    CLI::App* pi = app.add_subcommand("pi", "Compute pi digits from a formula or the quadratic iteration");
    pi->add_option("--digits", pi_digits, "Decimal digits after '3.'")
        ->required()
        ->check(CLI::PositiveNumber);
    pi->add_option("--k", pi_k, "Two-term formula index");
    pi->add_option("--formula", pi_file, "Formula JSON file");
    pi->add_option("--series", pi_series, "euler, maclaurin, or gh")
        ->check(CLI::IsMember({"euler", "maclaurin", "gh"}))
        ->capture_default_str();
    pi->add_flag("--quad", pi_quad, "Quadratically convergent iteration instead of a series");
    pi->add_option("--iters", pi_iters, "Iteration count for --quad")->check(CLI::PositiveNumber);
    pi->callback([&] {
        if (pi_quad) {
            if (pi->count("--k") == 0 || pi->count("--iters") == 0)
                throw ParseError("pi --quad: --k and --iters are required");
            if (pi->count("--formula") || pi->count("--series"))
                throw ParseError("pi --quad: --formula/--series do not apply");
            cmd_pi_quad(cfg, pi_digits, pi_k, pi_iters);
            return;
        }
        if ((pi->count("--k") == 0) == (pi->count("--formula") == 0))
            throw ParseError("pi: exactly one of --k or --formula is required");
        cmd_pi_series(cfg, pi_digits, pi_k, pi_file, pi_series);
    });

    // lehmer -------------------------------------------------------------------
    std::string lehmer_file;
    long lehmer_k = 0;
    bool lehmer_estimate = false;
    CLI::App* lehmer = app.add_subcommand("lehmer", "Convergence quality measure of a formula");
    lehmer->add_option("--formula", lehmer_file, "Formula JSON file");
    lehmer->add_option("--k", lehmer_k, "Two-term formula index");
    lehmer->add_flag("--estimate", lehmer_estimate,
                     "Estimate the two-term measure from k and its cotangent integer");
    lehmer->callback([&] {
        bool by_k = lehmer->count("--k") > 0;
        if (lehmer_file.empty() == !by_k)
            throw ParseError("lehmer: exactly one of --formula or --k --estimate is required");
        if (by_k && !lehmer_estimate)
            throw ParseError("lehmer: --k requires --estimate (the exact companion is not materialized)");
        cmd_lehmer(cfg, lehmer_file, lehmer_k, lehmer_estimate);
    });

    // bench -----------------------------------------------------------------------
    std::string bench_series = "all", bench_range;
    long bench_digits = 100;
    bool bench_csv = false;
    CLI::App* bench = app.add_subcommand("bench", "Time the arctangent series across formulas");
    bench->add_option("--series", bench_series, "euler, maclaurin, gh, or all")
        ->check(CLI::IsMember({"euler", "maclaurin", "gh", "all"}))
        ->capture_default_str();
    bench->add_option("--k-range", bench_range, "Inclusive index range 'a..b'")->required();
    bench->add_option("--digits", bench_digits, "Digit target per cell")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench->add_flag("--csv", bench_csv, "CSV output (header: series,k,digits,millis)");
    bench->callback([&] { cmd_bench(cfg, bench_series, bench_range, bench_digits, bench_csv, rc); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const PrecisionError& e) { // includes floor ambiguity, pole proximity
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const ConvergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const Error& e) { // domain and consistency violations
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return rc;
}
