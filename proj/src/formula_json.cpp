#include "machin/formula_json.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace machin {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = fnv1a64(bytes);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

namespace {

long decimal_digits(const BigInt& z) {
    return static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 10));
}

std::string u2_digest(const BigRational& u2) {
    return "fnv1a64:" + fnv1a64_hex(u2.num().get_str() + "/" + u2.den().get_str());
}

ordered_json two_term_to_json(const TwoTermFormula& f) {
    ordered_json j;
    j["k"] = f.k;
    j["u1"] = f.u1.get_str();
    j["u2"] = ordered_json{{"num", f.u2.num().get_str()}, {"den", f.u2.den().get_str()}};
    return j;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw Error("short write to '" + path.string() + "'");
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

// Sidecar payloads are bare decimal integers; tolerate a trailing newline.
std::string trim_trailing_ws(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' '))
        s.pop_back();
    return s;
}

const ordered_json& require(const ordered_json& j, const char* key, const char* what) {
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string("formula JSON: missing '") + key + "' in " + what);
    return *it;
}

std::string require_string(const ordered_json& j, const char* key, const char* what) {
    const ordered_json& v = require(j, key, what);
    if (!v.is_string())
        throw ParseError(std::string("formula JSON: '") + key + "' in " + what +
                         " must be a decimal string");
    return v.get<std::string>();
}

BigRational parse_num_den(const ordered_json& j, const char* what) {
    return BigRational(require_string(j, "num", what), require_string(j, "den", what));
}

TwoTermFormula parse_two_term(const ordered_json& j, const fs::path& base_dir) {
    const ordered_json& kj = require(j, "k", "two-term formula");
    if (!kj.is_number_integer())
        throw ParseError("formula JSON: 'k' must be an integer");
    long k = kj.get<long>();
    BigInt u1 = BigRational::parse_int(require_string(j, "u1", "two-term formula"));

    const ordered_json& u2j = require(j, "u2", "two-term formula");
    if (!u2j.is_object()) throw ParseError("formula JSON: 'u2' must be an object");

    BigRational u2(0);
    if (u2j.contains("num_file") || u2j.contains("den_file")) {
        fs::path num_file = base_dir / require_string(u2j, "num_file", "u2 sidecar");
        fs::path den_file = base_dir / require_string(u2j, "den_file", "u2 sidecar");
        std::string digest = require_string(u2j, "digest", "u2 sidecar");
        std::string num_s = trim_trailing_ws(read_text_file(num_file));
        std::string den_s = trim_trailing_ws(read_text_file(den_file));
        u2 = BigRational(num_s, den_s);
        if (u2_digest(u2) != digest)
            throw ParseError("formula JSON: sidecar digest mismatch for '" +
                             num_file.string() + "' / '" + den_file.string() + "'");
    } else {
        u2 = parse_num_den(u2j, "u2");
    }
    return TwoTermFormula{k, std::move(u1), std::move(u2)};
}

MachinFormula parse_generic(const ordered_json& j) {
    const ordered_json& terms_j = require(j, "terms", "formula");
    if (!terms_j.is_array() || terms_j.empty())
        throw ParseError("formula JSON: 'terms' must be a non-empty array");
    std::vector<MachinTerm> terms;
    terms.reserve(terms_j.size());
    for (const ordered_json& t : terms_j) {
        if (!t.is_object()) throw ParseError("formula JSON: each term must be an object");
        BigInt a = BigRational::parse_int(require_string(t, "a", "term"));
        BigRational b = parse_num_den(require(t, "b", "term"), "term b");
        terms.push_back({std::move(a), std::move(b)});
    }
    return MachinFormula(std::move(terms));
}

} // namespace

std::string two_term_json(const TwoTermFormula& f) {
    return two_term_to_json(f).dump();
}

void write_two_term_file(const TwoTermFormula& f, const std::string& path,
                         long sidecar_threshold_digits) {
    fs::path p(path);
    long widest = std::max(decimal_digits(f.u2.num()), decimal_digits(f.u2.den()));
    if (widest <= sidecar_threshold_digits) {
        write_text_file(p, two_term_to_json(f).dump() + "\n");
        return;
    }

    std::string stem = p.stem().string();
    std::string num_name = stem + ".u2num.txt";
    std::string den_name = stem + ".u2den.txt";
    fs::path dir = p.parent_path();
    write_text_file(dir / num_name, f.u2.num().get_str() + "\n");
    write_text_file(dir / den_name, f.u2.den().get_str() + "\n");

    ordered_json j;
    j["k"] = f.k;
    j["u1"] = f.u1.get_str();
    j["u2"] = ordered_json{{"num_file", num_name},
                           {"den_file", den_name},
                           {"digest", u2_digest(f.u2)}};
    write_text_file(p, j.dump() + "\n");
}

LoadedFormula load_formula_file(const std::string& path) {
    std::string text = read_text_file(path);
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("formula JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) throw ParseError("formula JSON: top level must be an object");

    try {
        LoadedFormula out;
        if (j.contains("terms")) out.generic = parse_generic(j);
        else out.two_term = parse_two_term(j, fs::path(path).parent_path());
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("formula JSON: " + std::string(e.what()));
    } catch (const DomainError& e) {
        // Degenerate content (zero coefficients, zero denominators) in a file
        // is a malformed-input problem, not a caller contract violation.
        throw ParseError("formula JSON: " + std::string(e.what()));
    }
}

MachinFormula as_machin(const LoadedFormula& f) {
    if (f.generic) return *f.generic;
    if (f.two_term) return to_machin(*f.two_term);
    throw Error("as_machin: empty LoadedFormula");
}

} // namespace machin
