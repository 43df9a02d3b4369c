#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "machin/formula.hpp"
#include "machin/formula_json.hpp"

using namespace machin;
namespace fs = std::filesystem;

namespace {

fs::path test_dir() {
    fs::path dir = fs::temp_directory_path() / "machin_formula_io_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_raw(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
}

std::string read_raw(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

} // namespace

TEST_CASE("serialized shape is stable byte for byte") {
    CHECK_EQ(two_term_json(TwoTermFormula{3, BigInt(5), BigRational(-239)}),
             R"({"k":3,"u1":"5","u2":{"num":"-239","den":"1"}})");
    CHECK_EQ(two_term_json(TwoTermFormula{2, BigInt(2), BigRational(-7)}),
             R"({"k":2,"u1":"2","u2":{"num":"-7","den":"1"}})");
}

TEST_CASE("file round trip preserves every field") {
    fs::path dir = test_dir();
    fs::path file = dir / "k6.json";
    TwoTermFormula f{6, BigInt(40), u2_exact(BigRational(40), 6)};
    write_two_term_file(f, file.string());

    LoadedFormula loaded = load_formula_file(file.string());
    REQUIRE(loaded.two_term.has_value());
    CHECK_FALSE(loaded.generic.has_value());
    CHECK_EQ(loaded.two_term->k, 6);
    CHECK_EQ(loaded.two_term->u1, BigInt(40));
    CHECK_EQ(loaded.two_term->u2, f.u2);
    CHECK(verify_formula(as_machin(loaded)));

    // Identical second write: byte-stable output.
    fs::path file2 = dir / "k6b.json";
    write_two_term_file(f, file2.string());
    CHECK_EQ(read_raw(file), read_raw(file2));
}

TEST_CASE("generic term lists load and verify") {
    fs::path dir = test_dir();
    fs::path file = dir / "classic.json";
    write_raw(file, R"({"terms":[{"a":"4","b":{"num":"5","den":"1"}},)"
                    R"({"a":"-1","b":{"num":"239","den":"1"}}]})");
    LoadedFormula loaded = load_formula_file(file.string());
    REQUIRE(loaded.generic.has_value());
    CHECK_FALSE(loaded.two_term.has_value());
    REQUIRE_EQ(loaded.generic->terms().size(), 2);
    CHECK_EQ(loaded.generic->terms()[0].a, BigInt(4));
    CHECK_EQ(loaded.generic->terms()[1].b, BigRational(239));
    CHECK(verify_formula(*loaded.generic));
    CHECK(verify_formula(as_machin(loaded)));
}

TEST_CASE("oversized companions spill into digest-checked sidecars") {
    fs::path dir = test_dir();
    fs::path file = dir / "big.json";
    TwoTermFormula f{6, BigInt(40), u2_exact(BigRational(40), 6)};
    // Force the sidecar path with a tiny threshold.
    write_two_term_file(f, file.string(), /*sidecar_threshold_digits=*/10);

    CHECK(fs::exists(dir / "big.u2num.txt"));
    CHECK(fs::exists(dir / "big.u2den.txt"));
    std::string json_text = read_raw(file);
    CHECK(json_text.find("num_file") != std::string::npos);
    CHECK(json_text.find("fnv1a64:") != std::string::npos);
    CHECK(json_text.find(f.u2.num().get_str()) == std::string::npos);

    LoadedFormula loaded = load_formula_file(file.string());
    REQUIRE(loaded.two_term.has_value());
    CHECK_EQ(loaded.two_term->u2, f.u2);

    SUBCASE("corrupted sidecar payload is rejected") {
        std::string num = read_raw(dir / "big.u2num.txt");
        num.insert(5, "5");
        write_raw(dir / "big.u2num.txt", num);
        CHECK_THROWS_AS(load_formula_file(file.string()), ParseError);
    }
    SUBCASE("tampered digest is rejected") {
        std::string text = read_raw(file);
        auto pos = text.find("fnv1a64:");
        text[pos + 8] = text[pos + 8] == 'f' ? '0' : 'f';
        write_raw(file, text);
        CHECK_THROWS_AS(load_formula_file(file.string()), ParseError);
    }
    SUBCASE("missing sidecar file is rejected") {
        fs::remove(dir / "big.u2den.txt");
        CHECK_THROWS_AS(load_formula_file(file.string()), ParseError);
    }
}

TEST_CASE("malformed input is a parse error, not a crash") {
    fs::path dir = test_dir();
    auto expect_parse_error = [&dir](const char* name, const std::string& text) {
        fs::path p = dir / name;
        write_raw(p, text);
        CAPTURE(name);
        CHECK_THROWS_AS(load_formula_file(p.string()), ParseError);
    };
    expect_parse_error("not_json.json", "this is not json");
    expect_parse_error("top_array.json", R"([1,2,3])");
    expect_parse_error("k_string.json", R"({"k":"3","u1":"5","u2":{"num":"-239","den":"1"}})");
    expect_parse_error("k_float.json", R"({"k":3.5,"u1":"5","u2":{"num":"-239","den":"1"}})");
    expect_parse_error("no_u1.json", R"({"k":3,"u2":{"num":"-239","den":"1"}})");
    expect_parse_error("u2_scalar.json", R"({"k":3,"u1":"5","u2":"-239"})");
    expect_parse_error("u2_no_den.json", R"({"k":3,"u1":"5","u2":{"num":"-239"}})");
    expect_parse_error("den_zero.json", R"({"k":3,"u1":"5","u2":{"num":"-239","den":"0"}})");
    expect_parse_error("u1_garbage.json", R"({"k":3,"u1":"5x","u2":{"num":"-239","den":"1"}})");
    expect_parse_error("terms_empty.json", R"({"terms":[]})");
    expect_parse_error("terms_scalar.json", R"({"terms":[42]})");
    expect_parse_error("term_b_zero.json", R"({"terms":[{"a":"4","b":{"num":"0","den":"1"}}]})");
    CHECK_THROWS_AS(load_formula_file((dir / "missing.json").string()), ParseError);
}

TEST_CASE("digest function matches published test vectors") {
    CHECK_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    CHECK_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
    CHECK_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
    CHECK_EQ(fnv1a64_hex("foobar"), "85944171f73967e8");
    CHECK_EQ(fnv1a64_hex("").size(), 16);
}
