#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "machin/formula.hpp"

namespace machin {

// JSON persistence for formulas.  All numbers travel as decimal strings
// except k, which is a plain JSON integer:
//
//   two-term: {"k":6,"u1":"40","u2":{"num":"...","den":"..."}}
//   generic:  {"terms":[{"a":"4","b":{"num":"5","den":"1"}},...]}
//
// When either side of u2 exceeds the sidecar threshold in decimal digits,
// the file form stores it next to the JSON instead:
//
//   "u2":{"num_file":"<stem>.u2num.txt","den_file":"<stem>.u2den.txt",
//         "digest":"fnv1a64:<16 hex digits>"}
//
// with the digest taken over "<num decimal>/<den decimal>".

inline constexpr long kSidecarThresholdDigits = 1000000;

// Serialized two-term JSON, always inline (no sidecars) — the stdout form.
std::string two_term_json(const TwoTermFormula& f);

// Writes the JSON to `path`, spilling u2 to sidecar files beside it when it
// exceeds the threshold.
void write_two_term_file(const TwoTermFormula& f, const std::string& path,
                         long sidecar_threshold_digits = kSidecarThresholdDigits);

// A parsed formula file: exactly one of the two members is set.
struct LoadedFormula {
    std::optional<TwoTermFormula> two_term;
    std::optional<MachinFormula> generic;
};

// Parses either schema; resolves and digest-checks sidecars relative to the
// file's directory.  All malformed input (bad JSON, bad shapes, bad digests,
// degenerate terms) throws ParseError.
LoadedFormula load_formula_file(const std::string& path);

// The generic view of whichever form was loaded.
MachinFormula as_machin(const LoadedFormula& f);

// FNV-1a, 64-bit, over raw bytes; hex form is zero-padded to 16 digits.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

} // namespace machin
