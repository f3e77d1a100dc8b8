#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "evcalc/mass.hpp"
#include "evcalc/multivariate.hpp"

namespace evcalc {

// Evidence text format (full-line # comments and blank lines are skipped):
//   frame: red blue green          (required, first content line)
//   var Weather: sun rain          (optional, only between frame and masses;
//                                   declares the frame as a product frame)
//   m {red,blue} 0.25              (one subset per line, at most once each)
// Omitted subsets carry mass 0.  Values are decimals with a required leading
// digit ('.5' is rejected); an exponent suffix is accepted on input, but
// writers always emit plain decimals.
struct EvidenceDoc {
    MassFunction mass;
    std::optional<ProductFrame> product;
};

EvidenceDoc parse_evidence_doc(std::string_view text);
MassFunction parse_evidence(std::string_view text);

EvidenceDoc load_evidence_doc(const std::filesystem::path& file);
MassFunction load_evidence(const std::filesystem::path& file);

// Inverse of parse_evidence: canonical-order nonzero masses, shortest decimal
// that parses back to the identical double.  parse(render(m)) == m bit-exactly.
std::string render_evidence(const MassFunction& m, const ProductFrame* product = nullptr);

// Mass/value table in canonical subset order:  "<value> {labels}" per row.
// precision 0 (default) prints the shortest round-trip decimal (up to 17
// significant digits); 1..17 rounds to that many significant digits.
std::string render_table(const MassFunction& m, int precision = 0, bool skip_zeros = false);
std::string render_value_table(const FramePtr& frame, std::span<const double> values,
                               int precision = 0, bool skip_zeros = false);

// "{red,blue}" -> bitmask against the frame.  Throws ParseError (malformed or
// repeated label) / UnknownLabel.
SubsetIndex parse_subset_text(const Frame& frame, std::string_view text);

// Shortest decimal string that round-trips to exactly v (fixed notation).
std::string format_decimal(double v);
// v rounded to sig_digits significant digits, fixed notation, no trailing zeros.
std::string format_decimal_sig(double v, int sig_digits);

}  // namespace evcalc
