#pragma once

#include <stdexcept>
#include <string>

namespace evcalc {

enum class Errc {
    empty_set_mass,        // m(emptyset) != 0
    nonpositive_total,     // ONE = sum of masses is <= 0
    negative_commonality,  // Q(A) < 0 for some nonempty A
    total_conflict,        // combination normalizer is zero
    empty_evidence,        // conditioning event is the empty set
    unknown_variable,      // variable name not present in a product frame
    empty_carrier,         // restriction carrier is the empty set
    not_a_singleton,       // operation expected a one-element set
    not_in_carrier,        // element lies outside the carrier
    carrier_too_large,     // k! enumeration bound exceeded
    pseudo_bpa_input,      // operation defined only for nonnegative bpas
    dimension_mismatch,    // vector length does not match the carrier
    frame_mismatch,        // operands live on different frames/carriers
    parse_error,           // malformed evidence text
    unknown_label,         // label not present in the frame
    duplicate_subset,      // subset assigned twice in one file
    invalid_argument,      // other precondition violation
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg);
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& msg);

}  // namespace evcalc
