#include "evcalc/errors.hpp"

namespace evcalc {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::empty_set_mass: return "EmptySetMass";
        case Errc::nonpositive_total: return "NonpositiveTotal";
        case Errc::negative_commonality: return "NegativeCommonality";
        case Errc::total_conflict: return "TotalConflict";
        case Errc::empty_evidence: return "EmptyEvidence";
        case Errc::unknown_variable: return "UnknownVariable";
        case Errc::empty_carrier: return "EmptyCarrier";
        case Errc::not_a_singleton: return "NotASingleton";
        case Errc::not_in_carrier: return "NotInCarrier";
        case Errc::carrier_too_large: return "CarrierTooLarge";
        case Errc::pseudo_bpa_input: return "PseudoBpaInput";
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::frame_mismatch: return "FrameMismatch";
        case Errc::parse_error: return "ParseError";
        case Errc::unknown_label: return "UnknownLabel";
        case Errc::duplicate_subset: return "DuplicateSubset";
        case Errc::invalid_argument: return "InvalidArgument";
    }
    return "Error";
}

Error::Error(Errc code, const std::string& msg)
    : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace evcalc
