#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "evcalc/frame.hpp"
#include "evcalc/mass.hpp"
#include "evcalc/transforms.hpp"

namespace evcalc {

struct TpmConfig {
    int carrier_cap = 6;        // largest carrier enumerated (k! orderings)
    double dedup_tol = 1e-12;   // per-coordinate tolerance for candidate dedup
    double conflict_tol = 1e-12;  // normalizer below this -> TotalConflict
    bool record_candidates = false;  // keep per-subset candidate dumps in the report
};

// Plausibility restricted to a nonempty carrier X: local values over the
// 2^|X| subsets of X, indexed by local bitmask (local bit i = members[i]).
struct RestrictedPlausibility {
    FramePtr frame;
    SubsetIndex carrier = 0;
    std::vector<int> members;     // ascending element indices of the carrier
    std::vector<double> values;   // length 2^|X|, values[0] = 0

    int size() const { return static_cast<int>(members.size()); }
    double operator[](std::uint32_t local) const { return values[local]; }
    SubsetIndex to_global(std::uint32_t local) const;
    std::uint32_t to_local(SubsetIndex global) const;  // NotInCarrier if outside
};

// Narrowing: Pl'(A) = Pl(A) for A subset of the carrier; values on sets that
// reach outside the carrier are forgotten.
RestrictedPlausibility restrict_to(const PlausibilityView& pl, SubsetIndex carrier);

// One mass vector over the carrier's elements, produced by a push-down order.
struct CandidateMassVector {
    SubsetIndex carrier = 0;
    std::vector<int> members;   // ascending element indices
    std::vector<double> masses; // aligned with members
    std::vector<int> ordering;  // element indices in the order they were pushed
};

// Push-down of one element w (a global singleton inside the carrier): for
// every local A not containing w, Pl'(A) = min(Pl(A), Pl(A + w) - Pl({w})).
RestrictedPlausibility push_down(const RestrictedPlausibility& rp, SubsetIndex w);

// All distinct mass vectors reachable by exhausting push-down orders (k!
// permutations walked in lexicographic order of local indices, first-seen
// kept on dedup).  Throws CarrierTooLarge past cfg.carrier_cap.
std::vector<CandidateMassVector> enumerate_candidates(const RestrictedPlausibility& rp,
                                                      const TpmConfig& cfg = {});

// Greedy increments for one ordering without the min clamp:
// p[order[i]] = Pl(prefix_i) - Pl(prefix_{i-1}).  For plausibilities of
// nonnegative bpas this equals the push-down result for the same ordering.
std::vector<double> greedy_increment_vector(const RestrictedPlausibility& rp,
                                            std::span<const int> local_order);

// max over candidate pairs (p, q) of the dot product sum_i p_i * q_i.
// Operands must share frame and carrier.
double bilinear_value(const RestrictedPlausibility& a, const RestrictedPlausibility& b,
                      const TpmConfig& cfg = {});

// Closed form of bilinear_value for a two-element carrier {w1, w2}: the max
// of the four products of paired one-sided corner coordinates.
double tpm_pair_formula(const PlausibilityView& pl1, const PlausibilityView& pl2,
                        SubsetIndex w1, SubsetIndex w2);

struct CombinationReport {
    FramePtr frame;
    std::vector<double> unnormalized;  // v(X) per subset; v({}) = 0
    double normalizer = 0.0;           // v(full)
    PlausibilityView combined_pl;      // v / normalizer, Pl(full) = 1 exactly
    MassFunction combined_mass;        // Moebius inversion of the combined Pl
    bool mass_nonnegative = true;      // false -> combined_mass is a pseudo-bpa
    std::vector<std::size_t> candidate_counts_a;  // per subset
    std::vector<std::size_t> candidate_counts_b;
    std::vector<std::string> warnings;
    // populated only when cfg.record_candidates:
    std::vector<std::vector<CandidateMassVector>> candidates_a;
    std::vector<std::vector<CandidateMassVector>> candidates_b;
};

// Plausibility-corner combination: v(X) = bilinear_value of both operands
// restricted to X, normalized so Pl(full) = 1, then inverted to masses.
// Negative result masses are reported, never repaired.  Requires normalized
// nonnegative operands on one frame with size <= cfg.carrier_cap.
CombinationReport tpm_combine(const MassFunction& a, const MassFunction& b,
                              const TpmConfig& cfg = {});

}  // namespace evcalc
