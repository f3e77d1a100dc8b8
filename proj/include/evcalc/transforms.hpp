#pragma once

#include <span>
#include <vector>

#include "evcalc/frame.hpp"
#include "evcalc/mass.hpp"

namespace evcalc {

// Dense views of the three set functions derived from a bpa.  values has
// length 2^n in subset-bitmask order.
struct BeliefView {
    FramePtr frame;
    std::vector<double> values;  // Bel(A) = sum of m(B) over B subset of A
    double one_total = 0.0;
    double operator[](SubsetIndex s) const { return values[s]; }
};

struct PlausibilityView {
    FramePtr frame;
    std::vector<double> values;  // Pl(A) = ONE - Bel(full \ A)
    double one_total = 0.0;
    double operator[](SubsetIndex s) const { return values[s]; }
};

struct CommonalityView {
    FramePtr frame;
    std::vector<double> values;  // Q(A) = sum of m(B) over B superset of A; Q({}) = ONE
    double one_total = 0.0;
    double operator[](SubsetIndex s) const { return values[s]; }
};

BeliefView mass_to_belief(const MassFunction& m);

// Computed as ONE - Bel(complement).  For frames with up to 10 elements the
// result is cross-checked against a direct intersection sum (sum of m(B) over
// B meeting A); a mismatch beyond float noise aborts via logic_error since it
// would mean a transform kernel is broken.
PlausibilityView mass_to_plausibility(const MassFunction& m);

CommonalityView mass_to_commonality(const MassFunction& m);

// Inverse transforms.  Each validates the recovered bpa, so inconsistent
// views surface as EmptySetMass / NonpositiveTotal / NegativeCommonality.
MassFunction belief_to_mass(const BeliefView& bel);
MassFunction plausibility_to_mass(const PlausibilityView& pl);
MassFunction commonality_to_mass(const CommonalityView& q);

}  // namespace evcalc
