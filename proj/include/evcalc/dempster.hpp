#pragma once

#include <utility>

#include "evcalc/mass.hpp"

namespace evcalc {

struct ConflictReport {
    double conflict_mass = 0.0;  // total product mass falling on the empty set
    double normalizer = 0.0;     // c = 1 / (ONE1*ONE2 - conflict_mass)
};

// Dempster's rule: intersection convolution of focal sets, empty-set mass
// dropped, remainder rescaled by c.  The result always has ONE = 1.
// Throws TotalConflict when the normalizer denominator is ~0, FrameMismatch
// when the operands live on different frames.
std::pair<MassFunction, ConflictReport> dempster_combine(const MassFunction& a,
                                                         const MassFunction& b);

// Conditioning on event B: combination with the deterministic bpa m_B(B) = 1.
// Throws EmptyEvidence for B = {} and TotalConflict when Pl(B) = 0.
MassFunction condition(const MassFunction& m, SubsetIndex event);

}  // namespace evcalc
