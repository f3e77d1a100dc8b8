#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "evcalc/frame.hpp"

namespace evcalc {

// Basic probability assignment over a frame: a dense vector of 2^n masses with
// m(emptyset) = 0, total ONE > 0, and commonality Q(A) >= 0 for every A.
// Masses may be negative (a pseudo-bpa) as long as every Q stays nonnegative;
// all_nonnegative() distinguishes proper bpas from pseudo-bpas.
class MassFunction {
public:
    const FramePtr& frame() const { return frame_; }
    std::span<const double> values() const { return values_; }
    double operator[](SubsetIndex s) const { return values_[s]; }
    double one_total() const { return one_total_; }
    bool all_nonnegative() const { return nonnegative_; }

    // Wraps values without the commonality check (still computes ONE and the
    // nonnegativity flag).  Only for carrying known-invalid vectors inside
    // reports; every public construction path goes through validate_bpa.
    static MassFunction unchecked(FramePtr frame, std::vector<double> values);

private:
    MassFunction(FramePtr frame, std::vector<double> values, double one, bool nonneg);
    friend MassFunction validate_bpa(std::vector<double> values, FramePtr frame);

    FramePtr frame_;
    std::vector<double> values_;
    double one_total_;
    bool nonnegative_;
};

// Validation slack: |m(emptyset)| and Q(A) below this magnitude count as zero.
inline constexpr double kValidationSlack = 1e-12;

// Checks the three admissibility conditions and canonicalizes -0.0 to +0.0.
// Throws EmptySetMass, NonpositiveTotal, or NegativeCommonality (naming the
// worst offending subset).
MassFunction validate_bpa(std::vector<double> values, FramePtr frame);

// The vacuous bpa: all mass on the full set.  Throws NonpositiveTotal unless
// one_total > 0.
MassFunction vacuous(FramePtr frame, double one_total = 1.0);

// Divides every mass by ONE so the result has ONE = 1.
MassFunction normalize(const MassFunction& m);

}  // namespace evcalc
