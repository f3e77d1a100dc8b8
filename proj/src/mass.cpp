#include "evcalc/mass.hpp"

#include <cmath>
#include <string>

#include "evcalc/errors.hpp"
#include "evcalc/kernels.hpp"

namespace evcalc {

MassFunction::MassFunction(FramePtr frame, std::vector<double> values, double one, bool nonneg)
    : frame_(std::move(frame)), values_(std::move(values)), one_total_(one), nonnegative_(nonneg) {}

MassFunction MassFunction::unchecked(FramePtr frame, std::vector<double> values) {
    double one = 0.0;
    bool nonneg = true;
    for (double& v : values) {
        if (v == 0.0) v = 0.0;  // canonicalize -0.0
        one += v;
        if (v < 0.0) nonneg = false;
    }
    return MassFunction(std::move(frame), std::move(values), one, nonneg);
}

MassFunction validate_bpa(std::vector<double> values, FramePtr frame) {
    if (!frame) fail(Errc::invalid_argument, "null frame");
    if (values.size() != frame->subset_count()) {
        fail(Errc::dimension_mismatch,
             "expected " + std::to_string(frame->subset_count()) + " masses, got " +
                 std::to_string(values.size()));
    }
    for (double& v : values) {
        if (!std::isfinite(v)) fail(Errc::invalid_argument, "mass values must be finite");
        if (v == 0.0) v = 0.0;  // canonicalize -0.0 so serialization round-trips
    }
    if (std::abs(values[kEmptySet]) > kValidationSlack) {
        fail(Errc::empty_set_mass,
             "m({}) must be 0, got " + std::to_string(values[kEmptySet]));
    }
    values[kEmptySet] = 0.0;

    double one = 0.0;
    bool nonneg = true;
    for (double v : values) {
        one += v;
        if (v < 0.0) nonneg = false;
    }
    if (!(one > 0.0)) {
        fail(Errc::nonpositive_total, "total mass ONE = " + std::to_string(one) +
                                          " but a bpa requires ONE > 0");
    }

    // Q(A) >= 0 for every nonempty A (the admissibility condition that makes
    // negative per-set masses tolerable).
    std::vector<double> q = values;
    kernels::active_ops().zeta_superset(q.data(), frame->size());
    double worst = 0.0;
    SubsetIndex worst_set = 0;
    for (SubsetIndex s = 1; s < q.size(); ++s) {
        if (q[s] < worst) {
            worst = q[s];
            worst_set = s;
        }
    }
    if (worst < -kValidationSlack) {
        fail(Errc::negative_commonality, "Q(" + frame->format_subset(worst_set) +
                                             ") = " + std::to_string(worst));
    }
    return MassFunction(std::move(frame), std::move(values), one, nonneg);
}

MassFunction vacuous(FramePtr frame, double one_total) {
    if (!frame) fail(Errc::invalid_argument, "null frame");
    if (!std::isfinite(one_total) || !(one_total > 0.0)) {
        fail(Errc::nonpositive_total, "vacuous bpa requires a total mass > 0, got " +
                                          std::to_string(one_total));
    }
    std::vector<double> values(frame->subset_count(), 0.0);
    values[frame->full_set()] = one_total;
    return validate_bpa(std::move(values), std::move(frame));
}

MassFunction normalize(const MassFunction& m) {
    std::vector<double> values(m.values().begin(), m.values().end());
    kernels::active_ops().div_scalar(values.data(), values.size(), m.one_total());
    return validate_bpa(std::move(values), m.frame());
}

}  // namespace evcalc
