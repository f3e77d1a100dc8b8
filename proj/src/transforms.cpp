#include "evcalc/transforms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "evcalc/errors.hpp"
#include "evcalc/kernels.hpp"

namespace evcalc {

BeliefView mass_to_belief(const MassFunction& m) {
    std::vector<double> bel(m.values().begin(), m.values().end());
    kernels::active_ops().zeta_subset(bel.data(), m.frame()->size());
    return BeliefView{m.frame(), std::move(bel), m.one_total()};
}

PlausibilityView mass_to_plausibility(const MassFunction& m) {
    const int n = m.frame()->size();
    BeliefView bel = mass_to_belief(m);
    std::vector<double> pl(bel.values.size());
    kernels::active_ops().complement_from(pl.data(), bel.values.data(), n, m.one_total());

    if (n <= 10) {
        // Cross-check against the defining intersection sum.  A mismatch can
        // only come from a broken transform kernel, so it is fatal.
        double scale = 0.0;
        for (double v : m.values()) scale += std::abs(v);
        const double tol = 1e-12 * std::max(1.0, scale);
        const auto len = static_cast<SubsetIndex>(m.values().size());
        for (SubsetIndex a = 0; a < len; ++a) {
            double direct = 0.0;
            for (SubsetIndex b = 0; b < len; ++b) {
                if ((a & b) != 0) direct += m.values()[b];
            }
            if (std::abs(direct - pl[a]) > tol) {
                throw std::logic_error("plausibility cross-check failed on subset " +
                                       m.frame()->format_subset(a));
            }
        }
    }
    return PlausibilityView{m.frame(), std::move(pl), m.one_total()};
}

CommonalityView mass_to_commonality(const MassFunction& m) {
    std::vector<double> q(m.values().begin(), m.values().end());
    kernels::active_ops().zeta_superset(q.data(), m.frame()->size());
    return CommonalityView{m.frame(), std::move(q), m.one_total()};
}

static void check_view(const FramePtr& frame, std::size_t len, const char* kind) {
    if (!frame) fail(Errc::invalid_argument, "null frame");
    if (len != frame->subset_count()) {
        fail(Errc::dimension_mismatch, std::string(kind) + " view has " + std::to_string(len) +
                                           " entries, frame needs " +
                                           std::to_string(frame->subset_count()));
    }
}

MassFunction belief_to_mass(const BeliefView& bel) {
    check_view(bel.frame, bel.values.size(), "belief");
    std::vector<double> m = bel.values;
    kernels::active_ops().mobius_subset(m.data(), bel.frame->size());
    return validate_bpa(std::move(m), bel.frame);
}

MassFunction plausibility_to_mass(const PlausibilityView& pl) {
    check_view(pl.frame, pl.values.size(), "plausibility");
    if (std::abs(pl.values[kEmptySet]) > kValidationSlack) {
        fail(Errc::empty_set_mass, "Pl({}) must be 0, got " +
                                       std::to_string(pl.values[kEmptySet]));
    }
    const int n = pl.frame->size();
    // ONE is determined by the view itself: Bel(full) = Pl(full).
    const double one = pl.values[pl.frame->full_set()];
    std::vector<double> m(pl.values.size());
    kernels::active_ops().complement_from(m.data(), pl.values.data(), n, one);
    kernels::active_ops().mobius_subset(m.data(), n);
    return validate_bpa(std::move(m), pl.frame);
}

MassFunction commonality_to_mass(const CommonalityView& q) {
    check_view(q.frame, q.values.size(), "commonality");
    std::vector<double> m = q.values;
    kernels::active_ops().mobius_superset(m.data(), q.frame->size());
    return validate_bpa(std::move(m), q.frame);
}

}  // namespace evcalc
