#include "evcalc/dempster.hpp"

#include <cmath>
#include <vector>

#include "evcalc/errors.hpp"

namespace evcalc {

// Direct convolution over focal-set pairs in ascending mask order.  The
// commonality route (pointwise Q product) is faster asymptotically but this
// form is the definition; the tests hold the two against each other.
std::pair<MassFunction, ConflictReport> dempster_combine(const MassFunction& a,
                                                         const MassFunction& b) {
    if (!same_frame(a.frame(), b.frame())) {
        fail(Errc::frame_mismatch, "operands are defined over different frames");
    }
    const auto len = static_cast<SubsetIndex>(a.values().size());
    std::vector<double> acc(len, 0.0);
    for (SubsetIndex x = 0; x < len; ++x) {
        const double ma = a[x];
        if (ma == 0.0) continue;
        for (SubsetIndex y = 0; y < len; ++y) {
            const double mb = b[y];
            if (mb == 0.0) continue;
            acc[x & y] += ma * mb;
        }
    }
    const double conflict = acc[kEmptySet];
    const double denom = a.one_total() * b.one_total() - conflict;
    if (denom <= 1e-12) {
        fail(Errc::total_conflict, "all joint mass falls on the empty set (conflict = " +
                                       std::to_string(conflict) + ")");
    }
    const double c = 1.0 / denom;
    std::vector<double> out(len, 0.0);
    for (SubsetIndex s = 1; s < len; ++s) out[s] = c * acc[s];
    return {validate_bpa(std::move(out), a.frame()), ConflictReport{conflict, c}};
}

MassFunction condition(const MassFunction& m, SubsetIndex event) {
    if (!m.frame()->contains(event)) {
        fail(Errc::invalid_argument, "event lies outside the frame");
    }
    if (event == kEmptySet) {
        fail(Errc::empty_evidence, "cannot condition on the empty set");
    }
    std::vector<double> point(m.values().size(), 0.0);
    point[event] = 1.0;
    MassFunction me = validate_bpa(std::move(point), m.frame());
    return dempster_combine(m, me).first;
}

}  // namespace evcalc
