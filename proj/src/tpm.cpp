#include "evcalc/tpm.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "evcalc/errors.hpp"
#include "evcalc/kernels.hpp"

namespace evcalc {

SubsetIndex RestrictedPlausibility::to_global(std::uint32_t local) const {
    SubsetIndex out = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (local & (std::uint32_t{1} << i)) out |= SubsetIndex{1} << members[i];
    }
    return out;
}

std::uint32_t RestrictedPlausibility::to_local(SubsetIndex global) const {
    if ((global & ~carrier) != 0) {
        fail(Errc::not_in_carrier, "set reaches outside the carrier");
    }
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (global & (SubsetIndex{1} << members[i])) out |= std::uint32_t{1} << i;
    }
    return out;
}

RestrictedPlausibility restrict_to(const PlausibilityView& pl, SubsetIndex carrier) {
    if (!pl.frame) fail(Errc::invalid_argument, "null frame");
    if (!pl.frame->contains(carrier)) fail(Errc::invalid_argument, "carrier outside the frame");
    if (carrier == kEmptySet) fail(Errc::empty_carrier, "carrier must be nonempty");
    RestrictedPlausibility rp;
    rp.frame = pl.frame;
    rp.carrier = carrier;
    rp.members = subset_members(carrier);
    rp.values.resize(std::size_t{1} << rp.members.size());
    for (std::uint32_t local = 0; local < rp.values.size(); ++local) {
        rp.values[local] = pl.values[rp.to_global(local)];
    }
    return rp;
}

namespace {

// In-place push-down of the local element w: for every A not containing w,
// Pl'(A) = min(Pl(A), Pl(A + w) - Pl({w})).  Sets containing w are untouched,
// so ascending in-place traversal reads only unmodified values.
void push_down_inplace(std::vector<double>& vals, int local_w) {
    const std::uint32_t bit = std::uint32_t{1} << local_w;
    const double pw = vals[bit];
    for (std::uint32_t a = 0; a < vals.size(); ++a) {
        if (a & bit) continue;
        vals[a] = std::min(vals[a], vals[a | bit] - pw);
    }
}

}  // namespace

RestrictedPlausibility push_down(const RestrictedPlausibility& rp, SubsetIndex w) {
    if (!is_singleton(w)) fail(Errc::not_a_singleton, "push-down takes one element");
    if ((w & rp.carrier) != w) fail(Errc::not_in_carrier, "element outside the carrier");
    RestrictedPlausibility out = rp;
    push_down_inplace(out.values, std::countr_zero(out.to_local(w)));
    return out;
}

std::vector<CandidateMassVector> enumerate_candidates(const RestrictedPlausibility& rp,
                                                      const TpmConfig& cfg) {
    const int k = rp.size();
    if (k < 1) fail(Errc::empty_carrier, "carrier must be nonempty");
    if (k > cfg.carrier_cap) {
        fail(Errc::carrier_too_large,
             "carrier has " + std::to_string(k) + " elements but the enumeration cap is " +
                 std::to_string(cfg.carrier_cap) + " (raise it with --cap)");
    }
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);

    std::vector<CandidateMassVector> out;
    std::vector<double> vals;
    std::vector<double> p(static_cast<std::size_t>(k));
    do {
        vals = rp.values;
        for (int w : perm) push_down_inplace(vals, w);
        for (int i = 0; i < k; ++i) {
            p[static_cast<std::size_t>(i)] = vals[std::uint32_t{1} << i];
        }
        bool duplicate = false;
        for (const CandidateMassVector& kept : out) {
            bool close = true;
            for (int i = 0; i < k; ++i) {
                if (std::abs(kept.masses[static_cast<std::size_t>(i)] -
                             p[static_cast<std::size_t>(i)]) > cfg.dedup_tol) {
                    close = false;
                    break;
                }
            }
            if (close) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) {
            CandidateMassVector c;
            c.carrier = rp.carrier;
            c.members = rp.members;
            c.masses = p;
            c.ordering.reserve(perm.size());
            for (int w : perm) c.ordering.push_back(rp.members[static_cast<std::size_t>(w)]);
            out.push_back(std::move(c));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<double> greedy_increment_vector(const RestrictedPlausibility& rp,
                                            std::span<const int> local_order) {
    const int k = rp.size();
    if (static_cast<int>(local_order.size()) != k) {
        fail(Errc::invalid_argument, "ordering must list every carrier element once");
    }
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    for (int w : local_order) {
        if (w < 0 || w >= k || seen[static_cast<std::size_t>(w)]) {
            fail(Errc::invalid_argument, "ordering must list every carrier element once");
        }
        seen[static_cast<std::size_t>(w)] = true;
    }
    std::vector<double> p(static_cast<std::size_t>(k));
    std::uint32_t prefix = 0;
    double prev = 0.0;
    for (int w : local_order) {
        prefix |= std::uint32_t{1} << w;
        const double cur = rp.values[prefix];
        p[static_cast<std::size_t>(w)] = cur - prev;
        prev = cur;
    }
    return p;
}

namespace {

double max_dot(const std::vector<CandidateMassVector>& ca,
               const std::vector<CandidateMassVector>& cb) {
    double best = 0.0;
    bool first = true;
    for (const CandidateMassVector& p : ca) {
        for (const CandidateMassVector& q : cb) {
            double dot = 0.0;
            for (std::size_t i = 0; i < p.masses.size(); ++i) dot += p.masses[i] * q.masses[i];
            if (first || dot > best) {
                best = dot;
                first = false;
            }
        }
    }
    return best;
}

}  // namespace

double bilinear_value(const RestrictedPlausibility& a, const RestrictedPlausibility& b,
                      const TpmConfig& cfg) {
    if (!same_frame(a.frame, b.frame)) fail(Errc::frame_mismatch, "operands on different frames");
    if (a.carrier != b.carrier) fail(Errc::frame_mismatch, "operands on different carriers");
    return max_dot(enumerate_candidates(a, cfg), enumerate_candidates(b, cfg));
}

double tpm_pair_formula(const PlausibilityView& pl1, const PlausibilityView& pl2,
                        SubsetIndex w1, SubsetIndex w2) {
    if (!same_frame(pl1.frame, pl2.frame)) {
        fail(Errc::frame_mismatch, "operands on different frames");
    }
    if (!is_singleton(w1) || !is_singleton(w2)) {
        fail(Errc::not_a_singleton, "the pair formula takes two elements");
    }
    if (w1 == w2) fail(Errc::invalid_argument, "the two elements must differ");
    if (!pl1.frame->contains(w1 | w2)) fail(Errc::invalid_argument, "element outside the frame");
    const SubsetIndex both = w1 | w2;
    // Each side restricted to {w1, w2} has exactly two corner candidates, one
    // per push order; the combined value is the best of the four pairings.
    const auto corners = [both, w1, w2](const PlausibilityView& pl) {
        const double px = pl.values[w1], py = pl.values[w2], pxy = pl.values[both];
        return std::array<std::array<double, 2>, 2>{{
            {px, std::min(py, pxy - px)},  // w1 pushed first
            {std::min(px, pxy - py), py},  // w2 pushed first
        }};
    };
    const auto ca = corners(pl1);
    const auto cb = corners(pl2);
    double best = 0.0;
    bool first = true;
    for (const auto& p : ca) {
        for (const auto& q : cb) {
            const double dot = p[0] * q[0] + p[1] * q[1];
            if (first || dot > best) {
                best = dot;
                first = false;
            }
        }
    }
    return best;
}

CombinationReport tpm_combine(const MassFunction& a, const MassFunction& b,
                              const TpmConfig& cfg) {
    if (!same_frame(a.frame(), b.frame())) {
        fail(Errc::frame_mismatch, "operands are defined over different frames");
    }
    const FramePtr& frame = a.frame();
    const int n = frame->size();
    if (n > cfg.carrier_cap) {
        fail(Errc::carrier_too_large,
             "frame has " + std::to_string(n) + " elements but the enumeration cap is " +
                 std::to_string(cfg.carrier_cap) + " (raise it with --cap)");
    }
    for (const MassFunction* m : {&a, &b}) {
        for (double v : m->values()) {
            // Tiny negative dust from upstream float arithmetic is tolerated;
            // genuine pseudo-bpas are not, since their plausibilities need not
            // be monotone and the corner search would lose its meaning.
            if (v < -kValidationSlack) {
                fail(Errc::pseudo_bpa_input,
                     "combination is defined for nonnegative bpas only");
            }
        }
        if (std::abs(m->one_total() - 1.0) > 1e-9) {
            fail(Errc::invalid_argument, "combination requires normalized input (ONE = 1)");
        }
    }

    const PlausibilityView pla = mass_to_plausibility(a);
    const PlausibilityView plb = mass_to_plausibility(b);
    const auto len = static_cast<SubsetIndex>(frame->subset_count());

    std::vector<double> v(len, 0.0);
    std::vector<std::size_t> counts_a(len, 0), counts_b(len, 0);
    std::vector<std::vector<CandidateMassVector>> dump_a, dump_b;
    if (cfg.record_candidates) {
        dump_a.resize(len);
        dump_b.resize(len);
    }
    for (SubsetIndex x = 1; x < len; ++x) {
        auto ca = enumerate_candidates(restrict_to(pla, x), cfg);
        auto cb = enumerate_candidates(restrict_to(plb, x), cfg);
        counts_a[x] = ca.size();
        counts_b[x] = cb.size();
        v[x] = max_dot(ca, cb);
        if (cfg.record_candidates) {
            dump_a[x] = std::move(ca);
            dump_b[x] = std::move(cb);
        }
    }

    const double normalizer = v[frame->full_set()];
    if (normalizer <= cfg.conflict_tol) {
        fail(Errc::total_conflict, "combined plausibility of the full set is ~0 (" +
                                       std::to_string(normalizer) + ")");
    }

    std::vector<std::string> warnings;
    const double mono_tol = 1e-12 * std::max(1.0, normalizer);
    for (SubsetIndex x = 1; x < len; ++x) {
        for (int k = 0; k < n; ++k) {
            const SubsetIndex y = x | (SubsetIndex{1} << k);
            if (y != x && v[x] > v[y] + mono_tol) {
                warnings.push_back("unnormalized value is not monotone: v(" +
                                   frame->format_subset(x) + ") > v(" +
                                   frame->format_subset(y) + ")");
            }
        }
    }

    std::vector<double> plc = v;
    kernels::active_ops().div_scalar(plc.data(), plc.size(), normalizer);
    PlausibilityView combined_pl{frame, plc, plc[frame->full_set()]};

    // Invert Pl -> Bel -> m without rejecting pseudo results: negative masses
    // are a legitimate (flagged) outcome of this rule.
    std::vector<double> masses(len);
    kernels::active_ops().complement_from(masses.data(), plc.data(), n, plc[frame->full_set()]);
    kernels::active_ops().mobius_subset(masses.data(), n);
    MassFunction combined = MassFunction::unchecked(frame, std::move(masses));

    bool nonneg = true;
    double worst = 0.0;
    SubsetIndex worst_set = 0;
    for (SubsetIndex s = 0; s < len; ++s) {
        if (combined[s] < worst) {
            worst = combined[s];
            worst_set = s;
        }
    }
    if (worst < -kValidationSlack) {
        nonneg = false;
        warnings.push_back("combined mass is negative on " + frame->format_subset(worst_set) +
                           ": " + std::to_string(worst) + " (pseudo-bpa result)");
    }
    std::vector<double> q(combined.values().begin(), combined.values().end());
    kernels::active_ops().zeta_superset(q.data(), n);
    for (SubsetIndex s = 1; s < len; ++s) {
        if (q[s] < -kValidationSlack) {
            warnings.push_back("combined result violates Q >= 0 on " + frame->format_subset(s) +
                               ": " + std::to_string(q[s]));
            nonneg = false;
            break;
        }
    }

    return CombinationReport{
        frame,
        std::move(v),
        normalizer,
        std::move(combined_pl),
        std::move(combined),
        nonneg,
        std::move(counts_a),
        std::move(counts_b),
        std::move(warnings),
        std::move(dump_a),
        std::move(dump_b),
    };
}

}  // namespace evcalc
