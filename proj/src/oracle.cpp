#include "evcalc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <string>

#include "evcalc/dempster.hpp"
#include "evcalc/errors.hpp"
#include "evcalc/io.hpp"
#include "evcalc/kernels.hpp"
#include "evcalc/transforms.hpp"

namespace evcalc {

std::uint64_t SplitMix64::next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

MassFunction random_bpa(FramePtr frame, std::uint64_t seed, double focal_density) {
    if (!frame) fail(Errc::invalid_argument, "null frame");
    if (!(focal_density > 0.0 && focal_density <= 1.0)) {
        fail(Errc::invalid_argument, "focal density must lie in (0, 1]");
    }
    SplitMix64 gen{seed};
    const auto len = static_cast<SubsetIndex>(frame->subset_count());
    std::vector<double> m(len, 0.0);
    double total = 0.0;
    for (SubsetIndex s = 1; s < len; ++s) {
        const double u = gen.uniform();
        if (u < focal_density) {
            m[s] = gen.uniform();
            total += m[s];
        }
    }
    if (total <= 0.0) {
        // Empty draw: fall back to a vacuous-like bpa so every seed yields
        // something valid.
        m[frame->full_set()] = 1.0;
        total = 1.0;
    }
    kernels::active_ops().div_scalar(m.data(), m.size(), total);
    return validate_bpa(std::move(m), std::move(frame));
}

MassFunction random_pseudo_bpa(FramePtr frame, std::uint64_t seed) {
    if (!frame) fail(Errc::invalid_argument, "null frame");
    SplitMix64 gen{seed};
    const auto len = static_cast<SubsetIndex>(frame->subset_count());
    // Draw the commonality uniformly (so Q >= 0 holds by construction) and
    // invert; the masses then typically alternate in sign.
    std::vector<double> m(len, 0.0);
    for (SubsetIndex s = 1; s < len; ++s) m[s] = gen.uniform();
    kernels::active_ops().mobius_superset(m.data(), frame->size());
    m[kEmptySet] = 0.0;  // Q({}) is not constrained; drop whatever landed here
    // Keep the absolute mass small so downstream float noise stays well under
    // the 1e-12 tolerances the identity tests assert.
    double total_abs = 0.0;
    for (SubsetIndex s = 1; s < len; ++s) total_abs += std::abs(m[s]);
    if (total_abs > 2.0) {
        const double scale = 2.0 / total_abs;
        for (SubsetIndex s = 1; s < len; ++s) m[s] *= scale;
    }
    double one = 0.0;
    for (SubsetIndex s = 1; s < len; ++s) one += m[s];
    if (one < 0.1) m[frame->full_set()] += 0.1 - one;  // Q(A) only grows
    return validate_bpa(std::move(m), std::move(frame));
}

bool polytope_member(std::span<const double> p, const RestrictedPlausibility& rp, double tol) {
    const int k = rp.size();
    if (static_cast<int>(p.size()) != k) {
        fail(Errc::dimension_mismatch, "point has " + std::to_string(p.size()) +
                                           " coordinates, carrier has " + std::to_string(k));
    }
    for (double v : p) {
        if (v < -tol) return false;
    }
    const auto full = static_cast<std::uint32_t>(rp.values.size() - 1);
    for (std::uint32_t a = 1; a <= full; ++a) {
        double sum = 0.0;
        for (int i = 0; i < k; ++i) {
            if (a & (std::uint32_t{1} << i)) sum += p[static_cast<std::size_t>(i)];
        }
        if (a == full) {
            if (std::abs(sum - rp.values[a]) > tol) return false;
        } else if (sum > rp.values[a] + tol) {
            return false;
        }
    }
    return true;
}

namespace {

double dot(std::span<const double> p, std::span<const double> q) {
    double out = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) out += p[i] * q[i];
    return out;
}

// Greedy best response: fill elements in descending partner weight, each
// taking its largest feasible increment.  For plausibilities of nonnegative
// bpas this is the classic polymatroid greedy and is an exact maximizer.
std::vector<double> greedy_response(const RestrictedPlausibility& rp,
                                    std::span<const double> weights) {
    const int k = rp.size();
    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return weights[static_cast<std::size_t>(i)] > weights[static_cast<std::size_t>(j)];
    });
    return greedy_increment_vector(rp, order);
}

}  // namespace

double oracle_alternating_max(const RestrictedPlausibility& a, const RestrictedPlausibility& b,
                              const TpmConfig& cfg) {
    if (!same_frame(a.frame, b.frame)) fail(Errc::frame_mismatch, "operands on different frames");
    if (a.carrier != b.carrier) fail(Errc::frame_mismatch, "operands on different carriers");
    const auto ca = enumerate_candidates(a, cfg);
    const auto cb = enumerate_candidates(b, cfg);
    double best = 0.0;
    bool first = true;
    for (const CandidateMassVector& p0 : ca) {
        for (const CandidateMassVector& q0 : cb) {
            std::vector<double> p = p0.masses, q = q0.masses;
            double val = dot(p, q);
            for (int iter = 0; iter < 64; ++iter) {
                p = greedy_response(a, q);
                q = greedy_response(b, p);
                const double improved = dot(p, q);
                if (improved <= val + 1e-15) {
                    val = std::max(val, improved);
                    break;
                }
                val = improved;
            }
            if (first || val > best) {
                best = val;
                first = false;
            }
        }
    }
    return best;
}

std::optional<double> oracle_grid_max(const RestrictedPlausibility& a,
                                      const RestrictedPlausibility& b, double resolution) {
    if (!same_frame(a.frame, b.frame)) fail(Errc::frame_mismatch, "operands on different frames");
    if (a.carrier != b.carrier) fail(Errc::frame_mismatch, "operands on different carriers");
    if (!(resolution > 0.0)) fail(Errc::invalid_argument, "resolution must be positive");
    const int k = a.size();
    if (k > 3) {
        fail(Errc::carrier_too_large, "the grid oracle handles carriers of up to 3 elements");
    }
    const double tol = 1e-9;

    // Feasible grid points with the last coordinate eliminated through the
    // equality constraint sum(p) = Pl(carrier).
    const auto feasible_points = [&](const RestrictedPlausibility& rp) {
        const double total = rp.values.back();
        std::vector<double> pts;  // flat, k coordinates per point
        const auto push_if_member = [&](std::initializer_list<double> p) {
            std::vector<double> v(p);
            if (polytope_member(v, rp, tol)) pts.insert(pts.end(), v.begin(), v.end());
        };
        if (k == 1) {
            push_if_member({total});
            return pts;
        }
        const auto axis = [&](double limit) {
            std::vector<double> ticks;
            for (int i = 0;; ++i) {
                const double t = resolution * i;
                if (t > limit + tol) break;
                ticks.push_back(t);
            }
            if (ticks.empty() || std::abs(ticks.back() - limit) > tol) ticks.push_back(limit);
            return ticks;
        };
        if (k == 2) {
            for (double t : axis(total)) push_if_member({t, total - t});
            return pts;
        }
        for (double t : axis(total)) {
            for (double u : axis(total - t)) push_if_member({t, u, total - t - u});
        }
        return pts;
    };

    const std::vector<double> pa = feasible_points(a);
    const std::vector<double> pb = feasible_points(b);
    if (pa.empty() || pb.empty()) return std::nullopt;

    double best = 0.0;
    bool first = true;
    const std::size_t uk = static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < pa.size(); i += uk) {
        for (std::size_t j = 0; j < pb.size(); j += uk) {
            double d = 0.0;
            for (std::size_t c = 0; c < uk; ++c) d += pa[i + c] * pb[j + c];
            if (first || d > best) {
                best = d;
                first = false;
            }
        }
    }
    return best;
}

double oracle_bilinear_max(const RestrictedPlausibility& a, const RestrictedPlausibility& b,
                           double resolution, const TpmConfig& cfg) {
    double best = oracle_alternating_max(a, b, cfg);
    if (resolution > 0.0 && a.size() <= 3) {
        if (const auto grid = oracle_grid_max(a, b, resolution); grid && *grid > best) {
            best = *grid;
        }
    }
    return best;
}

const char* law_name(Law law) {
    switch (law) {
        case Law::commutativity: return "commutativity";
        case Law::associativity: return "associativity";
        case Law::duality: return "duality";
        case Law::round_trip: return "round-trip";
    }
    return "law";
}

const char* rule_name(Rule rule) {
    return rule == Rule::dempster ? "dempster" : "tpm";
}

namespace {

MassFunction combine_with(Rule rule, const MassFunction& a, const MassFunction& b,
                          const TpmConfig& cfg) {
    if (rule == Rule::dempster) return dempster_combine(a, b).first;
    return tpm_combine(a, b, cfg).combined_mass;
}

double max_abs_diff(const MassFunction& a, const MassFunction& b, SubsetIndex* argmax) {
    double worst = 0.0;
    SubsetIndex at = 0;
    for (SubsetIndex s = 0; s < a.values().size(); ++s) {
        const double d = std::abs(a[s] - b[s]);
        if (d > worst) {
            worst = d;
            at = s;
        }
    }
    if (argmax != nullptr) *argmax = at;
    return worst;
}

}  // namespace

double fold_deviation(const std::vector<MassFunction>& operands, Rule rule,
                      const TpmConfig& cfg) {
    if (operands.size() < 2) fail(Errc::invalid_argument, "need at least two operands");
    MassFunction left = operands.front();
    for (std::size_t i = 1; i < operands.size(); ++i) {
        left = combine_with(rule, left, operands[i], cfg);
    }
    MassFunction right = operands.back();
    for (std::size_t i = operands.size() - 1; i-- > 0;) {
        right = combine_with(rule, operands[i], right, cfg);
    }
    return max_abs_diff(left, right, nullptr);
}

namespace {

FramePtr law_frame(int frame_size) {
    if (frame_size < 1 || frame_size > Frame::kMaxElements) {
        fail(Errc::invalid_argument, "frame size must lie in [1, 24]");
    }
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(frame_size));
    for (int i = 0; i < frame_size; ++i) {
        if (i < 26) {
            labels.emplace_back(1, static_cast<char>('a' + i));
        } else {
            labels.push_back("e" + std::to_string(i));
        }
    }
    return Frame::make(std::move(labels));
}

std::uint64_t operand_seed(std::uint64_t seed, int trial, int slot) {
    SplitMix64 gen{seed ^ (0x9e3779b97f4a7c15ULL *
                           static_cast<std::uint64_t>(trial * 4 + slot + 1))};
    return gen.next();
}

double default_tolerance(Law law, Rule rule) {
    switch (law) {
        case Law::commutativity: return rule == Rule::dempster ? 1e-12 : 1e-9;
        case Law::associativity: return rule == Rule::dempster ? 1e-9 : 1e-6;
        case Law::duality:
        case Law::round_trip: return 1e-12;
    }
    return 1e-9;
}

int operand_count(Law law) {
    switch (law) {
        case Law::commutativity: return 2;
        case Law::associativity: return 3;
        case Law::duality:
        case Law::round_trip: return 1;
    }
    return 1;
}

// Deviation for one trial's operands; throws Error when the trial cannot be
// completed (total conflict, pseudo-bpa intermediate).
double law_deviation(Law law, Rule rule, const std::vector<MassFunction>& ops,
                     const TpmConfig& cfg, SubsetIndex* worst_subset) {
    switch (law) {
        case Law::commutativity: {
            const MassFunction ab = combine_with(rule, ops[0], ops[1], cfg);
            const MassFunction ba = combine_with(rule, ops[1], ops[0], cfg);
            return max_abs_diff(ab, ba, worst_subset);
        }
        case Law::associativity: {
            const MassFunction l =
                combine_with(rule, combine_with(rule, ops[0], ops[1], cfg), ops[2], cfg);
            const MassFunction r =
                combine_with(rule, ops[0], combine_with(rule, ops[1], ops[2], cfg), cfg);
            return max_abs_diff(l, r, worst_subset);
        }
        case Law::duality: {
            const MassFunction& m = ops[0];
            const BeliefView bel = mass_to_belief(m);
            const PlausibilityView pl = mass_to_plausibility(m);
            const SubsetIndex full = m.frame()->full_set();
            double worst = 0.0;
            SubsetIndex at = 0;
            for (SubsetIndex s = 0; s < m.values().size(); ++s) {
                const double d = std::abs(bel.values[s] + pl.values[full ^ s] - m.one_total());
                if (d > worst) {
                    worst = d;
                    at = s;
                }
            }
            if (worst_subset != nullptr) *worst_subset = at;
            return worst;
        }
        case Law::round_trip: {
            const MassFunction& m = ops[0];
            const MassFunction via_bel = belief_to_mass(mass_to_belief(m));
            const MassFunction via_pl = plausibility_to_mass(mass_to_plausibility(m));
            const MassFunction via_q = commonality_to_mass(mass_to_commonality(m));
            SubsetIndex at = 0;
            double worst = max_abs_diff(via_bel, m, &at);
            SubsetIndex at2 = 0;
            const double d2 = max_abs_diff(via_pl, m, &at2);
            if (d2 > worst) {
                worst = d2;
                at = at2;
            }
            const double d3 = max_abs_diff(via_q, m, &at2);
            if (d3 > worst) {
                worst = d3;
                at = at2;
            }
            if (worst_subset != nullptr) *worst_subset = at;
            return worst;
        }
    }
    return 0.0;
}

// Greedy shrink: repeatedly drop a focal set (renormalizing when the law
// needs normalized operands) while the violation persists.
std::vector<MassFunction> minimize_counterexample(Law law, Rule rule,
                                                  std::vector<MassFunction> ops,
                                                  const TpmConfig& cfg, double tol,
                                                  double* deviation,
                                                  SubsetIndex* worst_subset) {
    const bool renorm = law == Law::commutativity || law == Law::associativity;
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t oi = 0; oi < ops.size() && !improved; ++oi) {
            const auto& vals = ops[oi].values();
            int focal = 0;
            for (SubsetIndex s = 1; s < vals.size(); ++s) {
                if (vals[s] != 0.0) ++focal;
            }
            if (focal <= 1) continue;
            for (SubsetIndex s = 1; s < vals.size() && !improved; ++s) {
                if (vals[s] == 0.0) continue;
                std::vector<double> reduced(vals.begin(), vals.end());
                reduced[s] = 0.0;
                std::vector<MassFunction> trial = ops;
                try {
                    MassFunction cut = validate_bpa(std::move(reduced), ops[oi].frame());
                    trial[oi] = renorm ? normalize(cut) : cut;
                    SubsetIndex at = 0;
                    const double dev = law_deviation(law, rule, trial, cfg, &at);
                    if (dev > tol) {
                        ops = std::move(trial);
                        *deviation = dev;
                        *worst_subset = at;
                        improved = true;
                    }
                } catch (const Error&) {
                    // removal made the trial invalid or uncombinable; keep the set
                }
            }
        }
    }
    return ops;
}

}  // namespace

LawCheckReport check_law(Law law, Rule rule, int trials, std::uint64_t seed, int frame_size,
                         const CheckConfig& cfg) {
    if (trials < 1) fail(Errc::invalid_argument, "need at least one trial");
    const FramePtr frame = law_frame(frame_size);
    const int ops_needed = operand_count(law);

    LawCheckReport report;
    report.law = law;
    report.rule = rule;
    report.generator = "splitmix64";
    report.seed = seed;
    report.frame_size = frame_size;
    report.trials = trials;
    report.tolerance = cfg.tolerance > 0.0 ? cfg.tolerance : default_tolerance(law, rule);

    std::optional<Counterexample> worst_case;
    for (int t = 0; t < trials; ++t) {
        std::vector<MassFunction> ops;
        ops.reserve(static_cast<std::size_t>(ops_needed));
        for (int j = 0; j < ops_needed; ++j) {
            const std::uint64_t s = operand_seed(seed, t, j);
            // The transform identities must hold for pseudo-bpas too, so those
            // laws alternate generators; combination rules take proper bpas.
            if ((law == Law::duality || law == Law::round_trip) && t % 2 == 1) {
                ops.push_back(random_pseudo_bpa(frame, s));
            } else {
                ops.push_back(random_bpa(frame, s, cfg.focal_density));
            }
        }
        SubsetIndex at = 0;
        double dev = 0.0;
        try {
            dev = law_deviation(law, rule, ops, cfg.tpm, &at);
        } catch (const Error&) {
            ++report.skipped;
            continue;
        }
        ++report.completed;
        if (dev > report.max_deviation) report.max_deviation = dev;
        if (dev > report.tolerance &&
            (!worst_case.has_value() || dev > worst_case->deviation)) {
            worst_case = Counterexample{ops, at, dev, t};
        }
    }

    report.violated = worst_case.has_value();
    if (worst_case.has_value()) {
        worst_case->operands =
            minimize_counterexample(law, rule, std::move(worst_case->operands), cfg.tpm,
                                    report.tolerance, &worst_case->deviation,
                                    &worst_case->worst_subset);
        report.counterexample = std::move(worst_case);
        if (cfg.emit_dir.has_value()) {
            namespace fs = std::filesystem;
            fs::create_directories(*cfg.emit_dir);
            const std::string stem =
                std::string(law_name(law)) + "-" + rule_name(rule);
            const Counterexample& ce = *report.counterexample;
            std::string operand_names;
            for (std::size_t i = 0; i < ce.operands.size(); ++i) {
                const fs::path p = *cfg.emit_dir / (stem + "-operand" + std::to_string(i + 1) +
                                                    ".bpa");
                std::ofstream f(p);
                f << render_evidence(ce.operands[i]);
                report.emitted_files.push_back(p);
                if (!operand_names.empty()) operand_names += ' ';
                operand_names += p.filename().string();
            }
            const fs::path mp = *cfg.emit_dir / (stem + "-manifest.txt");
            std::ofstream mf(mp);
            mf << "law: " << law_name(law) << "\n"
               << "rule: " << rule_name(rule) << "\n"
               << "generator: " << report.generator << "\n"
               << "seed: " << seed << "\n"
               << "trial: " << ce.trial << "\n"
               << "tolerance: " << format_decimal(report.tolerance) << "\n"
               << "deviation: " << format_decimal(ce.deviation) << "\n"
               << "worst subset: " << frame->format_subset(ce.worst_subset) << "\n"
               << "operands: " << operand_names << "\n";
            report.emitted_files.push_back(mp);
        }
    }
    return report;
}

}  // namespace evcalc
