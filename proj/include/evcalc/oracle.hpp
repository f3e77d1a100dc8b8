#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "evcalc/frame.hpp"
#include "evcalc/mass.hpp"
#include "evcalc/tpm.hpp"

namespace evcalc {

// Deterministic, platform-independent generator (splitmix64).  Identified by
// name in LawCheckReport so recorded seeds stay replayable everywhere.
struct SplitMix64 {
    std::uint64_t state = 0;
    std::uint64_t next();
    double uniform();  // [0, 1)
};

// Random nonnegative normalized bpa: each nonempty subset becomes focal with
// probability focal_density, focal weights uniform, then normalized.  If the
// draw leaves nothing focal, the full set gets mass 1 so ONE > 0 always.
MassFunction random_bpa(FramePtr frame, std::uint64_t seed, double focal_density = 0.5);

// Random pseudo-bpa: draws Q uniformly, inverts to masses, rescales so the
// total absolute mass stays small (keeps float noise below test tolerances),
// and lifts m(full) until ONE >= 0.1.  Some masses are typically negative
// while every commonality is nonnegative by construction.
MassFunction random_pseudo_bpa(FramePtr frame, std::uint64_t seed);

// Membership test for the corner-point polytope of a restricted plausibility:
// p >= 0, sum over members of A of p <= Pl(A) for every A, with equality on
// the full carrier (all within tol).
bool polytope_member(std::span<const double> p, const RestrictedPlausibility& rp,
                     double tol = 1e-9);

// Independent maximizers for max p.q over the two candidate polytopes.
// Alternating best-response ascent from every corner-pair start; greedy best
// response orders elements by descending partner weight.
double oracle_alternating_max(const RestrictedPlausibility& a,
                              const RestrictedPlausibility& b,
                              const TpmConfig& cfg = {});

// Exhaustive grid search for carriers of size <= 3 (CarrierTooLarge above):
// feasible grid points at the given resolution, last coordinate eliminated
// via the equality constraint.  Degenerate polytopes thinner than the grid
// step can contain no grid point at all; that reports as nullopt rather than
// a made-up value.
std::optional<double> oracle_grid_max(const RestrictedPlausibility& a,
                                      const RestrictedPlausibility& b, double resolution);

// Best lower bound the oracles can certify: alternating ascent, refined by
// the grid when the carrier is small enough and resolution > 0.
double oracle_bilinear_max(const RestrictedPlausibility& a,
                           const RestrictedPlausibility& b,
                           double resolution = 0.0, const TpmConfig& cfg = {});

enum class Law { commutativity, associativity, duality, round_trip };
enum class Rule { dempster, tpm };

const char* law_name(Law law);
const char* rule_name(Rule rule);

struct Counterexample {
    std::vector<MassFunction> operands;  // minimized: fewest focal sets that still violate
    SubsetIndex worst_subset = 0;
    double deviation = 0.0;
    int trial = 0;
};

struct LawCheckReport {
    Law law = Law::commutativity;
    Rule rule = Rule::tpm;
    std::string generator;       // "splitmix64"
    std::uint64_t seed = 0;
    int frame_size = 0;
    int trials = 0;
    int completed = 0;           // trials that produced a comparable result
    int skipped = 0;             // pseudo-bpa intermediates / total conflict
    double max_deviation = 0.0;  // over completed trials
    double tolerance = 0.0;
    bool violated = false;
    std::optional<Counterexample> counterexample;         // worst violating trial
    std::vector<std::filesystem::path> emitted_files;     // when emission dir set
};

struct CheckConfig {
    double tolerance = 0.0;      // 0 -> per-law default
    double focal_density = 0.5;
    std::optional<std::filesystem::path> emit_dir;  // write counterexample files here
    TpmConfig tpm;
};

// Seeded law check over random inputs.  Violations are findings, not errors:
// the report carries the worst (greedily minimized) counterexample, and when
// emit_dir is set, replayable evidence files plus a manifest are written.
LawCheckReport check_law(Law law, Rule rule, int trials, std::uint64_t seed,
                         int frame_size, const CheckConfig& cfg = {});

// Max |difference| between ((m1 * m2) * m3) ... left fold and the right fold
// m1 * (m2 * (...)) over all subsets.  Shared by check_law(associativity) and
// the CLI --assoc-check flag so both always agree.
double fold_deviation(const std::vector<MassFunction>& operands, Rule rule,
                      const TpmConfig& cfg = {});

}  // namespace evcalc
