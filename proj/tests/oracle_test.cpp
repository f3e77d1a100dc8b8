#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "evcalc/errors.hpp"
#include "evcalc/frame.hpp"
#include "evcalc/io.hpp"
#include "evcalc/mass.hpp"
#include "evcalc/oracle.hpp"
#include "evcalc/tpm.hpp"
#include "evcalc/transforms.hpp"
#include "testutil.hpp"

using namespace evcalc;
using testutil::error_code_of;

TEST_CASE("the generator reproduces the published splitmix64 sequence") {
    SplitMix64 gen{0};
    CHECK(gen.next() == 0xE220A8397B1DCDAFULL);
    CHECK(gen.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(gen.next() == 0x06C45D188009454FULL);

    SplitMix64 u{12345};
    for (int i = 0; i < 1000; ++i) {
        const double x = u.uniform();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
}

TEST_CASE("random bpas are deterministic and valid") {
    const FramePtr f = testutil::rgb();
    const MassFunction m1 = random_bpa(f, 99);
    const MassFunction m2 = random_bpa(f, 99);
    CHECK(testutil::max_abs_diff(m1.values(), m2.values()) == 0.0);
    const MassFunction m3 = random_bpa(f, 100);
    CHECK(testutil::max_abs_diff(m1.values(), m3.values()) > 0.0);

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const MassFunction m = random_bpa(f, seed);
        CHECK(m[kEmptySet] == 0.0);
        CHECK(m.all_nonnegative());
        CHECK(std::abs(m.one_total() - 1.0) <= 1e-12);
    }
}

TEST_CASE("an empty focality draw falls back to the vacuous bpa") {
    const FramePtr f = testutil::rgb();
    const MassFunction m = random_bpa(f, 7, 1e-9);
    CHECK(testutil::max_abs_diff(m.values(), vacuous(f).values()) == 0.0);
}

TEST_CASE("the focal density must lie in (0, 1]") {
    const FramePtr f = testutil::rgb();
    CHECK(error_code_of([&] { random_bpa(f, 1, 0.0); }) == Errc::invalid_argument);
    CHECK(error_code_of([&] { random_bpa(f, 1, -0.5); }) == Errc::invalid_argument);
    CHECK(error_code_of([&] { random_bpa(f, 1, 1.5); }) == Errc::invalid_argument);
    CHECK(error_code_of([&] { random_bpa(nullptr, 1); }) == Errc::invalid_argument);
    const MassFunction dense = random_bpa(f, 1, 1.0);
    CHECK(std::abs(dense.one_total() - 1.0) <= 1e-12);
}

TEST_CASE("random pseudo-bpas have negative masses but nonnegative commonalities") {
    const FramePtr f = testutil::rgb();
    const MassFunction m1 = random_pseudo_bpa(f, 4);
    const MassFunction m2 = random_pseudo_bpa(f, 4);
    CHECK(testutil::max_abs_diff(m1.values(), m2.values()) == 0.0);

    bool any_negative = false;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const MassFunction m = random_pseudo_bpa(f, seed);
        CHECK(m[kEmptySet] == 0.0);
        CHECK(m.one_total() >= 0.1 - 1e-12);
        const std::vector<double> q = testutil::brute_q(m.values());
        for (double v : q) CHECK(v >= -1e-12);
        if (!m.all_nonnegative()) any_negative = true;
    }
    CHECK(any_negative);
}

TEST_CASE("polytope membership separates corners from outsiders") {
    const PlausibilityView pl = mass_to_plausibility(testutil::mass_a());
    const RestrictedPlausibility rp = restrict_to(pl, testutil::RB);

    const std::vector<double> corner = {0.25, 0.5};
    CHECK(polytope_member(corner, rp));
    const std::vector<double> wrong_total = {0.5, 0.5};
    CHECK_FALSE(polytope_member(wrong_total, rp));
    const std::vector<double> over_cap = {0.6, 0.15};
    CHECK_FALSE(polytope_member(over_cap, rp));
    const std::vector<double> negative = {-0.1, 0.85};
    CHECK_FALSE(polytope_member(negative, rp));
    const std::vector<double> interior = {0.4, 0.35};
    CHECK(polytope_member(interior, rp));

    const std::vector<double> short_point = {0.75};
    CHECK(error_code_of([&] { polytope_member(short_point, rp); }) ==
          Errc::dimension_mismatch);
}

TEST_CASE("every enumerated candidate is a polytope member") {
    for (int n = 1; n <= 3; ++n) {
        std::vector<std::string> labels;
        for (int i = 0; i < n; ++i) labels.emplace_back(1, static_cast<char>('a' + i));
        const FramePtr f = Frame::make(labels);
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const PlausibilityView pl = mass_to_plausibility(random_bpa(f, seed * 13));
            for (SubsetIndex carrier = 1; carrier <= f->full_set(); ++carrier) {
                const RestrictedPlausibility rp = restrict_to(pl, carrier);
                for (const CandidateMassVector& cand : enumerate_candidates(rp)) {
                    CHECK(polytope_member(cand.masses, rp));
                }
            }
        }
    }
}

TEST_CASE("alternating ascent agrees with the candidate enumeration") {
    const FramePtr f = testutil::rgb();
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const PlausibilityView p1 = mass_to_plausibility(random_bpa(f, seed * 7));
        const PlausibilityView p2 = mass_to_plausibility(random_bpa(f, seed * 7 + 3));
        for (SubsetIndex carrier : {SubsetIndex{3}, SubsetIndex{5}, SubsetIndex{7}}) {
            const RestrictedPlausibility a = restrict_to(p1, carrier);
            const RestrictedPlausibility b = restrict_to(p2, carrier);
            CHECK(std::abs(oracle_alternating_max(a, b) - bilinear_value(a, b)) <= 1e-9);
        }
    }
}

TEST_CASE("identical certainties have corner value one") {
    const FramePtr f = testutil::rgb();
    const MassFunction red = testutil::mass_of({0, 1, 0, 0, 0, 0, 0, 0}, f);
    const PlausibilityView pl = mass_to_plausibility(red);
    const RestrictedPlausibility rp = restrict_to(pl, testutil::RGB);
    CHECK(oracle_alternating_max(rp, rp) == 1.0);
}

TEST_CASE("the grid oracle brackets the worked example") {
    const PlausibilityView pa = mass_to_plausibility(testutil::mass_a());
    const PlausibilityView pb = mass_to_plausibility(testutil::mass_b());

    const auto rb = oracle_grid_max(restrict_to(pa, testutil::RB),
                                    restrict_to(pb, testutil::RB), 0.01);
    REQUIRE(rb.has_value());
    CHECK(std::abs(*rb - 0.45) <= 1e-6);

    const auto full = oracle_grid_max(restrict_to(pa, testutil::RGB),
                                      restrict_to(pb, testutil::RGB), 0.01);
    REQUIRE(full.has_value());
    CHECK(*full >= 0.45 - 0.03);
    CHECK(*full <= 0.45 + 1e-6);

    const auto single = oracle_grid_max(restrict_to(pa, testutil::G),
                                        restrict_to(pb, testutil::G), 0.01);
    REQUIRE(single.has_value());
    CHECK(std::abs(*single - 0.25 * 0.3) <= 1e-9);
}

TEST_CASE("a polytope thinner than the grid step yields no value") {
    const FramePtr ab = Frame::make({"a", "b"});
    // Inconsistent on purpose: the equality total is 1 but each coordinate is
    // capped at 0.1, so no feasible point exists at any resolution.
    const RestrictedPlausibility thin{ab, 3, {0, 1}, {0, 0.1, 0.1, 1.0}};
    const RestrictedPlausibility ok = restrict_to(
        mass_to_plausibility(vacuous(ab)), SubsetIndex{3});
    CHECK_FALSE(oracle_grid_max(thin, thin, 0.01).has_value());
    CHECK_FALSE(oracle_grid_max(thin, ok, 0.01).has_value());
}

TEST_CASE("the grid oracle validates its inputs") {
    const PlausibilityView pa = mass_to_plausibility(testutil::mass_a());
    const RestrictedPlausibility rp = restrict_to(pa, testutil::RB);
    CHECK(error_code_of([&] { oracle_grid_max(rp, rp, 0.0); }) == Errc::invalid_argument);
    CHECK(error_code_of([&] { oracle_grid_max(rp, rp, -0.1); }) == Errc::invalid_argument);

    const FramePtr big = Frame::make({"a", "b", "c", "d"});
    const RestrictedPlausibility wide =
        restrict_to(mass_to_plausibility(vacuous(big)), big->full_set());
    CHECK(error_code_of([&] { oracle_grid_max(wide, wide, 0.01); }) ==
          Errc::carrier_too_large);

    const RestrictedPlausibility other = restrict_to(pa, testutil::RG);
    CHECK(error_code_of([&] { oracle_grid_max(rp, other, 0.01); }) == Errc::frame_mismatch);
    CHECK(error_code_of([&] { oracle_alternating_max(rp, other); }) == Errc::frame_mismatch);
}

TEST_CASE("the combined oracle never exceeds the enumeration by more than noise") {
    const FramePtr f = testutil::rgb();
    for (std::uint64_t seed = 30; seed <= 42; ++seed) {
        const PlausibilityView p1 = mass_to_plausibility(random_bpa(f, seed));
        const PlausibilityView p2 = mass_to_plausibility(random_bpa(f, seed + 600));
        const RestrictedPlausibility a = restrict_to(p1, f->full_set());
        const RestrictedPlausibility b = restrict_to(p2, f->full_set());
        const double enumerated = bilinear_value(a, b);
        const double oracle = oracle_bilinear_max(a, b, 0.05);
        CHECK(oracle <= enumerated + 1e-9);
        CHECK(oracle >= enumerated - 1e-9);
    }
}

TEST_CASE("fold deviation vanishes on the worked three-body instance") {
    const std::vector<MassFunction> ops = {testutil::mass_a(), testutil::mass_b(),
                                           testutil::mass_c()};
    CHECK(fold_deviation(ops, Rule::tpm) <= 1e-9);
    CHECK(fold_deviation(ops, Rule::dempster) <= 1e-9);

    const std::vector<MassFunction> one = {testutil::mass_a()};
    CHECK(error_code_of([&] { fold_deviation(one, Rule::tpm); }) == Errc::invalid_argument);
}

TEST_CASE("law and rule names are stable") {
    CHECK(std::string(law_name(Law::commutativity)) == "commutativity");
    CHECK(std::string(law_name(Law::associativity)) == "associativity");
    CHECK(std::string(law_name(Law::duality)) == "duality");
    CHECK(std::string(law_name(Law::round_trip)) == "round-trip");
    CHECK(std::string(rule_name(Rule::dempster)) == "dempster");
    CHECK(std::string(rule_name(Rule::tpm)) == "tpm");
}

TEST_CASE("commutativity checks pass for both rules") {
    const LawCheckReport tpm = check_law(Law::commutativity, Rule::tpm, 200, 1, 3);
    CHECK_FALSE(tpm.violated);
    CHECK(tpm.max_deviation <= 1e-9);
    CHECK(tpm.tolerance == 1e-9);
    CHECK(tpm.generator == "splitmix64");
    CHECK(tpm.completed + tpm.skipped == 200);
    CHECK(tpm.completed > 0);
    CHECK_FALSE(tpm.counterexample.has_value());
    CHECK(tpm.emitted_files.empty());

    const LawCheckReport dem = check_law(Law::commutativity, Rule::dempster, 100, 7, 3);
    CHECK_FALSE(dem.violated);
    CHECK(dem.max_deviation <= 1e-12);
    CHECK(dem.tolerance == 1e-12);
}

TEST_CASE("the transform identities hold for proper and pseudo inputs") {
    const LawCheckReport dual = check_law(Law::duality, Rule::tpm, 200, 11, 4);
    CHECK_FALSE(dual.violated);
    CHECK(dual.completed == 200);
    CHECK(dual.max_deviation <= 1e-12);

    const LawCheckReport rt = check_law(Law::round_trip, Rule::dempster, 200, 13, 4);
    CHECK_FALSE(rt.violated);
    CHECK(rt.completed == 200);
    CHECK(rt.max_deviation <= 1e-12);
}

TEST_CASE("associativity holds for the intersection rule") {
    const LawCheckReport r = check_law(Law::associativity, Rule::dempster, 100, 17, 3);
    CHECK_FALSE(r.violated);
    CHECK(r.completed + r.skipped == 100);
    CHECK(r.max_deviation <= 1e-9);
}

TEST_CASE("the corner rule fails associativity and the failure is replayable") {
    const LawCheckReport r = check_law(Law::associativity, Rule::tpm, 50, 2026, 3);
    CHECK(r.violated);
    CHECK(r.max_deviation > 1e-6);
    CHECK(r.tolerance == 1e-6);
    REQUIRE(r.counterexample.has_value());
    const Counterexample& ce = *r.counterexample;
    REQUIRE(ce.operands.size() == 3);
    CHECK(ce.deviation > r.tolerance);
    // The minimized operands still violate when replayed from scratch.
    CHECK(fold_deviation(ce.operands, Rule::tpm) == doctest::Approx(ce.deviation).epsilon(1e-9));
    CHECK(fold_deviation(ce.operands, Rule::tpm) > r.tolerance);
    CHECK(r.emitted_files.empty());
}

TEST_CASE("violations can be emitted as replayable evidence files") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "evcalc-oracle-test-emit";
    fs::remove_all(dir);

    CheckConfig cfg;
    cfg.emit_dir = dir;
    const LawCheckReport r = check_law(Law::associativity, Rule::tpm, 50, 2026, 3, cfg);
    REQUIRE(r.violated);
    REQUIRE(r.emitted_files.size() == 4);
    for (const fs::path& p : r.emitted_files) CHECK(fs::exists(p));
    CHECK(r.emitted_files[0].filename().string() == "associativity-tpm-operand1.bpa");
    CHECK(r.emitted_files[3].filename().string() == "associativity-tpm-manifest.txt");

    // Re-parse the emitted operands and replay the violation.
    std::vector<MassFunction> ops;
    for (int i = 0; i < 3; ++i) ops.push_back(load_evidence(r.emitted_files[i]));
    CHECK(fold_deviation(ops, Rule::tpm) ==
          doctest::Approx(r.counterexample->deviation).epsilon(1e-9));
    CHECK(fold_deviation(ops, Rule::tpm) > r.tolerance);

    fs::remove_all(dir);
}

TEST_CASE("law checks validate their arguments") {
    CHECK(error_code_of([&] { check_law(Law::commutativity, Rule::tpm, 0, 1, 3); }) ==
          Errc::invalid_argument);
    CHECK(error_code_of([&] { check_law(Law::commutativity, Rule::tpm, 10, 1, 0); }) ==
          Errc::invalid_argument);
    CHECK(error_code_of([&] { check_law(Law::commutativity, Rule::tpm, 10, 1, 25); }) ==
          Errc::invalid_argument);
}
