#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "evcalc/errors.hpp"
#include "evcalc/frame.hpp"
#include "evcalc/mass.hpp"
#include "evcalc/multivariate.hpp"
#include "evcalc/oracle.hpp"
#include "testutil.hpp"

using namespace evcalc;
using testutil::error_code_of;

namespace {

ProductFrame two_vars() {
    return ProductFrame{{{"X1", {"a", "b"}}, {"X2", {"s", "t"}}}};
}

ProductFrame three_vars() {
    return ProductFrame{{{"X", {"a", "b"}}, {"Y", {"s", "t"}}, {"Z", {"u", "v"}}}};
}

}  // namespace

TEST_CASE("product frames enumerate tuples last-variable-fastest") {
    const ProductFrame pf = two_vars();
    const std::vector<std::string> expected = {"a|s", "a|t", "b|s", "b|t"};
    CHECK(pf.frame()->labels() == expected);
    CHECK(pf.frame()->size() == 4);

    CHECK(pf.variable_index("X1") == 0);
    CHECK(pf.variable_index("X2") == 1);
    CHECK(pf.variable_index("nope") == -1);

    CHECK(pf.element_digits(0) == std::vector<int>{0, 0});
    CHECK(pf.element_digits(1) == std::vector<int>{0, 1});
    CHECK(pf.element_digits(2) == std::vector<int>{1, 0});
    CHECK(pf.element_digits(3) == std::vector<int>{1, 1});
}

TEST_CASE("projection keeps an outcome iff some source outcome maps to it") {
    const ProductFrame pf = two_vars();
    ProductFrame projected{{{"X1", {"a", "b"}}}};

    // {(a,s), (b,t)} = bits 0 and 3 projects onto X1 as {a, b}.
    ProductFrame out1{{{"X1", {"a"}}}};
    CHECK(project_set(pf, SubsetIndex{0b1001}, {"X1"}, &out1) == SubsetIndex{0b11});
    CHECK(out1.frame()->labels() == std::vector<std::string>{"a", "b"});

    // The empty set projects to the empty set.
    CHECK(project_set(pf, kEmptySet, {"X1"}) == kEmptySet);

    // {(a,s), (a,t)} = bits 0 and 1 projects onto X1 as {a}.
    CHECK(project_set(pf, SubsetIndex{0b0011}, {"X1"}) == SubsetIndex{0b01});

    // Projecting onto X2: {(a,s), (b,t)} covers both s and t.
    CHECK(project_set(pf, SubsetIndex{0b1001}, {"X2"}) == SubsetIndex{0b11});

    // Keeping every variable is the identity.
    CHECK(project_set(pf, SubsetIndex{0b1001}, {"X1", "X2"}) == SubsetIndex{0b1001});
}

TEST_CASE("marginalizing the worked two-variable example") {
    const ProductFrame pf = two_vars();
    // m({(a,s)}) = 0.5, m({(a,t),(b,t)}) = 0.5
    std::vector<double> values(16, 0.0);
    values[0b0001] = 0.5;
    values[0b1010] = 0.5;
    const MassFunction m = testutil::mass_of(values, pf.frame());

    ProductFrame projected{{{"X1", {"a"}}}};
    const MassFunction onto_x1 = marginalize(pf, m, {"X1"}, &projected);
    CHECK(projected.frame()->labels() == std::vector<std::string>{"a", "b"});
    CHECK(onto_x1[SubsetIndex{0b01}] == doctest::Approx(0.5).epsilon(1e-12));  // {a}
    CHECK(onto_x1[SubsetIndex{0b11}] == doctest::Approx(0.5).epsilon(1e-12));  // {a,b}
    CHECK(onto_x1[kEmptySet] == 0.0);
    CHECK(onto_x1[SubsetIndex{0b10}] == 0.0);
}

TEST_CASE("a deterministic diagonal marginalizes to certainty") {
    const ProductFrame pf = two_vars();
    std::vector<double> values(16, 0.0);
    values[0b1001] = 1.0;  // {(a,s),(b,t)}
    const MassFunction m = testutil::mass_of(values, pf.frame());
    const MassFunction onto_x1 = marginalize(pf, m, {"X1"});
    CHECK(onto_x1[SubsetIndex{0b11}] == 1.0);
}

TEST_CASE("marginalizing onto all variables is the identity") {
    const ProductFrame pf = two_vars();
    const MassFunction m = random_bpa(pf.frame(), 42);
    const MassFunction same = marginalize(pf, m, {"X1", "X2"});
    CHECK(testutil::max_abs_diff(same.values(), m.values()) == 0.0);
}

TEST_CASE("marginalization preserves the total mass") {
    const ProductFrame pf = two_vars();
    const MassFunction scaled = vacuous(pf.frame(), 2.0);
    const MassFunction onto = marginalize(pf, scaled, {"X2"});
    CHECK(onto.one_total() == doctest::Approx(2.0).epsilon(1e-12));
    // The vacuous bpa marginalizes to the vacuous bpa.
    CHECK(onto[SubsetIndex{0b11}] == doctest::Approx(2.0).epsilon(1e-12));

    for (std::uint64_t seed = 3; seed <= 8; ++seed) {
        const MassFunction m = random_bpa(pf.frame(), seed);
        CHECK(marginalize(pf, m, {"X1"}).one_total() ==
              doctest::Approx(m.one_total()).epsilon(1e-12));
    }
}

TEST_CASE("successive marginalization commutes with direct projection") {
    const ProductFrame pf = three_vars();
    for (std::uint64_t seed = 11; seed <= 16; ++seed) {
        const MassFunction m = random_bpa(pf.frame(), seed);

        ProductFrame xy{{{"X", {"a"}}}};
        const MassFunction step1 = marginalize(pf, m, {"X", "Y"}, &xy);
        const MassFunction chained = marginalize(xy, step1, {"X"});
        const MassFunction direct = marginalize(pf, m, {"X"});
        CHECK(testutil::max_abs_diff(chained.values(), direct.values()) <= 1e-12);
    }
}

TEST_CASE("target variables may be named in any order but only once") {
    const ProductFrame pf = three_vars();
    const MassFunction m = random_bpa(pf.frame(), 5);
    // Result keeps source order (X then Y) regardless of how targets are named.
    ProductFrame a{{{"X", {"a"}}}};
    ProductFrame b{{{"X", {"a"}}}};
    const MassFunction m1 = marginalize(pf, m, {"X", "Y"}, &a);
    const MassFunction m2 = marginalize(pf, m, {"Y", "X"}, &b);
    CHECK(a.frame()->labels() == b.frame()->labels());
    CHECK(testutil::max_abs_diff(m1.values(), m2.values()) == 0.0);

    CHECK(error_code_of([&] { marginalize(pf, m, {"X", "X"}); }) == Errc::invalid_argument);
    CHECK(error_code_of([&] { marginalize(pf, m, {"W"}); }) == Errc::unknown_variable);
    CHECK(error_code_of([&] { project_set(pf, kEmptySet, {"W"}); }) == Errc::unknown_variable);
}

TEST_CASE("projection validates its subset and frame") {
    const ProductFrame pf = two_vars();
    CHECK(error_code_of([&] { project_set(pf, SubsetIndex{1u << 5}, {"X1"}); }) ==
          Errc::invalid_argument);
    const MassFunction foreign = vacuous(testutil::rgb());
    CHECK(error_code_of([&] { marginalize(pf, foreign, {"X1"}); }) == Errc::frame_mismatch);
}

TEST_CASE("product frame construction is validated") {
    CHECK(error_code_of([] { ProductFrame{{}}; }) == Errc::invalid_argument);
    CHECK(error_code_of([] { ProductFrame{{{"", {"a"}}}}; }) == Errc::invalid_argument);
    CHECK(error_code_of([] { ProductFrame{{{"X", {}}}}; }) == Errc::invalid_argument);
    CHECK(error_code_of([] {
              ProductFrame{{{"X", {"a", "b"}}, {"X", {"c", "d"}}}};
          }) == Errc::invalid_argument);
    // 2*2*2*2*2*2*2*2*2*2*2*2*2 = 8192 elements > 24: too large for a frame.
    std::vector<Variable> many;
    for (int i = 0; i < 13; ++i) many.push_back({"V" + std::to_string(i), {"0", "1"}});
    CHECK(error_code_of([&] { ProductFrame{many}; }) == Errc::invalid_argument);
}
