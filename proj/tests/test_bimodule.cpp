#include "corpus.hpp"
#include "oracles.hpp"

#include "ncample/errors.hpp"

#include <doctest.h>

using namespace ncample;

namespace {

BimoduleSystem pair() {
    return BimoduleSystem(builtin_scheme("P1xP1"),
                          {{DivisorClass{1, 0}, Matrix::identity(2)}, {DivisorClass{0, 1}, Matrix::identity(2)}});
}

BimoduleSystem swap_system() {
    return BimoduleSystem(builtin_scheme("P1xP1"), {{DivisorClass{1, 0}, Matrix{{0, 1}, {1, 0}}}});
}

/// Visits [0, hi]^s.
template <typename F>
void for_indices(std::size_t s, std::uint64_t hi, F&& f) {
    MultiIndex n(s, 0);
    while (true) {
        f(n);
        std::size_t i = s;
        while (i > 0 && n[i - 1] == hi) n[--i] = 0;
        if (i == 0) return;
        ++n[i - 1];
    }
}

}  // namespace

TEST_CASE("validation of the reference systems") {
    CHECK(pair().size() == 2);
    CHECK(class_at(pair(), {2, 3}) == DivisorClass{2, 3});
    CHECK(class_at(swap_system(), {3}) == DivisorClass{2, 1});
    CHECK(class_at(swap_system(), {2}) == DivisorClass{1, 1});
}

TEST_CASE("validation errors carry 1-based indices") {
    const auto q = builtin_scheme("P1xP1");
    try {
        BimoduleSystem(q, {{DivisorClass{1, 0}, Matrix::identity(2)}, {DivisorClass{0, 1}, Matrix{{2, 0}, {0, 1}}}});
        FAIL("expected NonInvertible");
    } catch (const NonInvertible& e) {
        CHECK(e.index() == 2);
    }
    try {
        BimoduleSystem(q, {{DivisorClass{1, 0}, Matrix{{1, 1}, {0, 1}}}, {DivisorClass{0, 1}, Matrix{{1, 0}, {1, 1}}}});
        FAIL("expected MatrixCommutationFail");
    } catch (const MatrixCommutationFail& e) {
        CHECK(e.first() == 1);
        CHECK(e.second() == 2);
    }
    // Same matrices, classes (1,0) + S(0,1) = (1,1) but (0,1) + S(1,0) = (0,2).
    const Matrix s{{0, 1}, {1, 0}};
    CHECK_THROWS_AS(BimoduleSystem(q, {{DivisorClass{1, 0}, s}, {DivisorClass{0, 1}, s}}), ClassCommutationFail);
    CHECK_THROWS_AS(BimoduleSystem(q, {{DivisorClass{1}, Matrix::identity(2)}}), ParseError);
    CHECK_THROWS_AS(BimoduleSystem(q, {{DivisorClass{1, 0}, Matrix::identity(3)}}), ParseError);
    CHECK_THROWS_AS(BimoduleSystem(q, {}), ParseError);
    CHECK_THROWS_AS(class_at(pair(), {1}), ArityError);
}

TEST_CASE("class_at agrees with the group law on the corpus") {
    for (const auto& e : corpus::geometric_corpus(41, 60)) {
        CAPTURE(e.label);
        for_indices(e.sys.size(), 4, [&](const MultiIndex& n) {
            CHECK(class_at(e.sys, n).coords == oracle::class_by_group_law(e.sys, n));
        });
    }
}

TEST_CASE("symbolic_class agrees with class_at on unipotent systems") {
    for (const auto& e : corpus::unipotent_corpus(42, 40)) {
        CAPTURE(e.label);
        const auto sym = symbolic_class(e.sys);
        for_indices(e.sys.size(), 6, [&](const MultiIndex& n) {
            IntVector point(n.begin(), n.end());
            const DivisorClass c = class_at(e.sys, n);
            for (std::size_t j = 0; j < e.sys.rho(); ++j) CHECK(sym[j].evaluate(point) == c.coords[j]);
        });
    }
    try {
        symbolic_class(swap_system());
        FAIL("expected UnipotentRequired");
    } catch (const UnipotentRequired& e) {
        CHECK(e.index() == 1);
    }
}

TEST_CASE("constructors satisfy their class identities") {
    for (const auto& e : corpus::geometric_corpus(43, 40)) {
        CAPTURE(e.label);
        const auto& sys = e.sys;
        const std::size_t s = sys.size();
        const BimoduleSystem d = dual(sys);
        CHECK(dual(d) == sys);
        MultiIndex two(s, 2);
        const BimoduleSystem v = veronese(sys, two);
        const BimoduleSystem comb = combined_single(sys, MultiIndex(s, 1));
        for_indices(s, 3, [&](const MultiIndex& n) {
            const DivisorClass c = class_at(sys, n);
            // dual class = P(n)^{-1} class(n)
            CHECK(class_at(d, n).coords == inverse(action_power(sys, n)) * std::span<const Integer>(c.coords));
            MultiIndex doubled(n);
            for (auto& x : doubled) x *= 2;
            CHECK(class_at(v, n) == class_at(sys, doubled));
        });
        for (std::uint64_t k = 0; k <= 4; ++k) CHECK(class_at(comb, {k}) == class_at(sys, MultiIndex(s, k)));
        if (s == 1) {
            const BimoduleSystem r = rees(sys);
            for_indices(2, 4, [&](const MultiIndex& n) { CHECK(class_at(r, n) == class_at(sys, {n[0] + n[1]})); });
        } else {
            CHECK_THROWS_AS(rees(sys), ArityError);
        }
    }
    CHECK_THROWS_AS(veronese(pair(), MultiIndex{0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(veronese(pair(), MultiIndex{1}), ArityError);
}

TEST_CASE("product system is the direct sum") {
    const BimoduleSystem x = swap_system();
    const BimoduleSystem y = pair();
    const BimoduleSystem xy = product(x, y);
    CHECK(xy.size() == 3);
    CHECK(xy.rho() == 4);
    REQUIRE(xy.notes().size() == 1);
    CHECK(xy.notes()[0] == std::string(kDirectSumNote));
    CHECK(product(xy, x).notes().size() == 1);
    for_indices(3, 3, [&](const MultiIndex& n) {
        const DivisorClass cx = class_at(x, {n[0]});
        const DivisorClass cy = class_at(y, {n[1], n[2]});
        IntVector joined = cx.coords;
        joined.insert(joined.end(), cy.coords.begin(), cy.coords.end());
        CHECK(class_at(xy, n).coords == joined);
    });
}
