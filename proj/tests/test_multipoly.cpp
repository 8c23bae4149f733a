#include "corpus.hpp"

#include "ncample/errors.hpp"
#include "ncample/multipoly.hpp"

#include <doctest.h>

using namespace ncample;

namespace {

/// Direct evaluation of a monomial-basis polynomial over the rationals.
Rational eval_monomials(const MonomialTerms& terms, std::span<const Integer> n) {
    Rational out = 0;
    for (const auto& [e, c] : terms) {
        Rational term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned k = 0; k < e[i]; ++k) term *= n[i];
        out += term;
    }
    return out;
}

MultiPoly random_poly(std::size_t s, unsigned max_degree, corpus::Rng& rng) {
    MultiPoly p(s);
    for (int t = 0; t < 5; ++t) {
        Exponents e(s, 0);
        unsigned budget = static_cast<unsigned>(rng.uniform(0, max_degree));
        for (unsigned b = 0; b < budget; ++b) ++e[rng.index(s)];
        p.add_term(e, rng.uniform(-3, 3));
    }
    return p;
}

/// Calls f on every point of [lo, hi]^s.
template <typename F>
void for_grid(std::size_t s, long lo, long hi, F&& f) {
    IntVector n(s, Integer(lo));
    while (true) {
        f(std::span<const Integer>(n));
        std::size_t i = s;
        while (i > 0 && n[i - 1] == hi) n[--i] = lo;
        if (i == 0) return;
        ++n[i - 1];
    }
}

}  // namespace

TEST_CASE("binomial basis conversion round trip") {
    MonomialTerms chi{{{2}, Rational(1, 2)}, {{1}, Rational(3, 2)}, {{0}, Rational(1)}};
    const MultiPoly p = from_monomials(1, chi);
    CHECK(p.coefficient({2}) == 1);
    CHECK(p.coefficient({1}) == 2);
    CHECK(p.coefficient({0}) == 1);
    CHECK(p.evaluate({3}) == 10);
    CHECK(to_monomials(p) == chi);
    CHECK_THROWS_AS(from_monomials(1, {{{1}, Rational(1, 2)}}), NotIntegerValued);
}

TEST_CASE("arithmetic agrees with pointwise evaluation") {
    corpus::Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t s = 1 + rng.index(3);
        const MultiPoly p = random_poly(s, 3, rng), q = random_poly(s, 3, rng);
        const MultiPoly sum = p + q, diff = p - q, prod = p * q, scaled = p * Integer(-7);
        const MonomialTerms mp = to_monomials(p);
        for_grid(s, -3, 4, [&](std::span<const Integer> n) {
            const Integer pv = p.evaluate(n), qv = q.evaluate(n);
            CHECK(Rational(pv) == eval_monomials(mp, n));
            CHECK(sum.evaluate(n) == pv + qv);
            CHECK(diff.evaluate(n) == pv - qv);
            CHECK(prod.evaluate(n) == pv * qv);
            CHECK(scaled.evaluate(n) == -7 * pv);
        });
        CHECK(from_monomials(s, mp) == p);
    }
}

TEST_CASE("shift, compose and binomial_of") {
    corpus::Rng rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t s = 1 + rng.index(3);
        const MultiPoly p = random_poly(s, 3, rng);
        IntVector t(s);
        for (auto& x : t) x = rng.uniform(-4, 4);
        const MultiPoly shifted = shift(p, t);

        const std::size_t r = 1 + rng.index(2);
        std::vector<MultiPoly> subs;
        for (std::size_t j = 0; j < s; ++j) subs.push_back(random_poly(r, 2, rng));
        const MultiPoly composed = compose(p, subs);
        const MultiPoly c2 = binomial_of(subs[0], 2);

        for_grid(s, -2, 3, [&](std::span<const Integer> n) {
            IntVector moved(s);
            for (std::size_t i = 0; i < s; ++i) moved[i] = n[i] + t[i];
            CHECK(shifted.evaluate(n) == p.evaluate(moved));
        });
        for_grid(r, -2, 3, [&](std::span<const Integer> n) {
            IntVector inner(s);
            for (std::size_t j = 0; j < s; ++j) inner[j] = subs[j].evaluate(n);
            CHECK(composed.evaluate(n) == p.evaluate(inner));
            CHECK(c2.evaluate(n) == binomial(subs[0].evaluate(n), 2));
        });
    }
}

TEST_CASE("box_sum matches literal summation") {
    corpus::Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t s = 1 + rng.index(3);
        const MultiPoly p = random_poly(s, 3, rng);
        const MultiPoly f = box_sum(p);
        CHECK(f.nvars() == 1);
        for (long n = 0; n <= 6; ++n) {
            Integer literal = 0;
            if (n >= 1) for_grid(s, 1, n, [&](std::span<const Integer> m) { literal += p.evaluate(m); });
            CHECK(f.evaluate({n}) == literal);
        }
    }
    // n(n+3)/2 for the sum of m+1.
    const MultiPoly h = MultiPoly::variable(1, 0) + MultiPoly::constant(1, 1);
    for (long n = 1; n <= 8; ++n) CHECK(box_sum(h).evaluate({n}) == n * (n + 3) / 2);
}

TEST_CASE("interpolation recovers polynomials") {
    corpus::Rng rng(24);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t s = 1 + rng.index(3);
        const MultiPoly p = random_poly(s, 3, rng);
        std::vector<unsigned> degrees(s, 3);
        const MultiPoly q = interpolate(std::span<const unsigned>(degrees), [&](std::span<const Integer> n) {
            return p.evaluate(n);
        });
        CHECK(q == p);
    }
}

TEST_CASE("eventually_positive on reference polynomials") {
    const MultiPoly n1 = MultiPoly::variable(2, 0), n2 = MultiPoly::variable(2, 1);
    const MultiPoly one = MultiPoly::constant(2, 1);

    const auto yes = eventually_positive((n1 + one) * (n2 + one), 16);
    CHECK(yes.kind == PositivityResult::Kind::Yes);
    CHECK(yes.start == IntVector{0, 0});

    const auto diff = eventually_positive(n1 - n2, 16);
    REQUIRE(diff.kind == PositivityResult::Kind::No);
    CHECK_FALSE(diff.witness.vanishing);

    const auto square = eventually_positive((n1 - n2) * (n1 - n2), 16);
    REQUIRE(square.kind == PositivityResult::Kind::No);
    CHECK(square.witness.vanishing);

    const MultiPoly n = MultiPoly::variable(1, 0);
    const auto late = eventually_positive(n * n - n * Integer(10), 16);
    CHECK(late.kind == PositivityResult::Kind::Yes);
    CHECK(late.start == IntVector{11});

    CHECK(eventually_positive(n - MultiPoly::constant(1, 100), 16).kind == PositivityResult::Kind::Unknown);
    CHECK_THROWS_AS(eventually_positive(n, 0), std::invalid_argument);
}

TEST_CASE("eventually_positive certificates are sound") {
    corpus::Rng rng(25);
    int yes = 0, no = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t s = 1 + rng.index(3);
        MultiPoly p = random_poly(s, 2, rng);
        const auto r = eventually_positive(p, 8);
        if (r.kind == PositivityResult::Kind::Yes) {
            ++yes;
            for_grid(s, 0, 6, [&](std::span<const Integer> d) {
                IntVector m(s);
                for (std::size_t i = 0; i < s; ++i) m[i] = r.start[i] + d[i];
                CHECK(p.evaluate(m) > 0);
            });
        } else if (r.kind == PositivityResult::Kind::No) {
            ++no;
            const Ray& w = r.witness;
            for (auto d : w.direction) CHECK(d >= 1);
            for (long t = 0; t <= 20; ++t) {
                const Integer tt = w.threshold + t;
                IntVector m(s);
                for (std::size_t i = 0; i < s; ++i) m[i] = w.base[i] + tt * w.direction[i];
                if (w.vanishing) CHECK(p.evaluate(m) == 0);
                else CHECK(p.evaluate(m) < 0);
            }
        }
    }
    CHECK(yes > 20);
    CHECK(no > 20);
}

TEST_CASE("sign_threshold bounds the last sign change") {
    corpus::Rng rng(26);
    for (int trial = 0; trial < 50; ++trial) {
        const MultiPoly g = random_poly(1, 4, rng);
        if (g.is_zero()) continue;
        const Integer threshold = sign_threshold(g);
        const long degree = g.total_degree();
        const Integer lead = g.coefficient({static_cast<unsigned>(degree)});
        for (long t = 0; t <= 30; ++t) {
            const Integer x = threshold + t;
            const Integer v = g.evaluate(std::span<const Integer>(&x, 1));
            CHECK(sgn(v) == sgn(lead));
        }
    }
}
