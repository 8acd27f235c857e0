#include <doctest.h>

#include "coindex/verify.hpp"
#include "helpers.hpp"

using namespace coindex;
using namespace coindex::testing;

using S = MultiSeries<GaussRat>;

TEST_CASE("series arithmetic basics") {
    S one = S::constant(2, grat(1), 6);
    S z1 = S::variable(2, 0, 6);
    S z2 = S::variable(2, 1, 6);

    SUBCASE("(1+z1)(1-z1) = 1 - z1^2") {
        S prod = (one + z1) * (one - z1);
        CHECK(prod.coeff({0, 0}) == grat(1));
        CHECK(prod.coeff({2, 0}) == grat(-1));
        CHECK(prod.term_count() == 2);
    }
    SUBCASE("geometric series 1/(1+u t^2) at K=4") {
        S ut2 = S::monomial(2, {1, 2}, grat(1), 4);
        S inv = (S::constant(2, grat(1), 4) + ut2).unit_inverse();
        CHECK(inv.coeff({0, 0}) == grat(1));
        CHECK(inv.coeff({1, 2}) == grat(-1));
        // u^2 t^4 has bounded degree 6 > 4, dropped by truncation
        CHECK(inv.term_count() == 2);
    }
    SUBCASE("(1-t^3)/(1+u t^2) truncated at K=3") {
        // oracle: multiply the numerator by the geometric expansion 1 - u t^2 + ...
        S num(2, 3);
        num.set_coeff({0, 0}, grat(1));
        num.set_coeff({0, 3}, grat(-1));
        S den(2, 3);
        den.set_coeff({0, 0}, grat(1));
        den.set_coeff({1, 2}, grat(1));
        S q = num * den.unit_inverse();
        CHECK(q.coeff({0, 0}) == grat(1));
        CHECK(q.coeff({0, 3}) == grat(-1));
        CHECK(q.coeff({1, 2}) == grat(-1));
        CHECK(q.term_count() == 3);
    }
    SUBCASE("division by a non-unit throws") {
        CHECK_THROWS_AS(z1.unit_inverse(), computation_error);
    }
    SUBCASE("mode never mixes: exact stays exact") {
        S p = S::variable(2, 0) * S::variable(2, 1);
        CHECK(p.is_exact());
        CHECK(!(p * z1).is_exact());  // truncated operand wins
    }
}

TEST_CASE("series composition") {
    SUBCASE("z1^2 on (z1+z2, z2)") {
        S outer = S::monomial(2, {2, 0}, grat(1), 6);
        MapJet<GaussRat> args;
        args.comps.push_back(S::variable(2, 0, 6) + S::variable(2, 1, 6));
        args.comps.push_back(S::variable(2, 1, 6));
        S got = compose(outer, args);
        CHECK(got.coeff({2, 0}) == grat(1));
        CHECK(got.coeff({1, 1}) == grat(2));
        CHECK(got.coeff({0, 2}) == grat(1));
    }
    SUBCASE("identity substitution") {
        S outer = S::variable(2, 1, 5);
        S got = compose(outer, MapJet<GaussRat>::identity(2, 5));
        CHECK(got == outer);
    }
    SUBCASE("1/(1-z1) composed with (z1^2, z2) at K=4") {
        S geo(2, 4);
        for (int k = 0; k <= 4; ++k) geo.set_coeff({k, 0}, grat(1));
        MapJet<GaussRat> args;
        args.comps.push_back(S::monomial(2, {2, 0}, grat(1), 4));
        args.comps.push_back(S::variable(2, 1, 4));
        S got = compose(geo, args);
        CHECK(got.coeff({0, 0}) == grat(1));
        CHECK(got.coeff({2, 0}) == grat(1));
        CHECK(got.coeff({4, 0}) == grat(1));
        CHECK(got.coeff({1, 0}) == grat(0));
    }
    SUBCASE("nonzero constant args rejected for truncated outer") {
        S outer = S::variable(1, 0, 4);
        MapJet<GaussRat> args;
        args.comps.push_back(S::constant(1, grat(1), 4));
        CHECK_THROWS_AS(compose(outer, args), computation_error);
    }
}

TEST_CASE("map jet inversion") {
    SUBCASE("linear") {
        MapJet<GaussRat> m;
        m.comps.push_back(S::variable(2, 0, 4) * grat(2));
        m.comps.push_back(S::variable(2, 1, 4) + S::variable(2, 0, 4));
        auto inv = invert_map_jet(m);
        CHECK(inv.comps[0].coeff({1, 0}) == grat(1, 2));
        CHECK(inv.comps[1].coeff({1, 0}) == grat(-1, 2));
        CHECK(inv.comps[1].coeff({0, 1}) == grat(1));
    }
    SUBCASE("triangular shear (z1+z2^2, z2)") {
        MapJet<GaussRat> m;
        m.comps.push_back(S::variable(2, 0, 5) + S::monomial(2, {0, 2}, grat(1), 5));
        m.comps.push_back(S::variable(2, 1, 5));
        auto inv = invert_map_jet(m);
        CHECK(inv.comps[0].coeff({0, 2}) == grat(-1));
    }
    SUBCASE("(z1+z1z2, z2): inverse by Newton, verified by round-trip") {
        MapJet<GaussRat> m;
        m.comps.push_back(S::variable(2, 0, 4) +
                          S::variable(2, 0, 4) * S::variable(2, 1, 4));
        m.comps.push_back(S::variable(2, 1, 4));
        auto inv = invert_map_jet(m);
        // z1 (1 - z2 + z2^2 - z2^3)
        CHECK(inv.comps[0].coeff({1, 0}) == grat(1));
        CHECK(inv.comps[0].coeff({1, 1}) == grat(-1));
        CHECK(inv.comps[0].coeff({1, 2}) == grat(1));
        CHECK(inv.comps[0].coeff({1, 3}) == grat(-1));
        auto id1 = compose(m, inv);
        auto id2 = compose(inv, m);
        for (int k = 0; k < 2; ++k) {
            CHECK(id1.comps[size_t(k)] == S::variable(2, k, 4));
            CHECK(id2.comps[size_t(k)] == S::variable(2, k, 4));
        }
    }
    SUBCASE("singular linear part rejected") {
        MapJet<GaussRat> m;
        m.comps.push_back(S::variable(2, 0, 4));
        m.comps.push_back(S::variable(2, 0, 4));
        CHECK_THROWS_AS(invert_map_jet(m), computation_error);
    }
}

TEST_CASE("valuation, division, restriction, partials") {
    SUBCASE("valuations") {
        S s1 = S::monomial(2, {3, 0}, grat(1), 8);
        CHECK(s1.valuation(0).value == 3);
        S s2 = S::monomial(2, {1, 1}, grat(1), 8) + S::monomial(2, {2, 0}, grat(1), 8);
        CHECK(s2.valuation(0).value == 1);
        S lifted = S::monomial(2, {2, 2}, grat(1), 8);  // u^2 t^2 from the blow-up difference
        CHECK(lifted.valuation(0).value == 2);
        S zero(2, 8);
        auto v = zero.valuation(0);
        CHECK(v.value == 9);
        CHECK(!v.certain);  // truncation-limited answer is flagged
    }
    SUBCASE("divide u^3 t^3 by u^2") {
        S s = S::monomial(2, {3, 3}, grat(1), 8);
        S q = s.divide_by_var_power(0, 2);
        CHECK(q.coeff({1, 3}) == grat(1));
        CHECK_THROWS_AS(s.divide_by_var_power(0, 4), computation_error);
    }
    SUBCASE("restrict (1-t^3) - u t^2 to u = 0") {
        S s(2, 8);
        s.set_coeff({0, 0}, grat(1));
        s.set_coeff({0, 3}, grat(-1));
        s.set_coeff({1, 2}, grat(-1));
        S r = s.restricted(0);
        CHECK(r.coeff({0, 0}) == grat(1));
        CHECK(r.coeff({0, 3}) == grat(-1));
        CHECK(r.term_count() == 2);
    }
    SUBCASE("partial of u t^3 in u, restricted") {
        S s = S::monomial(2, {1, 3}, grat(1), 8);
        S d = s.partial(0).restricted(0);
        CHECK(d.coeff({0, 3}) == grat(1));
    }
}

TEST_CASE("one-variable Laurent residues") {
    SUBCASE("1/t and t^2 + 3/t^2") {
        S t = S::variable(1, 0, 6);
        S one = S::constant(1, grat(1), 6);
        S inv_t = laurent_divide(one, t, 0);
        CHECK(inv_t.residue_coefficient(0) == grat(1));
        S mix = (t * t) + laurent_divide(S::constant(1, grat(3), 6), t * t, 0);
        CHECK(mix.residue_coefficient(0) == grat(0));
    }
    SUBCASE("t^2/(1-t^3) recentered at t=1 has residue -1/3") {
        // pull back via the local parameter t = 1 + s: partial-fractions oracle
        S s = S::variable(1, 0, 8);
        S one = S::constant(1, grat(1), 8);
        S num = (one + s) * (one + s);
        S t3 = (one + s) * (one + s) * (one + s);
        S den = one - t3;
        S integ = laurent_divide(num, den, 0);
        CHECK(integ.residue_coefficient(0) == grat(-1, 3));
    }
}

TEST_CASE("exact division by general series (certified)") {
    std::mt19937 rng(7);
    SUBCASE("cusp germ divisor") {
        S u = S::variable(2, 0, 9), t = S::variable(2, 1, 9);
        S y = t * t - u * u * u;
        S a = y * (S::constant(2, grat(1), 9) + u + t * t);
        S q = divide_exact_series(a, y);
        CHECK(q.coeff({0, 0}) == grat(1));
        CHECK(q.coeff({1, 0}) == grat(1));
        CHECK(q.coeff({0, 2}) == grat(1));
        CHECK_THROWS_AS(divide_exact_series(u, y), computation_error);
    }
    SUBCASE("random multiples divide back exactly") {
        for (int rep = 0; rep < 10; ++rep) {
            S b = random_series(rng, 2, 5, 4);
            if (b.is_zero()) continue;
            S q = random_series(rng, 2, 5, 4);
            S a = q * b;
            S got = divide_exact_series(a, b);
            S diff = (got - q).truncated(got.order());
            CHECK(diff.is_zero());
        }
    }
}

TEST_CASE("ring axioms on random sparse series (exact mode)") {
    std::mt19937 rng(11);
    for (int rep = 0; rep < 25; ++rep) {
        S a = random_series(rng, 3, 5, 4);
        S b = random_series(rng, 3, 5, 4);
        S c = random_series(rng, 3, 5, 4);
        CHECK((a + b) == (b + a));
        CHECK((a * b) == (b * a));
        CHECK(((a + b) + c) == (a + (b + c)));
        CHECK(((a * b) * c) == (a * (b * c)));
        CHECK((a * (b + c)) == (a * b + a * c));
    }
}

TEST_CASE("valuation is additive under products when not truncation-limited") {
    std::mt19937 rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        S a = random_series(rng, 2, 6, 3, /*exact=*/true);
        S b = random_series(rng, 2, 6, 3, /*exact=*/true);
        if (a.is_zero() || b.is_zero()) continue;
        auto va = a.valuation(0), vb = b.valuation(0);
        S p = a * b;
        REQUIRE(!p.is_zero());  // integral domain
        CHECK(p.valuation(0).value == va.value + vb.value);
    }
}

TEST_CASE("float mode tracks exact mode to 1e-12") {
    std::mt19937 rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        S a = random_series(rng, 2, 6, 5);
        S b = random_series(rng, 2, 6, 5);
        auto af = a.map_coeffs<Cplx>([](const GaussRat& c) { return to_float(c); });
        auto bf = b.map_coeffs<Cplx>([](const GaussRat& c) { return to_float(c); });
        S exact = a * b;
        auto approx = af * bf;
        for (const auto& [e, c] : exact.terms()) {
            Cplx x = to_float(c), y = approx.coeff(e);
            CHECK(std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(x)));
        }
    }
}

TEST_CASE("series serialization round-trips exactly") {
    std::mt19937 rng(23);
    for (int rep = 0; rep < 8; ++rep) {
        S a = random_series(rng, 3, 6, 6);
        std::string text = series_to_json_text(a);
        S back = series_from_json_text(text, 3);
        CHECK(back == a);
    }
    // exact fractions survive
    S s(2);
    s.set_coeff({1, 2}, GaussRat(mpq_class("22/7"), mpq_class("-1/3")));
    CHECK(series_from_json_text(series_to_json_text(s), 2) == s);
}
