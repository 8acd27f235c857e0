#include <doctest.h>

#include "coindex/qalg.hpp"
#include "helpers.hpp"

using namespace coindex;
using namespace coindex::testing;

namespace {
Poly make_poly(std::vector<long> coeffs) {
    std::vector<GaussRat> v;
    for (long c : coeffs) v.push_back(GaussRat::from_long(c));
    return Poly(std::move(v));
}
}  // namespace

TEST_CASE("polynomial workhorse") {
    Poly p = make_poly({-1, 0, 0, 1});  // t^3 - 1
    SUBCASE("divmod and gcd") {
        Poly lin = make_poly({-1, 1});
        auto [q, r] = Poly::divmod(p, lin);
        CHECK(r.is_zero());
        CHECK(q == make_poly({1, 1, 1}));
        CHECK(Poly::gcd(p, p.derivative()).degree() == 0);
    }
    SUBCASE("shift") {
        Poly s = p.shifted(GaussRat::from_long(1));  // (1+t)^3 - 1
        CHECK(s.coeff(0) == grat(0));
        CHECK(s.coeff(1) == grat(3));
        CHECK(s.coeff(2) == grat(3));
        CHECK(s.coeff(3) == grat(1));
    }
    SUBCASE("squarefree decomposition of t^2 (t-1)^3") {
        Poly t2 = make_poly({0, 0, 1});
        Poly cube = make_poly({-1, 1}) * make_poly({-1, 1}) * make_poly({-1, 1});
        auto dec = Poly::squarefree_decomposition(t2 * cube);
        REQUIRE(dec.size() == 2);
        CHECK(dec[0].first == make_poly({0, 1}));
        CHECK(dec[0].second == 2);
        CHECK(dec[1].first == make_poly({-1, 1}));
        CHECK(dec[1].second == 3);
    }
    SUBCASE("numeric roots of t^3 - 1") {
        auto roots = Poly::roots_numeric(p);
        REQUIRE(roots.size() == 3);
        for (const auto& r : roots) CHECK(std::abs(r * r * r - Cplx{1, 0}) < 1e-10);
    }
}

TEST_CASE("rational function reduction") {
    RatFunc f(make_poly({0, 0, 1}), make_poly({0, 1}));  // t^2 / t
    CHECK(f.num() == make_poly({0, 1}));
    CHECK(f.den().degree() == 0);
    RatFunc g = RatFunc(make_poly({1}), make_poly({1, 1})) +
                RatFunc(make_poly({1}), make_poly({-1, 1}));
    // 1/(1+t) + 1/(t-1) = 2t/(t^2-1)
    CHECK(g.num() == make_poly({0, 2}));
    CHECK(g.den() == make_poly({-1, 0, 1}));
}

TEST_CASE("residues at rational points") {
    // t^2/(1-t^3) at t=1 -> -1/3
    RatFunc f(make_poly({0, 0, 1}), make_poly({1, 0, 0, -1}));
    CHECK(residue_at_rational(f, grat(1)) == grat(-1, 3));
    // higher-order pole: 1/t^3 has zero residue, (3 + t^2)/t^3 likewise at order 3
    RatFunc g(make_poly({3, 0, 1}), make_poly({0, 0, 0, 1}));
    CHECK(residue_at_rational(g, grat(0)) == grat(1));
    // regular point
    CHECK(residue_at_rational(f, grat(2)) == grat(0));
}

TEST_CASE("residues at algebraic points via the quotient algebra") {
    SUBCASE("t^2/(1-t^3) on the factor 1+t+t^2 is constant -1/3") {
        Poly num = make_poly({0, 0, 1});
        Poly den = make_poly({1, 0, 0, -1});
        Poly factor = make_poly({1, 1, 1});
        auto r = residue_at_factor_roots(num, den, factor);
        REQUIRE(r.constant.has_value());
        CHECK(*r.constant == grat(-1, 3));
        CHECK(r.factor_sum == grat(-2, 3));  // two conjugate roots
        CHECK(r.pole_order == 1);
    }
    SUBCASE("full denominator as one squarefree block") {
        Poly num = make_poly({0, 0, 1});
        Poly den = make_poly({1, 0, 0, -1});
        auto r = residue_at_factor_roots(num, den, den.monic() * grat(-1));
        // all three cube roots carry -1/3; the trace sums them
        CHECK(r.factor_sum == grat(-1));
    }
    SUBCASE("double root handled through the epsilon expansion") {
        // 1/(t^2+1)^2 at t = i: residue -i/4; the i-block trace is real zero
        Poly num = make_poly({1});
        Poly den = make_poly({1, 0, 1}) * make_poly({1, 0, 1});
        Poly factor = make_poly({1, 0, 1});
        auto r = residue_at_factor_roots(num, den, factor);
        CHECK(r.pole_order == 2);
        CHECK(!r.constant.has_value());
        CHECK(r.factor_sum == grat(0));
        // the residue element is -x/4 in Q(i)[x]/(x^2+1)
        CHECK(r.element.coeff(1) == grat(-1, 4));
    }
    SUBCASE("trace of the multiplication matrix") {
        Poly mod = make_poly({1, 1, 1});
        // trace of x over x^2+x+1 = sum of the two roots = -1
        CHECK(qalg::trace(make_poly({0, 1}), mod) == grat(-1));
        CHECK(qalg::trace(make_poly({5}), mod) == grat(10));
    }
    SUBCASE("zero divisors are reported") {
        Poly mod = make_poly({0, 1}) * make_poly({-1, 1});  // t(t-1), splits
        CHECK_THROWS_AS(qalg::inverse(make_poly({0, 1}), mod), computation_error);
    }
}

TEST_CASE("rational_residue_sum: exact chart-wide sums without roots") {
    CHECK(rational_residue_sum(make_poly({0, 0, 1}), make_poly({1, 0, 0, -1})) == grat(-1));
    CHECK(rational_residue_sum(make_poly({0, 0, 0, 1}), make_poly({1, 0, 0, 0, -1})) ==
          grat(-1));
    CHECK(rational_residue_sum(make_poly({1}), make_poly({0, 1})) == grat(1));
    SUBCASE("degree guard and common-factor guard") {
        CHECK_THROWS_AS(rational_residue_sum(make_poly({0, 0, 1}), make_poly({0, 1})),
                        computation_error);
        CHECK_THROWS_AS(rational_residue_sum(make_poly({0, 1}), make_poly({0, 0, 1})),
                        computation_error);
    }
    SUBCASE("agrees with pointwise residues on a random family") {
        // q with simple rational roots 0, 1, -2 and p of low degree
        Poly q = make_poly({0, 1}) * make_poly({-1, 1}) * make_poly({2, 1});
        Poly p = make_poly({1, 3, 1});
        RatFunc f(p, q);
        GaussRat direct = residue_at_rational(f, grat(0)) + residue_at_rational(f, grat(1)) +
                          residue_at_rational(f, grat(-2));
        CHECK(rational_residue_sum(p, q) == direct);
    }
}
