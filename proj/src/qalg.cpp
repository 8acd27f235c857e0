#include "coindex/qalg.hpp"

#include "coindex/linalg.hpp"

namespace coindex {

namespace qalg {

Poly reduce(const Poly& p, const Poly& modulus) { return Poly::divmod(p, modulus).second; }

Poly mul(const Poly& a, const Poly& b, const Poly& modulus) { return reduce(a * b, modulus); }

Poly inverse(const Poly& a, const Poly& modulus) {
    // extended Euclid: s*a + t*modulus = g
    Poly r0 = modulus, r1 = reduce(a, modulus);
    Poly s0 = Poly::zero(), s1 = Poly::one();
    while (!r1.is_zero()) {
        auto [q, r2] = Poly::divmod(r0, r1);
        Poly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.degree() != 0)
        throw computation_error("qalg: zero divisor, the modulus splits (gcd degree " +
                                std::to_string(r0.degree()) + ")");
    return reduce(s0 * (GaussRat::one() / r0.coeff(0)), modulus);
}

GaussRat trace(const Poly& a, const Poly& modulus) {
    const int d = modulus.degree();
    if (d <= 0) throw computation_error("qalg: trivial modulus");
    Poly cur = reduce(a, modulus);
    GaussRat tr = GaussRat::zero();
    // trace = sum over basis monomials x^k of the x^k-coefficient of a*x^k mod F
    Poly shifted = cur;
    for (int k = 0; k < d; ++k) {
        tr += shifted.coeff(k);
        shifted = reduce(shifted * Poly::variable(), modulus);
    }
    return tr;
}

}  // namespace qalg

AlgebraicResidue residue_at_factor_roots(const Poly& p, const Poly& q, const Poly& factor) {
    const Poly& f = factor;
    if (f.degree() < 1) throw computation_error("algebraic residue: constant factor");
    // multiplicity of the factor in q
    int mult = 0;
    Poly s = q;
    for (;;) {
        auto [quot, rem] = Poly::divmod(s, f);
        if (!rem.is_zero()) break;
        s = quot;
        ++mult;
    }
    if (mult == 0) throw computation_error("algebraic residue: factor does not divide q");

    // Taylor data at the root alpha of f, coefficients in A = Q(i)[x]/(f):
    // P(alpha+e) = sum_k P^{(k)}(alpha)/k! e^k
    auto taylor = [&](const Poly& poly, int terms) {
        std::vector<Poly> out;
        Poly d = poly;
        GaussRat fact = GaussRat::one();
        for (int k = 0; k < terms; ++k) {
            if (k > 0) fact = fact * GaussRat::from_long(k);
            out.push_back(qalg::reduce(d * (GaussRat::one() / fact), f));
            d = d.derivative();
        }
        return out;
    };

    const int m = mult;
    // need the quotient's e^{m-1} coefficient: numerator to order m-1,
    // unit denominator to order m-1 (f-part consumed one extra order)
    std::vector<Poly> num = taylor(p, m);
    std::vector<Poly> fser = taylor(f, 2 * m + 1);  // fser[0] == 0
    if (!fser[0].is_zero()) throw computation_error("algebraic residue: factor does not vanish");
    std::vector<Poly> f1(fser.begin() + 1, fser.end());  // f(alpha+e)/e
    std::vector<Poly> sser = taylor(s, m);

    auto series_mul = [&](const std::vector<Poly>& a, const std::vector<Poly>& b, int terms) {
        std::vector<Poly> out(size_t(terms), Poly::zero());
        for (int i = 0; i < terms && i < int(a.size()); ++i)
            for (int j = 0; j + i < terms && j < int(b.size()); ++j)
                out[size_t(i + j)] = out[size_t(i + j)] + qalg::mul(a[size_t(i)], b[size_t(j)], f);
        return out;
    };

    // unit = (f(alpha+e)/e)^m * s(alpha+e), invertible constant term
    std::vector<Poly> unit{Poly::one()};
    for (int k = 0; k < m; ++k) unit = series_mul(unit, f1, m);
    unit = series_mul(unit, sser, m);

    // invert the unit power series over A
    std::vector<Poly> inv(size_t(m), Poly::zero());
    Poly c0inv = qalg::inverse(unit[0], f);
    inv[0] = c0inv;
    for (int k = 1; k < m; ++k) {
        Poly acc = Poly::zero();
        for (int j = 1; j <= k; ++j)
            acc = acc + qalg::mul(unit[size_t(j)], inv[size_t(k - j)], f);
        inv[size_t(k)] = qalg::reduce(-qalg::mul(acc, c0inv, f), f);
    }

    std::vector<Poly> quot = series_mul(num, inv, m);
    AlgebraicResidue out;
    out.element = quot[size_t(m - 1)];
    out.pole_order = m;
    if (out.element.degree() <= 0) out.constant = out.element.coeff(0);
    GaussRat tr = qalg::trace(out.element, f);
    out.factor_sum = tr;
    return out;
}

GaussRat residue_at_rational(const RatFunc& f, const GaussRat& t0) {
    Poly n = f.num().shifted(t0);
    Poly d = f.den().shifted(t0);
    int v = d.valuation_at_zero();
    if (v <= 0) return GaussRat::zero();
    // coefficient of t^{v-1} in n / (d / t^v)
    std::vector<GaussRat> unit(d.coeffs().begin() + v, d.coeffs().end());
    Poly u{std::vector<GaussRat>(unit)};
    // power series inverse of u to order v-1
    std::vector<GaussRat> inv(size_t(v), GaussRat::zero());
    GaussRat c0inv = GaussRat::one() / u.coeff(0);
    inv[0] = c0inv;
    for (int k = 1; k < v; ++k) {
        GaussRat acc = GaussRat::zero();
        for (int j = 1; j <= k; ++j) acc += u.coeff(j) * inv[size_t(k - j)];
        inv[size_t(k)] = -acc * c0inv;
    }
    GaussRat res = GaussRat::zero();
    for (int k = 0; k < v; ++k) res += n.coeff(k) * inv[size_t(v - 1 - k)];
    return res;
}

GaussRat rational_residue_sum(const Poly& p_in, const Poly& q) {
    if (q.is_zero()) throw computation_error("rational_residue_sum: zero denominator");
    if (Poly::gcd(p_in, q).degree() > 0)
        throw computation_error("rational_residue_sum: common factors");
    Poly p = p_in;
    if (p.degree() >= q.degree() + 1)
        throw computation_error("rational_residue_sum: numerator degree too large");
    if (p.degree() == q.degree()) p = Poly::divmod(p, q).second;  // drop the constant part
    if (p.is_zero()) return GaussRat::zero();
    // expansion at infinity in w = 1/s: p/q = w^{deg q - deg p} rev(p)(w) / rev(q)(w);
    // the sum of finite residues is the w^1 Taylor coefficient.
    int dp = p.degree(), dq = q.degree();
    int shift = dq - dp;  // >= 1
    auto reversed = [](const Poly& a) {
        std::vector<GaussRat> c(a.coeffs().rbegin(), a.coeffs().rend());
        return Poly(std::move(c));
    };
    Poly rp = reversed(p), rq = reversed(q);
    if (shift > 1) return GaussRat::zero();  // zero at infinity of order >= 2
    // shift == 1: the w^1 coefficient is rev_p(0)/rev_q(0)
    return rp.coeff(0) / rq.coeff(0);
}

}  // namespace coindex
