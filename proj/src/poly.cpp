#include "coindex/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace coindex {

Poly Poly::variable() { return monomial(1, GaussRat::one()); }

Poly Poly::monomial(int k, GaussRat c) {
    if (c.is_zero()) return Poly();
    std::vector<GaussRat> v(size_t(k) + 1, GaussRat::zero());
    v[size_t(k)] = std::move(c);
    return Poly(std::move(v));
}

Poly Poly::operator-() const {
    std::vector<GaussRat> v(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) v[k] = -c_[k];
    return Poly(std::move(v));
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<GaussRat> v(std::max(c_.size(), o.c_.size()), GaussRat::zero());
    for (size_t k = 0; k < c_.size(); ++k) v[k] += c_[k];
    for (size_t k = 0; k < o.c_.size(); ++k) v[k] += o.c_[k];
    return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<GaussRat> v(c_.size() + o.c_.size() - 1, GaussRat::zero());
    for (size_t a = 0; a < c_.size(); ++a)
        for (size_t b = 0; b < o.c_.size(); ++b) v[a + b] += c_[a] * o.c_[b];
    return Poly(std::move(v));
}

Poly Poly::operator*(const GaussRat& s) const {
    if (s.is_zero()) return Poly();
    std::vector<GaussRat> v(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) v[k] = c_[k] * s;
    return Poly(std::move(v));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw computation_error("Poly: division by zero polynomial");
    Poly r = a;
    if (a.degree() < b.degree()) return {Poly(), r};
    std::vector<GaussRat> q(size_t(a.degree() - b.degree()) + 1, GaussRat::zero());
    while (!r.is_zero() && r.degree() >= b.degree()) {
        GaussRat c = r.lead() / b.lead();
        int k = r.degree() - b.degree();
        q[size_t(k)] = c;
        r = r - b * monomial(k, c);
    }
    return {Poly(std::move(q)), r};
}

Poly Poly::div_exact(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw computation_error("Poly: inexact division");
    return q;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<GaussRat> v(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) v[k - 1] = c_[k] * GaussRat::from_long(long(k));
    return Poly(std::move(v));
}

GaussRat Poly::eval(const GaussRat& x) const {
    GaussRat r = GaussRat::zero();
    for (size_t k = c_.size(); k-- > 0;) r = r * x + c_[k];
    return r;
}

Cplx Poly::eval(const Cplx& x) const {
    Cplx r{0.0, 0.0};
    for (size_t k = c_.size(); k-- > 0;) r = r * x + c_[k].to_complex();
    return r;
}

Poly Poly::shifted(const GaussRat& x0) const {
    // Horner on p with x = x0 + t
    Poly base;
    base.c_ = {x0, GaussRat::one()};
    Poly r;
    for (size_t k = c_.size(); k-- > 0;) r = r * base + constant(c_[k]);
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return Poly();
    return *this * (GaussRat::one() / lead());
}

int Poly::valuation_at_zero() const {
    if (is_zero()) return -1;
    for (size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) return int(k);
    return -1;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(c_[k]) << ")";
        if (k == 1) os << "*" << var;
        if (k > 1) os << "*" << var << "^" << k;
    }
    return os.str();
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

std::vector<std::pair<Poly, int>> Poly::squarefree_decomposition(const Poly& p) {
    std::vector<std::pair<Poly, int>> out;
    if (p.degree() <= 0) return out;
    Poly a = p.monic();
    Poly g = gcd(a, a.derivative());
    Poly w = div_exact(a, g);
    Poly y = div_exact(a.derivative() * (GaussRat::one() / p.lead()), g);
    int mult = 1;
    while (w.degree() > 0) {
        Poly z = y - w.derivative();
        Poly f = gcd(w, z);
        if (f.degree() > 0) out.emplace_back(f, mult);
        w = div_exact(w, f);
        y = div_exact(z, f);
        ++mult;
    }
    return out;
}

std::vector<Cplx> Poly::roots_numeric(const Poly& p) {
    int n = p.degree();
    if (n <= 0) return {};
    std::vector<Cplx> a(size_t(n) + 1);
    for (int k = 0; k <= n; ++k) a[size_t(k)] = p.coeff(k).to_complex();
    for (auto& c : a) c /= a.back();
    // Cauchy bound for initial placement
    double bound = 0.0;
    for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(a[size_t(k)]));
    bound += 1.0;
    std::vector<Cplx> z(size_t(n), Cplx{0.0, 0.0});
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * M_PI * (double(k) + 0.25) / double(n);
        z[size_t(k)] = 0.5 * bound * Cplx{std::cos(th), std::sin(th)};
    }
    auto eval_monic = [&](Cplx x) {
        Cplx r{0.0, 0.0};
        for (size_t k = a.size(); k-- > 0;) r = r * x + a[k];
        return r;
    };
    auto eval_deriv = [&](Cplx x) {
        Cplx r{0.0, 0.0};
        for (size_t k = a.size(); k-- > 1;) r = r * x + double(k) * a[k];
        return r;
    };
    for (int iter = 0; iter < 300; ++iter) {
        double moved = 0.0;
        for (int k = 0; k < n; ++k) {
            Cplx num = eval_monic(z[size_t(k)]);
            Cplx den = eval_deriv(z[size_t(k)]);
            if (std::abs(den) < 1e-300) den = Cplx{1e-300, 0};
            Cplx newton = num / den;
            Cplx corr{0.0, 0.0};
            for (int j = 0; j < n; ++j)
                if (j != k) corr += 1.0 / (z[size_t(k)] - z[size_t(j)]);
            Cplx step = newton / (1.0 - newton * corr);
            z[size_t(k)] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14) break;
    }
    std::sort(z.begin(), z.end(), [](const Cplx& u, const Cplx& v) {
        if (u.real() != v.real()) return u.real() < v.real();
        return u.imag() < v.imag();
    });
    return z;
}

RatFunc::RatFunc(Poly n, Poly d) {
    if (d.is_zero()) throw computation_error("RatFunc: zero denominator");
    if (n.is_zero()) {
        num_ = Poly();
        den_ = Poly::one();
        return;
    }
    Poly g = Poly::gcd(n, d);
    if (g.degree() > 0) {
        n = Poly::div_exact(n, g);
        d = Poly::div_exact(d, g);
    }
    GaussRat lc = d.lead();
    num_ = n * (GaussRat::one() / lc);
    den_ = d * (GaussRat::one() / lc);
}

RatFunc RatFunc::operator-() const {
    RatFunc r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw computation_error("RatFunc: division by zero");
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

std::optional<GaussRat> RatFunc::eval(const GaussRat& x) const {
    GaussRat d = den_.eval(x);
    if (d.is_zero()) return std::nullopt;
    return num_.eval(x) / d;
}

Cplx RatFunc::eval(const Cplx& x) const { return num_.eval(x) / den_.eval(x); }

std::string RatFunc::str(const std::string& var) const {
    if (is_polynomial()) return num_.str(var);
    return "(" + num_.str(var) + ") / (" + den_.str(var) + ")";
}

}  // namespace coindex
