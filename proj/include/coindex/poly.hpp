#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "coindex/scalar.hpp"

namespace coindex {

/// Dense univariate polynomial over the Gaussian rationals, low-degree-first.
class Poly {
  public:
    Poly() = default;
    explicit Poly(GaussRat c) { c_.push_back(std::move(c)); trim(); }
    explicit Poly(std::vector<GaussRat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return constant(GaussRat::one()); }
    static Poly constant(GaussRat c) { return Poly(std::move(c)); }
    static Poly variable();                      // t
    static Poly monomial(int k, GaussRat c);     // c * t^k

    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }  // -1 for zero
    const std::vector<GaussRat>& coeffs() const { return c_; }
    GaussRat coeff(int k) const {
        return (k >= 0 && k < int(c_.size())) ? c_[size_t(k)] : GaussRat::zero();
    }
    GaussRat lead() const { return is_zero() ? GaussRat::zero() : c_.back(); }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const GaussRat& s) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    // quotient and remainder, exact field arithmetic
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    // exact division; throws when the remainder is nonzero
    static Poly div_exact(const Poly& a, const Poly& b);

    Poly derivative() const;
    GaussRat eval(const GaussRat& x) const;
    Cplx eval(const Cplx& x) const;
    Poly shifted(const GaussRat& x0) const;  // p(x0 + t)
    Poly monic() const;

    // valuation at 0: largest k with t^k | p (0 for nonzero constant term; -1 for zero poly)
    int valuation_at_zero() const;

    std::string str(const std::string& var = "t") const;

    static Poly gcd(Poly a, Poly b);  // monic gcd

    /// Yun's squarefree decomposition: p = lead * prod factors[k].first ^ factors[k].second
    /// with each factor monic squarefree, pairwise coprime, exponents strictly increasing.
    static std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p);

    /// Numeric roots (Aberth–Ehrlich), for isolating boxes and reporting only.
    static std::vector<Cplx> roots_numeric(const Poly& p);

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<GaussRat> c_;
};

/// Reduced fraction of polynomials; denominator monic and coprime to the numerator.
class RatFunc {
  public:
    RatFunc() : num_(), den_(Poly::one()) {}
    RatFunc(long v) : num_(Poly::constant(GaussRat::from_long(v))), den_(Poly::one()) {}
    explicit RatFunc(GaussRat c) : num_(Poly::constant(std::move(c))), den_(Poly::one()) {}
    explicit RatFunc(Poly p) : num_(std::move(p)), den_(Poly::one()) {}
    RatFunc(Poly n, Poly d);

    static RatFunc variable() { return RatFunc(Poly::variable()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc& operator+=(const RatFunc& o) { *this = *this + o; return *this; }
    RatFunc& operator-=(const RatFunc& o) { *this = *this - o; return *this; }
    RatFunc& operator*=(const RatFunc& o) { *this = *this * o; return *this; }
    RatFunc& operator/=(const RatFunc& o) { *this = *this / o; return *this; }
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

    RatFunc derivative() const;
    // exact evaluation; nullopt at a pole
    std::optional<GaussRat> eval(const GaussRat& x) const;
    Cplx eval(const Cplx& x) const;

    std::string str(const std::string& var = "t") const;

  private:
    Poly num_, den_;
};

template <>
struct scalar_traits<RatFunc> {
    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return RatFunc(1); }
    static RatFunc from_long(long n) { return RatFunc(n); }
    static bool is_zero(const RatFunc& x) { return x.is_zero(); }
    static constexpr bool exact = true;
};

}  // namespace coindex
