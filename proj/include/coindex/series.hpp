#pragma once

#include <algorithm>
#include <cassert>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "coindex/linalg.hpp"
#include "coindex/poly.hpp"
#include "coindex/scalar.hpp"

namespace coindex {

using ExpVec = std::vector<int32_t>;

inline int bounded_degree(const ExpVec& e) {
    int d = 0;
    for (int32_t x : e)
        if (x > 0) d += x;
    return d;
}

/// Truncation bound: nullopt means exact (all omitted terms are genuinely zero).
using Order = std::optional<int>;

inline Order min_order(const Order& a, const Order& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

inline Order add_order(const Order& a, int d) {
    if (!a) return a;
    return *a + d;
}

/// Sparse truncated multivariate series. Terms with bounded_degree > order are
/// dropped and considered unknown; an exact polynomial has no order bound.
/// At most one variable (laurent_var) may carry negative exponents.
template <class F>
class MultiSeries {
  public:
    using Terms = std::map<ExpVec, F>;

    MultiSeries() : nvars_(0) {}
    explicit MultiSeries(int nvars, Order order = std::nullopt)
        : nvars_(nvars), order_(order) {}

    static MultiSeries zero(int nvars, Order order = std::nullopt) {
        return MultiSeries(nvars, order);
    }
    static MultiSeries constant(int nvars, F c, Order order = std::nullopt) {
        MultiSeries s(nvars, order);
        s.set_coeff(ExpVec(size_t(nvars), 0), std::move(c));
        return s;
    }
    static MultiSeries variable(int nvars, int var, Order order = std::nullopt) {
        MultiSeries s(nvars, order);
        ExpVec e(size_t(nvars), 0);
        e[size_t(var)] = 1;
        s.set_coeff(e, scalar_traits<F>::one());
        return s;
    }
    static MultiSeries monomial(int nvars, ExpVec e, F c, Order order = std::nullopt) {
        MultiSeries s(nvars, order);
        s.set_coeff(std::move(e), std::move(c));
        return s;
    }

    int nvars() const { return nvars_; }
    const Order& order() const { return order_; }
    bool is_exact() const { return !order_.has_value(); }
    int laurent_var() const { return laurent_var_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    void set_order(Order k) {
        order_ = k;
        prune();
    }
    void mark_laurent(int var) { laurent_var_ = var; }

    F coeff(const ExpVec& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? scalar_traits<F>::zero() : it->second;
    }
    F constant_term() const { return coeff(ExpVec(size_t(nvars_), 0)); }

    void set_coeff(ExpVec e, F c) {
        assert(int(e.size()) == nvars_);
        check_exponents(e);
        if (scalar_traits<F>::is_zero(c) || over_bound(e)) {
            terms_.erase(e);
        } else {
            terms_[std::move(e)] = std::move(c);
        }
    }
    void add_to_coeff(const ExpVec& e, const F& c) { set_coeff(e, coeff(e) + c); }

    // min bounded_degree among stored terms; order+1 (or INT_MAX if exact) when empty
    int min_degree() const {
        if (terms_.empty()) return order_ ? *order_ + 1 : std::numeric_limits<int>::max() / 2;
        int d = std::numeric_limits<int>::max();
        for (const auto& [e, c] : terms_) d = std::min(d, bounded_degree(e));
        return d;
    }
    int max_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, bounded_degree(e));
        return d;
    }

    MultiSeries operator-() const {
        MultiSeries r(nvars_, order_);
        r.laurent_var_ = laurent_var_;
        for (const auto& [e, c] : terms_) r.terms_[e] = scalar_traits<F>::zero() - c;
        return r;
    }

    MultiSeries operator+(const MultiSeries& o) const {
        require_same_space(o);
        MultiSeries r(nvars_, min_order(order_, o.order_));
        r.laurent_var_ = merge_laurent(o);
        for (const auto& [e, c] : terms_) r.add_to_coeff(e, c);
        for (const auto& [e, c] : o.terms_) r.add_to_coeff(e, c);
        return r;
    }
    MultiSeries operator-(const MultiSeries& o) const { return *this + (-o); }

    MultiSeries operator*(const MultiSeries& o) const {
        require_same_space(o);
        Order ord;
        if (order_ || o.order_) {
            int bound = std::numeric_limits<int>::max() / 2;
            if (order_) bound = std::min(bound, *order_ + std::max(0, o.min_degree_nonneg()));
            if (o.order_) bound = std::min(bound, *o.order_ + std::max(0, min_degree_nonneg()));
            ord = bound;
        }
        MultiSeries r(nvars_, ord);
        r.laurent_var_ = merge_laurent(o);
        for (const auto& [ea, ca] : terms_) {
            for (const auto& [eb, cb] : o.terms_) {
                ExpVec e(size_t(nvars_), 0);
                for (int k = 0; k < nvars_; ++k) e[size_t(k)] = ea[size_t(k)] + eb[size_t(k)];
                if (r.over_bound(e)) continue;
                r.add_to_coeff(e, ca * cb);
            }
        }
        return r;
    }

    MultiSeries operator*(const F& s) const {
        MultiSeries r(nvars_, order_);
        r.laurent_var_ = laurent_var_;
        if (scalar_traits<F>::is_zero(s)) return r;
        for (const auto& [e, c] : terms_) {
            F v = c * s;
            if (!scalar_traits<F>::is_zero(v)) r.terms_[e] = std::move(v);
        }
        return r;
    }

    bool operator==(const MultiSeries& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    /// Multiplicative inverse of a unit series (nonzero constant term), to the order bound.
    MultiSeries unit_inverse(int fallback_order = 16) const {
        F c0 = constant_term();
        if (scalar_traits<F>::is_zero(c0))
            throw computation_error("series: inverse of a non-unit");
        int bound = order_ ? *order_ : fallback_order;
        MultiSeries inv = constant(nvars_, scalar_traits<F>::one() / c0, bound);
        // Newton doubling: inv <- inv * (2 - this * inv)
        MultiSeries two = constant(nvars_, scalar_traits<F>::from_long(2), bound);
        MultiSeries self = truncated(bound);
        for (int prec = 1; prec <= bound; prec *= 2) {
            inv = inv * (two - self * inv);
            inv.set_order(bound);
        }
        if (!order_) inv.set_order(bound);
        return inv;
    }

    MultiSeries truncated(Order k) const {
        MultiSeries r = *this;
        r.set_order(min_order(order_, k));
        return r;
    }

    MultiSeries partial(int var) const {
        MultiSeries r(nvars_, order_ ? Order(*order_ - 1) : Order());
        r.laurent_var_ = laurent_var_;
        for (const auto& [e, c] : terms_) {
            if (e[size_t(var)] == 0) continue;
            ExpVec d = e;
            long k = d[size_t(var)]--;
            r.add_to_coeff(d, c * scalar_traits<F>::from_long(k));
        }
        return r;
    }

    /// Substitute 0 for var (terms with a positive power of var vanish).
    MultiSeries restricted(int var) const {
        if (has_negative_power(var))
            throw computation_error("series: restriction across a pole");
        MultiSeries r(nvars_, order_);
        r.laurent_var_ = laurent_var_ == var ? -1 : laurent_var_;
        for (const auto& [e, c] : terms_)
            if (e[size_t(var)] == 0) r.terms_[e] = c;
        return r;
    }

    struct Valuation {
        int value;      // min exponent of var among stored terms
        bool certain;   // false when the series is zero only to the truncation bound
    };

    /// Minimum exponent of var over stored terms; infinity (uncertain) for the
    /// zero series of a truncated input.
    Valuation valuation(int var) const {
        if (terms_.empty())
            return {order_ ? *order_ + 1 : std::numeric_limits<int>::max() / 2, is_exact()};
        int v = std::numeric_limits<int>::max();
        for (const auto& [e, c] : terms_) v = std::min(v, int(e[size_t(var)]));
        return {v, true};
    }

    /// Exact division by var^k; requires valuation >= k.
    MultiSeries divide_by_var_power(int var, int k) const {
        if (k == 0) return *this;
        Valuation v = valuation(var);
        if (!terms_.empty() && v.value < k)
            throw computation_error("series: insufficient valuation for division");
        MultiSeries r(nvars_, order_ ? Order(*order_ - k) : Order());
        r.laurent_var_ = laurent_var_;
        for (const auto& [e, c] : terms_) {
            ExpVec d = e;
            d[size_t(var)] -= k;
            r.set_coeff(std::move(d), c);
        }
        return r;
    }

    /// Multiply or divide by var^k with negative exponents permitted (Laurent shift).
    MultiSeries laurent_shift(int var, int k) const {
        MultiSeries r(nvars_, order_ ? Order(*order_ - std::max(0, -k)) : Order());
        r.laurent_var_ = k < 0 || laurent_var_ == var ? var : laurent_var_;
        if (laurent_var_ >= 0 && laurent_var_ != var && k < 0)
            throw computation_error("series: two Laurent variables requested");
        for (const auto& [e, c] : terms_) {
            ExpVec d = e;
            d[size_t(var)] += k;
            r.set_coeff(std::move(d), c);
        }
        return r;
    }

    bool has_negative_power(int var) const {
        for (const auto& [e, c] : terms_)
            if (e[size_t(var)] < 0) return true;
        return false;
    }

    /// Coefficient of var^{-1}; the algebraic residue of a one-variable Laurent series.
    F residue_coefficient(int var) const {
        F out = scalar_traits<F>::zero();
        for (const auto& [e, c] : terms_) {
            if (e[size_t(var)] != -1) continue;
            bool pure = true;
            for (int k = 0; k < nvars_; ++k)
                if (k != var && e[size_t(k)] != 0) pure = false;
            if (!pure) continue;
            out += c;
        }
        return out;
    }

    /// Remove a variable the series does not involve (e.g. after restriction).
    MultiSeries drop_var(int var) const {
        MultiSeries r(nvars_ - 1, order_);
        if (laurent_var_ >= 0) {
            if (laurent_var_ == var)
                throw computation_error("drop_var: cannot drop the Laurent variable");
            r.laurent_var_ = laurent_var_ < var ? laurent_var_ : laurent_var_ - 1;
        }
        for (const auto& [e, c] : terms_) {
            if (e[size_t(var)] != 0)
                throw computation_error("drop_var: series involves the variable");
            ExpVec d;
            for (int k = 0; k < nvars_; ++k)
                if (k != var) d.push_back(e[size_t(k)]);
            r.terms_[std::move(d)] = c;
        }
        return r;
    }

    template <class G, class Fn>
    MultiSeries<G> map_coeffs(Fn&& fn) const {
        MultiSeries<G> r(nvars_, order_);
        if (laurent_var_ >= 0) r.mark_laurent(laurent_var_);
        for (const auto& [e, c] : terms_) r.set_coeff(e, fn(c));
        return r;
    }

    std::string str(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << printable(c) << ")";
            for (int k = 0; k < nvars_; ++k) {
                if (e[size_t(k)] == 0) continue;
                os << "*" << (size_t(k) < names.size() ? names[size_t(k)] : "x" + std::to_string(k + 1));
                if (e[size_t(k)] != 1) os << "^" << e[size_t(k)];
            }
        }
        return os.str();
    }

  private:
    static std::string printable(const GaussRat& c) { return to_string(c); }
    static std::string printable(const RatFunc& c) { return c.str(); }
    static std::string printable(const Cplx& c) {
        std::ostringstream os;
        os << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
        return os.str();
    }

    int min_degree_nonneg() const { return terms_.empty() ? 0 : min_degree(); }

    bool over_bound(const ExpVec& e) const { return order_ && bounded_degree(e) > *order_; }

    void check_exponents(const ExpVec& e) const {
        for (int k = 0; k < nvars_; ++k)
            if (e[size_t(k)] < 0 && k != laurent_var_)
                throw computation_error("series: negative exponent outside the Laurent variable");
    }

    void require_same_space(const MultiSeries& o) const {
        if (nvars_ != o.nvars_) throw computation_error("series: variable count mismatch");
    }

    int merge_laurent(const MultiSeries& o) const {
        if (laurent_var_ >= 0 && o.laurent_var_ >= 0 && laurent_var_ != o.laurent_var_)
            throw computation_error("series: two Laurent variables requested");
        return laurent_var_ >= 0 ? laurent_var_ : o.laurent_var_;
    }

    void prune() {
        if (!order_) return;
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (bounded_degree(it->first) > *order_)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    int nvars_;
    Order order_;
    int laurent_var_ = -1;
    Terms terms_;
};

/// Tuple of series in a shared variable space; carries map jets and germs tuples.
template <class F>
struct MapJet {
    std::vector<MultiSeries<F>> comps;

    int nvars() const { return comps.empty() ? 0 : comps[0].nvars(); }
    int ncomps() const { return int(comps.size()); }

    static MapJet identity(int nvars, Order order) {
        MapJet j;
        for (int k = 0; k < nvars; ++k)
            j.comps.push_back(MultiSeries<F>::variable(nvars, k, order));
        return j;
    }

    bool fixes_origin() const {
        for (const auto& c : comps)
            if (!scalar_traits<F>::is_zero(c.constant_term())) return false;
        return true;
    }

    Mat<F> linear_part() const {
        const int n = nvars();
        Mat<F> m(comps.size(), std::vector<F>(size_t(n), scalar_traits<F>::zero()));
        for (size_t i = 0; i < comps.size(); ++i) {
            for (int k = 0; k < n; ++k) {
                ExpVec e(size_t(n), 0);
                e[size_t(k)] = 1;
                m[i][size_t(k)] = comps[i].coeff(e);
            }
        }
        return m;
    }

    /// Jacobian matrix of series entries.
    Mat<MultiSeries<F>> jacobian() const {
        Mat<MultiSeries<F>> m(comps.size());
        for (size_t i = 0; i < comps.size(); ++i)
            for (int k = 0; k < nvars(); ++k) m[i].push_back(comps[i].partial(k));
        return m;
    }
};

/// Substitute the args tuple into outer. Args must vanish at the origin unless
/// outer is an exact polynomial.
template <class F>
MultiSeries<F> compose(const MultiSeries<F>& outer, const MapJet<F>& args) {
    if (outer.laurent_var() >= 0)
        throw computation_error("compose: Laurent outer not supported");
    if (int(args.comps.size()) != outer.nvars())
        throw computation_error("compose: arity mismatch");
    const int nv = args.nvars();
    Order ord = outer.order();
    bool args_vanish = true;
    for (const auto& a : args.comps) {
        ord = min_order(ord, a.order());
        if (!scalar_traits<F>::is_zero(a.constant_term())) args_vanish = false;
    }
    if (!args_vanish && !outer.is_exact())
        throw computation_error("compose: truncated outer requires vanishing args");
    // cache arg powers
    std::vector<std::vector<MultiSeries<F>>> powers(args.comps.size());
    for (size_t j = 0; j < args.comps.size(); ++j)
        powers[j].push_back(MultiSeries<F>::constant(nv, scalar_traits<F>::one(), ord));
    auto arg_power = [&](size_t j, int k) -> const MultiSeries<F>& {
        while (int(powers[j].size()) <= k)
            powers[j].push_back((powers[j].back() * args.comps[j]).truncated(ord));
        return powers[j][size_t(k)];
    };
    MultiSeries<F> acc(nv, ord);
    for (const auto& [e, c] : outer.terms()) {
        MultiSeries<F> term = MultiSeries<F>::constant(nv, c, ord);
        for (size_t j = 0; j < args.comps.size(); ++j) {
            if (e[j] < 0) throw computation_error("compose: negative exponent in outer");
            if (e[j] > 0) term = (term * arg_power(j, e[j])).truncated(ord);
        }
        acc = acc + term;
    }
    return acc;
}

template <class F>
MapJet<F> compose(const MapJet<F>& outer, const MapJet<F>& args) {
    MapJet<F> r;
    for (const auto& c : outer.comps) r.comps.push_back(compose(c, args));
    return r;
}

/// Local inverse of a jet fixing the origin with invertible linear part;
/// compose(m, result) == identity to the truncation order (and conversely).
template <class F>
MapJet<F> invert_map_jet(const MapJet<F>& m) {
    const int n = m.nvars();
    if (int(m.comps.size()) != n)
        throw computation_error("invert_map_jet: map is not an endomorphism of its space");
    if (!m.fixes_origin())
        throw computation_error("invert_map_jet: map does not fix the origin");
    Order ord;
    for (const auto& c : m.comps) ord = min_order(ord, c.order());
    if (!ord) ord = 16;
    auto linv = invert_matrix(m.linear_part());
    if (!linv) throw computation_error("invert_map_jet: singular linear part");
    // x = L^{-1}(y - N(psi(y))), gaining one exact degree per pass
    MapJet<F> nonlin;
    for (int i = 0; i < n; ++i) {
        MultiSeries<F> ni = m.comps[i].truncated(ord);
        for (int k = 0; k < n; ++k) {
            ExpVec e(size_t(n), 0);
            e[size_t(k)] = 1;
            ni.set_coeff(e, scalar_traits<F>::zero());
        }
        nonlin.comps.push_back(ni);
    }
    auto apply_linv = [&](const MapJet<F>& v) {
        MapJet<F> r;
        for (int i = 0; i < n; ++i) {
            MultiSeries<F> acc(n, ord);
            for (int k = 0; k < n; ++k) acc = acc + v.comps[size_t(k)] * (*linv)[size_t(i)][size_t(k)];
            r.comps.push_back(acc);
        }
        return r;
    };
    MapJet<F> psi = apply_linv(MapJet<F>::identity(n, ord));
    for (int pass = 0; pass < *ord; ++pass) {
        MapJet<F> v;
        for (int i = 0; i < n; ++i)
            v.comps.push_back(MultiSeries<F>::variable(n, i, ord) - compose(nonlin.comps[size_t(i)], psi));
        psi = apply_linv(v);
    }
    return psi;
}

/// All exponent vectors in nvars variables with bounded_degree <= bound.
inline std::vector<ExpVec> monomials_up_to(int nvars, int bound) {
    std::vector<ExpVec> out;
    ExpVec cur(size_t(nvars), 0);
    auto rec = [&](auto&& self, int var, int left) -> void {
        if (var == nvars) {
            out.push_back(cur);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            cur[size_t(var)] = k;
            self(self, var + 1, left - k);
        }
        cur[size_t(var)] = 0;
    };
    rec(rec, 0, bound);
    return out;
}

/// Solve q * b = a exactly (to the available truncation); the certificate that
/// b divides a in the local ring. Throws when no quotient exists.
template <class F>
MultiSeries<F> divide_exact_series(const MultiSeries<F>& a, const MultiSeries<F>& b,
                                   std::optional<int> force_order = std::nullopt) {
    using T = scalar_traits<F>;
    if (b.is_zero()) throw computation_error("divide_exact: zero divisor");
    if (a.laurent_var() >= 0 || b.laurent_var() >= 0)
        throw computation_error("divide_exact: Laurent input not supported");
    const int nv = a.nvars();
    if (a.is_zero()) {
        Order oa = a.order();
        return MultiSeries<F>(nv, force_order ? Order(*force_order) : min_order(oa, b.order()));
    }
    if (!T::is_zero(b.constant_term())) {
        MultiSeries<F> q = a * b.unit_inverse(force_order.value_or(16));
        if (force_order) q.set_order(min_order(q.order(), Order(*force_order)));
        return q;
    }
    const int vb = b.min_degree();
    int ka;  // degree window within which a's coefficients are known
    if (a.order())
        ka = *a.order();
    else if (b.order())
        ka = *b.order() + a.max_degree();
    else
        ka = force_order ? *force_order + vb : a.max_degree() + vb + 4;
    if (b.order()) ka = std::min(ka, *b.order());
    const int kq = ka - vb;
    if (kq < 0) throw computation_error("divide_exact: divisor order exceeds dividend window");
    std::vector<ExpVec> unknowns = monomials_up_to(nv, kq);
    std::vector<ExpVec> rows = monomials_up_to(nv, ka);
    std::map<ExpVec, size_t> row_of;
    for (size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = r;
    Mat<F> m(rows.size(), std::vector<F>(unknowns.size(), T::zero()));
    std::vector<F> rhs(rows.size(), T::zero());
    for (size_t r = 0; r < rows.size(); ++r) rhs[r] = a.coeff(rows[r]);
    for (size_t u = 0; u < unknowns.size(); ++u) {
        for (const auto& [eb, cb] : b.terms()) {
            ExpVec e(size_t(nv), 0);
            for (int k = 0; k < nv; ++k) e[size_t(k)] = unknowns[u][size_t(k)] + eb[size_t(k)];
            auto it = row_of.find(e);
            if (it == row_of.end()) continue;
            m[it->second][u] = m[it->second][u] + cb;
        }
    }
    auto sol = solve_linear(std::move(m), std::move(rhs));
    if (!sol) throw computation_error("divide_exact: dividend is not divisible at the working order");
    MultiSeries<F> q(nv, kq);
    for (size_t u = 0; u < unknowns.size(); ++u) q.set_coeff(unknowns[u], (*sol)[u]);
    if (force_order) q.set_order(min_order(q.order(), Order(*force_order)));
    return q;
}

/// One-variable Laurent quotient a / b: b = s^v * unit, result may have poles in s.
template <class F>
MultiSeries<F> laurent_divide(const MultiSeries<F>& a, const MultiSeries<F>& b, int var) {
    if (b.is_zero()) throw computation_error("laurent_divide: zero divisor");
    auto v = b.valuation(var);
    MultiSeries<F> unit = b.laurent_shift(var, -v.value);
    return (a * unit.unit_inverse()).laurent_shift(var, -v.value);
}

}  // namespace coindex
