#pragma once

#include <optional>

#include "coindex/series.hpp"
#include "coindex/series_matrix.hpp"

namespace coindex {

/// Order of coincidence, canonical-section coefficients and the derived germs
/// of a pair (f, g) in one chart adapted to (g, S), recentered at a base point
/// of S (or at the generic point of S when F is the rational-function field).
template <class F>
struct PairAnalysis {
    int nu = 0;
    bool nu_certain = true;
    std::vector<MultiSeries<F>> h;  // h^1..h^n with f^j - g^j = h^j (z^1)^nu
    bool tangential = false;
    std::optional<MultiSeries<F>> ell1;  // h^1 = ell1 * z^1, tangential pairs only
    MultiSeries<F> h1_0;                 // h^1 with z^1 = 0, as a germ on the chart
    MultiSeries<F> k1;                   // h^1 - h1_0 = k1 * z^1
    MultiSeries<F> dfg_factor;           // d_{f,g}(dz^1) = dfg_factor * dz^1 on S
    MapJet<F> pullback;                  // g^{-1} o f, recentered
};

/// g^{-1} o f from jets recentered at a base point on S (both fix the origin).
/// Checks that g is locally invertible and that f and g agree along S.
template <class F>
MapJet<F> special_pullback(const MapJet<F>& f, const MapJet<F>& g) {
    if (!f.fixes_origin() || !g.fixes_origin())
        throw computation_error("special_pullback: jets must be recentered");
    bool identical = true;
    for (size_t k = 0; k < f.comps.size(); ++k)
        if (!(f.comps[k] == g.comps[k] && f.comps[k].is_exact() && g.comps[k].is_exact()))
            identical = false;
    if (identical) return MapJet<F>::identity(f.nvars(), std::nullopt);  // f = g exactly
    MapJet<F> ginv = invert_map_jet(g);  // throws on singular linear part
    MapJet<F> p = compose(ginv, f);
    for (int j = 0; j < p.nvars(); ++j) {
        MultiSeries<F> diff =
            p.comps[size_t(j)] - MultiSeries<F>::variable(p.nvars(), j, p.comps[size_t(j)].order());
        if (!diff.is_zero() && diff.valuation(0).value < 1)
            throw hypothesis_error("special_pullback: f and g do not agree along S");
    }
    return p;
}

struct CoincidenceOrder {
    int nu;
    bool certain;
};

/// nu = min over components of the z^1-valuation of pullback^j - z^j.
template <class F>
CoincidenceOrder order_of_coincidence(const MapJet<F>& pullback) {
    const int n = pullback.nvars();
    int best = std::numeric_limits<int>::max();
    bool best_certain = false;
    bool any_nonzero = false;
    bool any_uncertain = false;
    for (int j = 0; j < n; ++j) {
        MultiSeries<F> diff = pullback.comps[size_t(j)] -
                              MultiSeries<F>::variable(n, j, pullback.comps[size_t(j)].order());
        if (diff.is_zero()) {
            if (!diff.is_exact()) any_uncertain = true;
            continue;  // the zero germ lies in every power of the ideal
        }
        any_nonzero = true;
        auto v = diff.valuation(0);
        if (v.value < best) {
            best = v.value;
            best_certain = v.certain;
        }
    }
    if (!any_nonzero) {
        if (any_uncertain)
            throw computation_error("order_of_coincidence: all differences truncation-limited");
        throw hypothesis_error("order_of_coincidence: f = g (identity pullback)");
    }
    return {best, best_certain && !(any_uncertain && best == std::numeric_limits<int>::max())};
}

template <class F>
PairAnalysis<F> canonical_coefficients(const MapJet<F>& pullback, int nu) {
    const int n = pullback.nvars();
    PairAnalysis<F> pa;
    pa.nu = nu;
    pa.pullback = pullback;
    for (int j = 0; j < n; ++j) {
        MultiSeries<F> diff = pullback.comps[size_t(j)] -
                              MultiSeries<F>::variable(n, j, pullback.comps[size_t(j)].order());
        pa.h.push_back(diff.divide_by_var_power(0, nu));  // throws when nu is wrong
    }
    auto v1 = pa.h[0].valuation(0);
    pa.tangential = pa.h[0].is_zero() || v1.value >= 1;
    if (pa.tangential && !pa.h[0].is_zero())
        pa.ell1 = pa.h[0].divide_by_var_power(0, 1);
    else if (pa.tangential)
        pa.ell1 = MultiSeries<F>(n, pa.h[0].order());
    pa.h1_0 = pa.h[0].restricted(0);
    pa.k1 = (pa.h[0] - pa.h1_0).divide_by_var_power(0, 1);
    pa.dfg_factor = pullback.comps[0].partial(0).restricted(0);
    return pa;
}

template <class F>
bool is_tangential(const PairAnalysis<F>& pa) {
    return pa.tangential;
}

/// Full analysis from recentered jets of f and g.
template <class F>
PairAnalysis<F> analyze_pair(const MapJet<F>& f, const MapJet<F>& g) {
    MapJet<F> p = special_pullback(f, g);
    auto ord = order_of_coincidence(p);
    PairAnalysis<F> pa = canonical_coefficients(p, ord.nu);
    pa.nu_certain = ord.certain;
    return pa;
}

struct GlueCheckResult {
    bool pass = true;
    std::string detail;
};

/// Proposition "gluing": the transformed local section agrees with the local
/// one mod I_S. All three inputs are jets recentered at one point of S and its
/// image under the transition.
template <class F>
GlueCheckResult glue_check_canonical_section(const PairAnalysis<F>& pa_u,
                                             const PairAnalysis<F>& pa_hat,
                                             const MapJet<F>& transition, int nu) {
    const int n = transition.nvars();
    auto val = transition.comps[0].valuation(0);
    if (val.value < 1)
        throw hypothesis_error("glue check: transition is not adapted (z1-hat not in I_S)");
    MultiSeries<F> a = transition.comps[0].divide_by_var_power(0, 1);
    if (scalar_traits<F>::is_zero(a.constant_term()))
        throw hypothesis_error("glue check: transition unit a vanishes");
    MultiSeries<F> a_pow = MultiSeries<F>::constant(n, scalar_traits<F>::one(), a.order());
    for (int k = 0; k < nu; ++k) a_pow = a_pow * a;

    Mat<MultiSeries<F>> inv_jac = invert_series_matrix(transition.jacobian());
    GlueCheckResult res;
    for (int k = 0; k < n; ++k) {
        MultiSeries<F> acc(n, a.order());
        for (int j = 0; j < n; ++j) {
            MultiSeries<F> hj_pulled = compose(pa_hat.h[size_t(j)], transition);
            acc = acc + hj_pulled * inv_jac[size_t(k)][size_t(j)];
        }
        MultiSeries<F> defect = (a_pow * acc - pa_u.h[size_t(k)]).restricted(0);
        if (!defect.is_zero()) {
            res.pass = false;
            res.detail = "component " + std::to_string(k + 1) +
                         " section mismatch mod I_S: " + defect.str();
            return res;
        }
    }
    return res;
}

}  // namespace coindex
