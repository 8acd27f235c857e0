#pragma once

#include <string>

#include "coindex/coincidence.hpp"
#include "coindex/geometry.hpp"
#include "coindex/qalg.hpp"

namespace coindex {

enum class Variant { tangential, split, split_nu1 };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& s);

/// Restricted canonical generator X on S: coefficients of d/dz^2..d/dz^n,
/// stored as z^1-free series in chart variables.
template <class F>
struct FoliationGenerator {
    Variant variant = Variant::tangential;
    std::vector<MultiSeries<F>> comps;  // n-1 entries
};

/// Ambient canonical local extension (X-script); n coefficient series.
template <class F>
struct LocalExtension {
    Variant variant = Variant::tangential;
    std::vector<MultiSeries<F>> coeffs;  // n entries, first one in I_S
};

template <class F>
FoliationGenerator<F> local_generator(const PairAnalysis<F>& pa, Variant variant) {
    const int n = int(pa.h.size());
    if (variant == Variant::tangential && !pa.tangential)
        throw hypothesis_error("local_generator: pair is not tangential");
    if (variant == Variant::split_nu1 && pa.nu != 1)
        throw hypothesis_error("local_generator: split_nu1 requires nu = 1");
    FoliationGenerator<F> gen;
    gen.variant = variant;
    MultiSeries<F> scale;
    if (variant == Variant::split_nu1) {
        scale = MultiSeries<F>::constant(n, scalar_traits<F>::one(), pa.h1_0.order()) +
                pa.h1_0.restricted(0);
    }
    bool all_zero = true;
    for (int j = 1; j < n; ++j) {
        MultiSeries<F> c = pa.h[size_t(j)].restricted(0);
        if (variant == Variant::split_nu1) c = c * scale;
        if (!c.is_zero()) all_zero = false;
        gen.comps.push_back(std::move(c));
    }
    if (all_zero)
        throw hypothesis_error("local_generator: the canonical foliation vanishes (D = 0)");
    return gen;
}

template <class F>
LocalExtension<F> local_extension(const PairAnalysis<F>& pa, Variant variant) {
    const int n = int(pa.h.size());
    LocalExtension<F> ext;
    ext.variant = variant;
    switch (variant) {
        case Variant::tangential: {
            if (!pa.tangential)
                throw hypothesis_error("local_extension: pair is not tangential");
            for (int j = 0; j < n; ++j) ext.coeffs.push_back(pa.h[size_t(j)]);
            break;
        }
        case Variant::split: {
            ext.coeffs.push_back(pa.k1 * MultiSeries<F>::variable(n, 0, pa.k1.order()));
            for (int j = 1; j < n; ++j) ext.coeffs.push_back(pa.h[size_t(j)]);
            break;
        }
        case Variant::split_nu1: {
            if (pa.nu != 1)
                throw hypothesis_error("local_extension: split_nu1 requires nu = 1");
            ext.coeffs.push_back(pa.k1 * MultiSeries<F>::variable(n, 0, pa.k1.order()));
            MultiSeries<F> scale =
                MultiSeries<F>::constant(n, scalar_traits<F>::one(), pa.h1_0.order()) + pa.h1_0;
            for (int j = 1; j < n; ++j) ext.coeffs.push_back(scale * pa.h[size_t(j)]);
            break;
        }
    }
    auto v = ext.coeffs[0].valuation(0);
    if (!ext.coeffs[0].is_zero() && v.value < 1)
        throw computation_error("local_extension: first coefficient escapes I_S");
    return ext;
}

struct CocycleCheckResult {
    bool pass = true;
    std::string detail;
};

/// The generator transformation law X-hat = (1/a|_S)^w X with w = nu
/// (tangential and split variants) or w = 1 (split_nu1).
template <class F>
CocycleCheckResult generator_cocycle_check(const FoliationGenerator<F>& gen_u,
                                           const FoliationGenerator<F>& gen_hat,
                                           const MapJet<F>& transition, int nu) {
    const int n = transition.nvars();
    auto val = transition.comps[0].valuation(0);
    if (val.value < 1) throw hypothesis_error("generator cocycle: transition not adapted");
    MultiSeries<F> a = transition.comps[0].divide_by_var_power(0, 1);
    if (scalar_traits<F>::is_zero(a.constant_term()))
        throw hypothesis_error("generator cocycle: unit a vanishes");
    int weight = gen_u.variant == Variant::split_nu1 ? 1 : nu;
    MultiSeries<F> factor =
        MultiSeries<F>::constant(n, scalar_traits<F>::one(), a.order());
    MultiSeries<F> a_inv = a.unit_inverse();
    for (int k = 0; k < weight; ++k) factor = factor * a_inv;
    factor = factor.restricted(0);

    Mat<MultiSeries<F>> inv_jac = invert_series_matrix(transition.jacobian());
    CocycleCheckResult res;
    for (int k = 0; k < n; ++k) {
        MultiSeries<F> acc(n, a.order());
        for (int j = 1; j < n; ++j) {
            MultiSeries<F> pulled = compose(gen_hat.comps[size_t(j - 1)], transition);
            acc = acc + pulled * inv_jac[size_t(k)][size_t(j)];
        }
        acc = acc.restricted(0);
        MultiSeries<F> expect =
            k == 0 ? MultiSeries<F>(n, a.order()) : factor * gen_u.comps[size_t(k - 1)].restricted(0);
        MultiSeries<F> defect = acc - expect.restricted(0);
        if (!defect.is_zero()) {
            res.pass = false;
            res.detail = "generator component " + std::to_string(k + 1) +
                         " cocycle defect: " + defect.str();
            return res;
        }
    }
    return res;
}

enum class CocycleRegime { tangential, comfortable };

/// Defect decomposition of Prop. (tangential-extension difference) and its
/// comfortable-embedding analogue: T_k collects tangential components with the
/// required vanishing order, V_2 generic second-order terms.
template <class F>
struct CocycleDefect {
    MapJet<F> t_part, v_part, residual;
    bool pass = true;
    std::string detail;
};

template <class F>
CocycleDefect<F> extension_cocycle_check(const LocalExtension<F>& ext_u,
                                         const LocalExtension<F>& ext_hat,
                                         const MapJet<F>& transition, int nu,
                                         CocycleRegime regime) {
    const int n = transition.nvars();
    if (regime == CocycleRegime::tangential && ext_u.variant != Variant::tangential)
        throw hypothesis_error("extension cocycle: regime/extension mismatch");
    if (regime == CocycleRegime::comfortable && ext_u.variant == Variant::tangential)
        throw hypothesis_error("extension cocycle: regime/extension mismatch");
    MultiSeries<F> a = transition.comps[0].divide_by_var_power(0, 1);
    if (scalar_traits<F>::is_zero(a.constant_term()))
        throw hypothesis_error("extension cocycle: unit a vanishes");
    int weight = ext_u.variant == Variant::split_nu1 ? 1 : nu;
    MultiSeries<F> factor = MultiSeries<F>::constant(n, scalar_traits<F>::one(), a.order());
    MultiSeries<F> a_inv = a.unit_inverse();
    for (int k = 0; k < weight; ++k) factor = factor * a_inv;

    Mat<MultiSeries<F>> inv_jac = invert_series_matrix(transition.jacobian());
    CocycleDefect<F> out;
    const int t_order = regime == CocycleRegime::tangential ? nu : 1;
    for (int k = 0; k < n; ++k) {
        MultiSeries<F> acc(n, a.order());
        for (int j = 0; j < n; ++j) {
            MultiSeries<F> pulled = compose(ext_hat.coeffs[size_t(j)], transition);
            acc = acc + pulled * inv_jac[size_t(k)][size_t(j)];
        }
        MultiSeries<F> defect = acc - factor * ext_u.coeffs[size_t(k)];
        MultiSeries<F> t_k(n, defect.order());
        MultiSeries<F> v_k(n, defect.order());
        MultiSeries<F> r_k(n, defect.order());
        for (const auto& [e, c] : defect.terms()) {
            int v = e[0];
            if (k >= 1 && v >= t_order) {
                t_k.set_coeff(e, c);
            } else if (v >= 2) {
                v_k.set_coeff(e, c);
            } else {
                r_k.set_coeff(e, c);
            }
        }
        if (!r_k.is_zero()) {
            out.pass = false;
            out.detail = "extension defect component " + std::to_string(k + 1) +
                         " has unclassifiable terms: " + r_k.str();
        }
        out.t_part.comps.push_back(std::move(t_k));
        out.v_part.comps.push_back(std::move(v_k));
        out.residual.comps.push_back(std::move(r_k));
    }
    return out;
}

enum class AtlasProperty { adapted, splitting, comfortable };

struct AtlasPropertyResult {
    bool pass = true;
    std::vector<std::string> failures;
    int overlaps_checked = 0;
};

/// Jet-level verification of the adaptedness / splitting / comfortable
/// memberships on every sampled overlap of the atlas.
AtlasPropertyResult atlas_property_check(const AtlasSpec& atlas, AtlasProperty property,
                                         int order = 8);

/// Singular point of the foliation: exact chart coordinates, or one root of a
/// squarefree Gaussian-rational polynomial held symbolically with a numeric box.
struct SingularPoint {
    int chart = 0;
    bool algebraic = false;
    Point coords;             // exact case: full chart coordinates (z1 = 0)
    Poly min_poly;            // algebraic case (n = 2): monic squarefree factor
    int root_index = 0;       // which root of min_poly (sorted numerically)
    Cplx approx{0.0, 0.0};    // numeric location (second chart coordinate for n = 2)
    int multiplicity = 1;
    std::vector<GaussRat> homogeneous;  // blow-up dedup key (projective)
    std::string id;
};

/// Ambient vector field (V-script) on a chart where S = {y = 0} may be singular.
template <class F>
struct SingularVectorField {
    std::vector<MultiSeries<F>> coeffs;
    MultiSeries<F> y;
    int nu = 1;
};

/// Coefficients (v^j o f - v^j o g) / y^nu via certified exact division.
template <class F>
SingularVectorField<F> build_singular_vfield(const MapJet<F>& pullback,
                                             const MultiSeries<F>& y, int nu) {
    const int n = pullback.nvars();
    SingularVectorField<F> out;
    out.y = y;
    out.nu = nu;
    MultiSeries<F> ypow = MultiSeries<F>::constant(n, scalar_traits<F>::one(), y.order());
    for (int k = 0; k < nu; ++k) ypow = ypow * y;
    for (int j = 0; j < n; ++j) {
        MultiSeries<F> diff = pullback.comps[size_t(j)] -
                              MultiSeries<F>::variable(n, j, pullback.comps[size_t(j)].order());
        out.coeffs.push_back(divide_exact_series(diff, ypow));
    }
    return out;
}

/// Graph of S near the origin: u^1 = gamma(u^2..u^n) solving y = 0, for y with
/// unit dy/du^1. Returned as an n-variable series free of the first variable.
template <class F>
MultiSeries<F> hypersurface_graph(const MultiSeries<F>& y, int order) {
    const int n = y.nvars();
    if (!scalar_traits<F>::is_zero(y.constant_term()))
        throw hypothesis_error("hypersurface_graph: y(0) != 0");
    ExpVec e1(size_t(n), 0);
    e1[0] = 1;
    if (scalar_traits<F>::is_zero(y.coeff(e1)))
        throw hypothesis_error("hypersurface_graph: dy/du1 is not a unit");
    MultiSeries<F> gamma(n, order);
    for (int pass = 0; pass < order + 1; ++pass) {
        MapJet<F> args;
        args.comps.push_back(gamma);
        for (int k = 1; k < n; ++k)
            args.comps.push_back(MultiSeries<F>::variable(n, k, order));
        MultiSeries<F> val = compose(y.truncated(order), args);
        MultiSeries<F> dy = compose(y.partial(0).truncated(order), args);
        gamma = gamma - val * dy.unit_inverse();
        gamma.set_order(order);
    }
    return gamma;
}

/// Substitute u^1 = gamma into a series (restriction to S in a singular chart).
template <class F>
MultiSeries<F> restrict_to_graph(const MultiSeries<F>& a, const MultiSeries<F>& gamma) {
    const int n = a.nvars();
    MapJet<F> args;
    args.comps.push_back(gamma);
    for (int k = 1; k < n; ++k)
        args.comps.push_back(MultiSeries<F>::variable(n, k, gamma.order()));
    return compose(a.truncated(gamma.order()), args);
}

struct VFieldConsistencyResult {
    bool pass = true;
    int min_defect_valuation = 0;
    std::string detail;
};

std::string atlas_property_name(AtlasProperty p);

}  // namespace coindex
