#include "coindex/pointfield.hpp"

#include <algorithm>
#include <sstream>

namespace coindex {

namespace {

template <class F>
MapJet<F> recenter(const MapJet<F>& jet, const std::vector<F>& image) {
    MapJet<F> out;
    for (size_t k = 0; k < jet.comps.size(); ++k)
        out.comps.push_back(jet.comps[k] - MultiSeries<F>::constant(jet.nvars(), image[k],
                                                                    jet.comps[k].order()));
    return out;
}

}  // namespace

PairAnalysis<GaussRat> analyze_pair_at_point(const RationalMap& f, const RationalMap& g,
                                             const Point& p, int order) {
    auto fj = f.jet_at(p, order);
    auto gj = g.jet_at(p, order);
    Point fq, gq;
    for (int k = 0; k < f.ncomps(); ++k) {
        fq.push_back(fj.comps[size_t(k)].constant_term());
        gq.push_back(gj.comps[size_t(k)].constant_term());
    }
    if (fq != gq)
        throw hypothesis_error("pair analysis: f(p) != g(p) at the base point");
    return analyze_pair(recenter(fj, fq), recenter(gj, gq));
}

PairAnalysis<RatFunc> analyze_pair_generic_n2(const RationalMap& f, const RationalMap& g,
                                              int order) {
    auto fj = f.generic_jet_n2(order);
    auto gj = g.generic_jet_n2(order);
    std::vector<RatFunc> fq, gq;
    for (int k = 0; k < 2; ++k) {
        fq.push_back(fj.comps[size_t(k)].constant_term());
        gq.push_back(gj.comps[size_t(k)].constant_term());
    }
    if (!(fq[0] == gq[0]) || !(fq[1] == gq[1]))
        throw hypothesis_error("pair analysis: f != g along S");
    if (!fq[0].is_zero())
        throw hypothesis_error("pair analysis: map does not preserve S = {u = 0}");
    return analyze_pair(recenter(fj, fq), recenter(gj, gq));
}

N2ChartData n2_chart_data(const RationalMap& f, const RationalMap& g, int chart, int order) {
    PairAnalysis<RatFunc> pa = analyze_pair_generic_n2(f, g, order);
    N2ChartData d;
    d.chart = chart;
    d.nu = pa.nu;
    d.tangential = pa.tangential;
    d.h1 = pa.h[0].constant_term();
    d.h2 = pa.h[1].constant_term();
    d.ell1 = pa.ell1 ? pa.ell1->constant_term() : RatFunc();
    d.k1 = pa.k1.constant_term();
    d.h10 = pa.h1_0.constant_term();
    d.dfg = pa.dfg_factor.constant_term();
    d.H11 = pa.h[0].partial(0).constant_term();
    d.H12 = pa.h[0].partial(1).constant_term();
    d.H21 = pa.h[1].partial(0).constant_term();
    d.H22 = pa.h[1].partial(1).constant_term();
    // the du-coefficient route and the global-derivative route must agree
    if (!(d.H22 == d.h2.derivative()) || !(d.H12 == d.h1.derivative()))
        throw computation_error("generic analysis: inconsistent S-derivatives");
    return d;
}

RatFunc n2_generator_component(const N2ChartData& data, Variant variant) {
    if (variant == Variant::tangential && !data.tangential)
        throw hypothesis_error("generator: pair is not tangential");
    if (variant == Variant::split_nu1 && data.nu != 1)
        throw hypothesis_error("generator: split_nu1 requires nu = 1");
    RatFunc comp = data.h2;
    if (variant == Variant::split_nu1) comp = comp * (RatFunc(1) + data.h10);
    if (comp.is_zero()) throw hypothesis_error("generator vanishes identically (D = 0)");
    return comp;
}

namespace {

// small-denominator rationalization of a double, continued fractions
std::optional<mpq_class> rationalize(double x, long max_den = 100000000L) {
    if (!std::isfinite(x)) return std::nullopt;
    mpq_class best;
    double target = x;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = target;
    for (int iter = 0; iter < 40; ++iter) {
        double fl = std::floor(v);
        if (std::abs(fl) > 1e12 || std::abs(fl) * (std::abs(double(p1)) + 1.0) > 1e17) break;
        long a = long(fl);
        long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double approx = double(p1) / double(q1);
        if (std::abs(approx - target) < 1e-13 * std::max(1.0, std::abs(target))) {
            return mpq_class(p1, q1);
        }
        double rem = v - fl;
        if (rem < 1e-15) break;
        v = 1.0 / rem;
    }
    return std::nullopt;
}

std::string point_label(const SingularPoint& p) {
    std::ostringstream os;
    os << "chart" << p.chart << ":";
    if (p.algebraic) {
        os << "root#" << p.root_index << "(" << p.min_poly.str() << ")";
    } else {
        os << "t=" << to_string(p.coords.back());
    }
    return os.str();
}

}  // namespace

std::vector<SingularPoint> find_singular_points_n2(const std::vector<N2ChartData>& charts,
                                                   Variant variant) {
    std::vector<SingularPoint> out;
    if (charts.empty()) return out;
    std::vector<int> nonzero_root_count;
    for (const auto& cd : charts) {
        RatFunc comp = n2_generator_component(cd, variant);
        Poly num = comp.num().monic();
        const Poly& den = comp.den();
        int val0 = num.valuation_at_zero();
        nonzero_root_count.push_back(num.degree() - std::max(val0, 0));
        const bool primary = cd.chart == 0;
        for (auto& [factor, mult] : Poly::squarefree_decomposition(num)) {
            Poly f = factor;
            // extract Gaussian-rational roots by numeric + exact verification
            std::vector<GaussRat> rational_roots;
            for (const Cplx& r : Poly::roots_numeric(f)) {
                auto re = rationalize(r.real());
                auto im = rationalize(r.imag());
                if (!re || !im) continue;
                GaussRat cand(*re, *im);
                if (f.eval(cand).is_zero()) {
                    Poly lin{std::vector<GaussRat>{-cand, GaussRat::one()}};
                    auto [q, rem] = Poly::divmod(f, lin);
                    if (rem.is_zero()) {
                        f = q;
                        rational_roots.push_back(cand);
                    }
                }
            }
            for (const auto& r : rational_roots) {
                if (!primary && !r.is_zero()) continue;  // covered by chart 0
                if (den.eval(r).is_zero())
                    throw computation_error("singular points: denominator vanishes at a zero");
                SingularPoint p;
                p.chart = cd.chart;
                p.coords = {GaussRat::zero(), r};
                p.multiplicity = mult;
                p.approx = r.to_complex();
                p.homogeneous = cd.chart == 0
                                    ? std::vector<GaussRat>{GaussRat::one(), r}
                                    : std::vector<GaussRat>{r, GaussRat::one()};
                p.id = point_label(p);
                out.push_back(std::move(p));
            }
            if (f.degree() > 0) {
                if (!primary) {
                    // non-rational roots of a secondary chart are images of
                    // chart-0 points; only the origin is new there
                    continue;
                }
                Poly fm = f.monic();
                if (Poly::gcd(fm, den).degree() > 0)
                    throw computation_error("singular points: denominator vanishes on a factor");
                auto roots = Poly::roots_numeric(fm);
                for (size_t idx = 0; idx < roots.size(); ++idx) {
                    SingularPoint p;
                    p.chart = cd.chart;
                    p.algebraic = true;
                    p.min_poly = fm;
                    p.root_index = int(idx);
                    p.approx = roots[idx];
                    p.multiplicity = mult;
                    p.id = point_label(p);
                    out.push_back(std::move(p));
                }
            }
        }
    }
    // cross-chart coherence: nonzero roots must biject under t -> 1/t
    if (charts.size() == 2 && nonzero_root_count[0] != nonzero_root_count[1])
        throw computation_error("singular points: chart root counts disagree on the overlap");
    // canonical order: chart, then exact coordinates, then algebraic blocks
    std::sort(out.begin(), out.end(), [](const SingularPoint& a, const SingularPoint& b) {
        if (a.chart != b.chart) return a.chart < b.chart;
        if (a.algebraic != b.algebraic) return !a.algebraic;
        if (!a.algebraic) return GaussRat::cmp(a.coords.back(), b.coords.back()) < 0;
        if (!(a.min_poly == b.min_poly))
            return a.min_poly.str() < b.min_poly.str();
        return a.root_index < b.root_index;
    });
    return out;
}

N2Residue residue_of_integrand_at(const RatFunc& integrand, const SingularPoint& pt) {
    N2Residue out;
    if (!pt.algebraic) {
        GaussRat v = residue_at_rational(integrand, pt.coords.back());
        out.per_point = v;
        out.block_sum = v;
        out.block_size = 1;
        return out;
    }
    AlgebraicResidue ar =
        residue_at_factor_roots(integrand.num(), integrand.den(), pt.min_poly);
    out.block_size = pt.min_poly.degree();
    out.block_sum = ar.factor_sum;
    if (ar.constant) out.per_point = *ar.constant;
    out.element_rep = ar.element.str("a");
    return out;
}

namespace {

// elementary symmetric functions of a small RatFunc matrix
std::vector<RatFunc> elem_sym(const std::vector<std::vector<RatFunc>>& m) {
    size_t n = m.size();
    std::vector<RatFunc> e(n + 1, RatFunc());
    e[0] = RatFunc(1);
    if (n == 1) {
        e[1] = m[0][0];
    } else if (n == 2) {
        e[1] = m[0][0] + m[1][1];
        e[2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    } else {
        throw computation_error("n = 2 engine: unexpected matrix size");
    }
    return e;
}

RatFunc phi_apply(const PhiSpec& phi, const std::vector<RatFunc>& es, int sign) {
    RatFunc acc;
    for (const auto& [exps, coeff] : phi.terms) {
        RatFunc term(GaussRat::from_long(coeff));
        for (size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            if (i + 1 >= es.size())
                throw hypothesis_error("phi arity exceeds matrix size");
            RatFunc base = es[i + 1];
            if (sign < 0 && (i + 1) % 2 == 1) base = -base;
            for (int rep = 0; rep < exps[i]; ++rep) term = term * base;
        }
        acc = acc + term;
    }
    return acc;
}

}  // namespace

RatFunc integrand_cs_n2(const N2ChartData& data, Variant variant) {
    switch (variant) {
        case Variant::tangential:
            if (!data.tangential) throw hypothesis_error("cs residue: pair not tangential");
            return data.ell1 / data.h2;
        case Variant::split:
            if (data.nu <= 1)
                throw hypothesis_error("cs residue: split variant requires nu > 1");
            return data.k1 / data.h2;
        case Variant::split_nu1:
            if (data.nu != 1) throw hypothesis_error("cs residue: split_nu1 requires nu = 1");
            return data.k1 / ((RatFunc(1) + data.h10) * data.h2);
    }
    throw computation_error("unreachable");
}

RatFunc integrand_bb_n2(const N2ChartData& data, const PhiSpec& phi, int sign,
                        bool nu1_variant) {
    if (!phi.weighted_homogeneous(1))
        throw hypothesis_error("bb residue: phi must have weighted degree n-1 = 1");
    if (!nu1_variant) {
        std::vector<std::vector<RatFunc>> H{{data.H22}};
        return phi_apply(phi, elem_sym(H), sign) / data.h2;
    }
    if (data.nu != 1) throw hypothesis_error("bb residue: nu1 variant requires nu = 1");
    // H' = d((1+h^1)h^2)/dz^2 |_S, denominator (1+h^1) h^2 |_S
    RatFunc w = (RatFunc(1) + data.h1) * data.h2;
    RatFunc Hp = data.H12 * data.h2 + (RatFunc(1) + data.h1) * data.H22;
    std::vector<std::vector<RatFunc>> H{{Hp}};
    return phi_apply(phi, elem_sym(H), sign) / w;
}

RatFunc integrand_ls_n2(const N2ChartData& data, const PhiSpec& phi, int sign) {
    if (data.nu <= 1) throw hypothesis_error("ls residue: theorem requires nu > 1");
    if (!data.tangential) throw hypothesis_error("ls residue: pair must be tangential");
    if (!phi.weighted_homogeneous(1))
        throw hypothesis_error("ls residue: phi must have weighted degree n-1 = 1");
    std::vector<std::vector<RatFunc>> H{{data.H11, data.H12}, {data.H21, data.H22}};
    return phi_apply(phi, elem_sym(H), sign) / data.h2;
}

RatFunc integrand_multiplicity_n2(const RatFunc& generator_component) {
    // d log; only the numerator's roots contribute where the denominator is a unit
    const Poly& p = generator_component.num();
    return RatFunc(p.derivative(), p);
}

}  // namespace coindex
