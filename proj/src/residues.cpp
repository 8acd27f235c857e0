#include "coindex/residues.hpp"

#include <cmath>

namespace coindex {

namespace {

struct MembershipSolution {
    int exponent;
    std::vector<MultiSeries<GaussRat>> combiners;  // a_k with x^e = sum a_k d_k
};

// smallest e with x_j^e in (d_1..d_m) modulo total degree > D
std::optional<MembershipSolution> monomialize_var(
    const std::vector<MultiSeries<GaussRat>>& dens, int var, int degree, int exp_max) {
    const int m = int(dens.size());
    const int nv = dens[0].nvars();
    std::vector<ExpVec> rows = monomials_up_to(nv, degree);
    std::map<ExpVec, size_t> row_of;
    for (size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = r;
    std::vector<ExpVec> unknowns = monomials_up_to(nv, degree);
    const size_t cols = unknowns.size() * size_t(m);
    Mat<GaussRat> a(rows.size(), std::vector<GaussRat>(cols, GaussRat::zero()));
    for (int k = 0; k < m; ++k) {
        for (size_t u = 0; u < unknowns.size(); ++u) {
            size_t col = size_t(k) * unknowns.size() + u;
            for (const auto& [e, c] : dens[size_t(k)].terms()) {
                ExpVec sum(size_t(nv), 0);
                bool ok = true;
                for (int i = 0; i < nv; ++i) {
                    sum[size_t(i)] = e[size_t(i)] + unknowns[u][size_t(i)];
                    if (sum[size_t(i)] < 0) ok = false;
                }
                if (!ok) continue;
                auto it = row_of.find(sum);
                if (it == row_of.end()) continue;
                a[it->second][col] += c;
            }
        }
    }
    for (int e = 1; e <= std::min(exp_max, degree); ++e) {
        std::vector<GaussRat> rhs(rows.size(), GaussRat::zero());
        ExpVec target(size_t(nv), 0);
        target[size_t(var)] = e;
        auto it = row_of.find(target);
        if (it == row_of.end()) break;
        rhs[it->second] = GaussRat::one();
        auto sol = solve_linear(a, rhs);
        if (!sol) continue;
        MembershipSolution ms;
        ms.exponent = e;
        for (int k = 0; k < m; ++k) {
            MultiSeries<GaussRat> comb(nv, degree);
            for (size_t u = 0; u < unknowns.size(); ++u)
                comb.set_coeff(unknowns[u], (*sol)[size_t(k) * unknowns.size() + u]);
            ms.combiners.push_back(std::move(comb));
        }
        return ms;
    }
    return std::nullopt;
}

std::optional<GaussRat> residue_at_degree(const MultiSeries<GaussRat>& num,
                                          const std::vector<MultiSeries<GaussRat>>& dens,
                                          int degree, int exp_max, std::vector<int>* exps_out) {
    const int nv = dens[0].nvars();
    Mat<MultiSeries<GaussRat>> a;
    std::vector<int> exps;
    int total_exp = 0;
    for (int j = 0; j < nv; ++j) {
        auto ms = monomialize_var(dens, j, degree, exp_max);
        if (!ms) return std::nullopt;
        exps.push_back(ms->exponent);
        total_exp += ms->exponent - 1;
        a.push_back(std::move(ms->combiners));
    }
    if (total_exp > degree) return std::nullopt;  // extraction beyond solved window
    MultiSeries<GaussRat> integrand = (num.truncated(degree) * det_series(a)).truncated(degree);
    ExpVec want(size_t(nv), 0);
    for (int j = 0; j < nv; ++j) want[size_t(j)] = exps[size_t(j)] - 1;
    if (exps_out) *exps_out = exps;
    return integrand.coeff(want);
}

}  // namespace

GrothendieckResult grothendieck_residue(const MultiSeries<GaussRat>& numerator,
                                        const std::vector<MultiSeries<GaussRat>>& denominators,
                                        GrothendieckOptions opt) {
    if (denominators.empty()) throw computation_error("grothendieck: no denominators");
    const int nv = denominators[0].nvars();
    if (int(denominators.size()) != nv)
        throw computation_error("grothendieck: need as many denominators as variables");
    for (const auto& d : denominators) {
        if (d.is_zero()) throw computation_error("grothendieck: zero denominator component");
        if (!scalar_traits<GaussRat>::is_zero(d.constant_term()))
            throw computation_error("grothendieck: denominator does not vanish at the point");
    }
    int avail = std::numeric_limits<int>::max() / 2;
    for (const auto& d : denominators)
        if (d.order()) avail = std::min(avail, *d.order());
    const int num_window = numerator.order() ? *numerator.order()
                                             : std::numeric_limits<int>::max() / 2;
    int d_cap = std::min(opt.d_max, avail - 1);
    std::optional<GaussRat> prev;
    for (int d = opt.d_start; d <= d_cap; ++d) {
        std::vector<int> exps;
        auto cur = residue_at_degree(numerator, denominators, d, opt.exponent_max, &exps);
        if (!cur) {
            prev.reset();
            continue;
        }
        int total_exp = 0;
        for (int e : exps) total_exp += e - 1;
        if (total_exp > num_window)
            throw computation_error("grothendieck: numerator truncated below the extraction degree");
        if (prev && *prev == *cur) {
            return {*cur, d, exps};
        }
        prev = cur;
    }
    if (avail - 1 < opt.d_max)
        throw computation_error(
            "grothendieck: truncation order too small for a stable transformation law");
    throw computation_error(
        "grothendieck: membership system never stabilized (non-isolated zero?)");
}

GaussRat simple_zero_residue(const MultiSeries<GaussRat>& numerator,
                             const std::vector<MultiSeries<GaussRat>>& denominators) {
    Mat<GaussRat> jac(denominators.size());
    for (size_t j = 0; j < denominators.size(); ++j)
        for (int k = 0; k < denominators[0].nvars(); ++k)
            jac[j].push_back(denominators[j].partial(k).constant_term());
    GaussRat det = det_matrix(jac);
    if (det.is_zero()) throw computation_error("simple_zero_residue: zero is not simple");
    return numerator.constant_term() / det;
}

int local_multiplicity(const std::vector<MultiSeries<GaussRat>>& components,
                       GrothendieckOptions opt) {
    Mat<MultiSeries<GaussRat>> jac(components.size());
    for (size_t j = 0; j < components.size(); ++j)
        for (int k = 0; k < components[0].nvars(); ++k)
            jac[j].push_back(components[j].partial(k));
    auto res = grothendieck_residue(det_series(jac), components, opt);
    const GaussRat& v = res.value;
    if (v.im != 0 || v.re.get_den() != 1 || v.re <= 0)
        throw computation_error("local multiplicity is not a positive integer: " + to_string(v));
    return int(v.re.get_num().get_si());
}

ContourResult contour_residue_numeric_1d(const std::function<Cplx(Cplx)>& f, Cplx center,
                                         double radius) {
    auto rule = [&](int m) {
        Cplx acc{0.0, 0.0};
        for (int k = 0; k < m; ++k) {
            double th = 2.0 * M_PI * double(k) / double(m);
            Cplx w{radius * std::cos(th), radius * std::sin(th)};
            acc += f(center + w) * w;
        }
        return acc / double(m);
    };
    int m = 64;
    Cplx prev = rule(m);
    for (int iter = 0; iter < 7; ++iter) {
        m *= 2;
        Cplx cur = rule(m);
        double diff = std::abs(cur - prev);
        if (diff < 1e-13 * std::max(1.0, std::abs(cur)))
            return {cur, std::max(diff, 1e-15 * std::max(1.0, std::abs(cur)))};
        prev = cur;
    }
    return {prev, std::abs(prev - rule(m / 2))};
}

Cplx eval_series(const MultiSeries<Cplx>& s, const std::vector<Cplx>& at) {
    Cplx acc{0.0, 0.0};
    for (const auto& [e, c] : s.terms()) {
        Cplx t = c;
        for (int k = 0; k < s.nvars(); ++k) {
            int ek = e[size_t(k)];
            for (int j = 0; j < std::abs(ek); ++j) t = ek > 0 ? t * at[size_t(k)] : t / at[size_t(k)];
        }
        acc += t;
    }
    return acc;
}

ContourResult contour_residue_numeric(const MultiSeries<Cplx>& numerator,
                                      const std::vector<MultiSeries<Cplx>>& denominators,
                                      double radius) {
    const int nv = numerator.nvars();
    if (nv == 1) {
        auto f = [&](Cplx z) {
            Cplx d{1.0, 0.0};
            for (const auto& den : denominators) d *= eval_series(den, {z});
            return eval_series(numerator, {z}) / d;
        };
        return contour_residue_numeric_1d(f, Cplx{0.0, 0.0}, radius);
    }
    // product torus; denominators must be monomials
    std::vector<int> pole(size_t(nv), 0);
    for (const auto& den : denominators) {
        if (den.term_count() != 1)
            throw computation_error("numeric contour: multivariate case needs monomial denominators");
        for (const auto& [e, c] : den.terms())
            for (int k = 0; k < nv; ++k) pole[size_t(k)] += e[size_t(k)];
    }
    auto rule = [&](int m) {
        Cplx acc{0.0, 0.0};
        std::vector<int> idx(size_t(nv), 0);
        for (;;) {
            std::vector<Cplx> z;
            Cplx weight{1.0, 0.0};
            for (int k = 0; k < nv; ++k) {
                double th = 2.0 * M_PI * double(idx[size_t(k)]) / double(m);
                Cplx w{radius * std::cos(th), radius * std::sin(th)};
                z.push_back(w);
                weight *= w;
            }
            Cplx den{1.0, 0.0};
            for (int k = 0; k < nv; ++k)
                for (int j = 0; j < pole[size_t(k)]; ++j) den *= z[size_t(k)];
            acc += eval_series(numerator, z) / den * weight;
            int k = 0;
            while (k < nv && ++idx[size_t(k)] == m) idx[size_t(k++)] = 0;
            if (k == nv) break;
        }
        double scale = std::pow(double(m), nv);
        return acc / scale;
    };
    Cplx a = rule(24), b = rule(48);
    return {b, std::max(std::abs(b - a), 1e-15 * std::max(1.0, std::abs(b)))};
}

SRestriction restrict_analysis(const PairAnalysis<GaussRat>& pa) {
    SRestriction r;
    const int n = int(pa.h.size());
    r.nu = pa.nu;
    r.tangential = pa.tangential;
    for (int j = 0; j < n; ++j) r.h.push_back(pa.h[size_t(j)].restricted(0).drop_var(0));
    r.dh.resize(size_t(n));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            r.dh[size_t(j)].push_back(pa.h[size_t(j)].partial(k).restricted(0).drop_var(0));
    if (pa.ell1) r.ell1 = pa.ell1->restricted(0).drop_var(0);
    r.k1 = pa.k1.restricted(0).drop_var(0);
    r.h10 = pa.h1_0.restricted(0).drop_var(0);
    return r;
}

namespace {

MultiSeries<GaussRat> power_of(const MultiSeries<GaussRat>& base, int e) {
    MultiSeries<GaussRat> acc =
        MultiSeries<GaussRat>::constant(base.nvars(), GaussRat::one(), base.order());
    for (int k = 0; k < e; ++k) acc = acc * base;
    return acc;
}

}  // namespace

GaussRat residue_cs_smooth_at(const SRestriction& r, Variant variant, GrothendieckOptions opt) {
    const int n = int(r.h.size());
    std::vector<MultiSeries<GaussRat>> dens(r.h.begin() + 1, r.h.end());
    MultiSeries<GaussRat> num;
    switch (variant) {
        case Variant::tangential:
            if (!r.tangential) throw hypothesis_error("cs residue: pair not tangential");
            num = power_of(r.ell1, n - 1);
            break;
        case Variant::split:
            if (r.nu <= 1) throw hypothesis_error("cs residue: split variant requires nu > 1");
            num = power_of(r.k1, n - 1);
            break;
        case Variant::split_nu1: {
            if (r.nu != 1) throw hypothesis_error("cs residue: split_nu1 requires nu = 1");
            num = power_of(r.k1, n - 1);
            MultiSeries<GaussRat> w =
                MultiSeries<GaussRat>::constant(n - 1, GaussRat::one(), r.h10.order()) + r.h10;
            for (auto& d : dens) d = d * w;
            break;
        }
    }
    return grothendieck_residue(num, dens, opt).value;
}

GaussRat residue_bb_at(const SRestriction& r, const PhiSpec& phi, int sign, bool nu1_variant,
                       GrothendieckOptions opt) {
    const int n = int(r.h.size());
    if (!phi.weighted_homogeneous(n - 1))
        throw hypothesis_error("bb residue: phi must be weighted-homogeneous of degree n-1");
    Mat<MultiSeries<GaussRat>> H;
    std::vector<MultiSeries<GaussRat>> dens;
    if (!nu1_variant) {
        for (int j = 1; j < n; ++j) {
            std::vector<MultiSeries<GaussRat>> row;
            for (int k = 1; k < n; ++k) row.push_back(r.dh[size_t(j)][size_t(k)]);
            H.push_back(std::move(row));
        }
        dens.assign(r.h.begin() + 1, r.h.end());
    } else {
        if (r.nu != 1) throw hypothesis_error("bb residue: nu1 variant requires nu = 1");
        MultiSeries<GaussRat> one =
            MultiSeries<GaussRat>::constant(n - 1, GaussRat::one(), r.h[0].order());
        MultiSeries<GaussRat> w = one + r.h[0];
        for (int j = 1; j < n; ++j) {
            std::vector<MultiSeries<GaussRat>> row;
            for (int k = 1; k < n; ++k)
                row.push_back(r.dh[0][size_t(k)] * r.h[size_t(j)] + w * r.dh[size_t(j)][size_t(k)]);
            H.push_back(std::move(row));
            dens.push_back(w * r.h[size_t(j)]);
        }
    }
    return grothendieck_residue(phi_eval(phi, H, sign), dens, opt).value;
}

GaussRat residue_ls_at(const SRestriction& r, const PhiSpec& phi, int sign,
                       GrothendieckOptions opt) {
    const int n = int(r.h.size());
    if (r.nu <= 1) throw hypothesis_error("ls residue: theorem requires nu > 1");
    if (!r.tangential) throw hypothesis_error("ls residue: pair must be tangential");
    if (!phi.weighted_homogeneous(n - 1))
        throw hypothesis_error("ls residue: phi must be weighted-homogeneous of degree n-1");
    std::vector<MultiSeries<GaussRat>> dens(r.h.begin() + 1, r.h.end());
    return grothendieck_residue(phi_eval(phi, r.dh, sign), dens, opt).value;
}

namespace {

MultiSeries<GaussRat> branch_pullback(const MultiSeries<GaussRat>& germ, const BranchJet& br) {
    MapJet<GaussRat> args;
    args.comps.push_back(br.u1);
    args.comps.push_back(br.u2);
    return compose(germ, args);
}

bool divisible_by(const MultiSeries<GaussRat>& a, const MultiSeries<GaussRat>& b) {
    try {
        divide_exact_series(a, b);
        return true;
    } catch (const computation_error&) {
        return false;
    }
}

// the extension of b constant in the y-direction, canonical when (y, u^2) are
// coordinates at the point (dy/du^1 a unit)
MultiSeries<GaussRat> constant_in_y_extension(const MultiSeries<GaussRat>& b,
                                              const MultiSeries<GaussRat>& y) {
    ExpVec e1{1, 0};
    if (y.coeff(e1).is_zero())
        throw hypothesis_error(
            "branch residue: cs5/cs6 at a genuinely singular point needs a supplied b extension");
    int ord = b.order() ? *b.order() : (y.order() ? *y.order() : 12);
    MapJet<GaussRat> phi;
    phi.comps.push_back(y.truncated(ord));
    phi.comps.push_back(MultiSeries<GaussRat>::variable(2, 1, ord));
    MapJet<GaussRat> phi_inv = invert_map_jet(phi);
    MultiSeries<GaussRat> b_z = compose(b.truncated(ord), phi_inv);
    return compose(b_z.restricted(0), phi);
}

}  // namespace

GaussRat residue_cs_singular_branch(const MapJet<GaussRat>& pullback,
                                    const MultiSeries<GaussRat>& y, const BranchJet& branch,
                                    int nu, SingularCsVariant variant,
                                    const std::optional<MultiSeries<GaussRat>>& b_extension) {
    const int n = pullback.nvars();
    if (n != 2) throw hypothesis_error("singular-branch residues are n = 2 only");
    MultiSeries<GaussRat> a1 = compose(y.truncated(pullback.comps[0].order()), pullback) - y;
    MultiSeries<GaussRat> a2 =
        pullback.comps[1] - MultiSeries<GaussRat>::variable(2, 1, pullback.comps[1].order());
    if (!branch_pullback(y, branch).is_zero())
        throw hypothesis_error("branch residue: y does not vanish along the branch");
    MultiSeries<GaussRat> c2 = divide_exact_series(a2, power_of(y, nu));

    MultiSeries<GaussRat> quotient_num;   // integrand numerator after y-cancellation
    MultiSeries<GaussRat> extra_unit;     // cs6 denominator unit (1 + A1/y)
    switch (variant) {
        case SingularCsVariant::cs4: {
            quotient_num = divide_exact_series(a1, power_of(y, nu + 1));
            break;
        }
        case SingularCsVariant::cs5:
        case SingularCsVariant::cs6: {
            if (variant == SingularCsVariant::cs5 && nu <= 1)
                throw hypothesis_error("cs5 requires nu > 1");
            if (variant == SingularCsVariant::cs6 && nu != 1)
                throw hypothesis_error("cs6 requires nu = 1");
            MultiSeries<GaussRat> b = divide_exact_series(a1, power_of(y, nu));
            MultiSeries<GaussRat> bext;
            if (b_extension) {
                bext = *b_extension;
                if (!divisible_by(bext - b, y))
                    throw hypothesis_error("branch residue: supplied b extension disagrees on S");
            } else {
                bext = constant_in_y_extension(b, y);
            }
            MultiSeries<GaussRat> numer = a1 - power_of(y, nu) * bext;
            quotient_num = divide_exact_series(numer, power_of(y, nu + 1));
            if (variant == SingularCsVariant::cs6)
                extra_unit = MultiSeries<GaussRat>::constant(2, GaussRat::one(), a1.order()) +
                             divide_exact_series(a1, y);
            break;
        }
    }
    MultiSeries<GaussRat> numer_s = branch_pullback(quotient_num, branch);
    MultiSeries<GaussRat> denom_s = branch_pullback(c2, branch);
    if (!extra_unit.is_zero())
        denom_s = denom_s * branch_pullback(extra_unit, branch);
    if (denom_s.is_zero())
        throw computation_error("branch residue: denominator vanishes along the branch");
    MultiSeries<GaussRat> du2 = branch.u2.partial(0);
    MultiSeries<GaussRat> integrand = laurent_divide(numer_s * du2, denom_s, 0);
    return integrand.residue_coefficient(0);
}

GaussRat residue_cs_singular_vfield(const SingularVectorField<GaussRat>& vf,
                                    GrothendieckOptions opt) {
    const int n = int(vf.coeffs.size());
    if (vf.nu <= 1) throw hypothesis_error("cs7 requires nu > 1");
    int order_cap = vf.y.order() ? *vf.y.order() : 16;
    for (const auto& c : vf.coeffs)
        if (c.order()) order_cap = std::min(order_cap, *c.order());
    // V(y) = y * w certifies tangency
    MultiSeries<GaussRat> vy(n, order_cap);
    for (int j = 0; j < n; ++j) vy = vy + vf.coeffs[size_t(j)] * vf.y.partial(j).truncated(order_cap);
    MultiSeries<GaussRat> w = divide_exact_series(vy, vf.y.truncated(order_cap));
    MultiSeries<GaussRat> gamma = hypersurface_graph(vf.y.truncated(order_cap), order_cap);
    MultiSeries<GaussRat> num(n, order_cap);
    num = restrict_to_graph(power_of(w, n - 1), gamma).drop_var(0);
    std::vector<MultiSeries<GaussRat>> dens;
    for (int j = 1; j < n; ++j)
        dens.push_back(restrict_to_graph(vf.coeffs[size_t(j)], gamma).drop_var(0));
    return grothendieck_residue(num, dens, opt).value;
}

GaussRat residue_ls_vfield(const SingularVectorField<GaussRat>& vf, const PhiSpec& phi,
                           int sign, GrothendieckOptions opt) {
    const int n = int(vf.coeffs.size());
    if (vf.nu <= 1) throw hypothesis_error("ls2 requires nu > 1");
    if (!phi.weighted_homogeneous(n - 1))
        throw hypothesis_error("ls residue: phi must be weighted-homogeneous of degree n-1");
    int order_cap = vf.y.order() ? *vf.y.order() : 16;
    for (const auto& c : vf.coeffs)
        if (c.order()) order_cap = std::min(order_cap, *c.order());
    MultiSeries<GaussRat> gamma = hypersurface_graph(vf.y.truncated(order_cap), order_cap);
    Mat<MultiSeries<GaussRat>> Y;
    Y.resize(size_t(n));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            Y[size_t(j)].push_back(
                restrict_to_graph(vf.coeffs[size_t(j)].partial(k), gamma).drop_var(0));
    std::vector<MultiSeries<GaussRat>> dens;
    for (int j = 1; j < n; ++j)
        dens.push_back(restrict_to_graph(vf.coeffs[size_t(j)], gamma).drop_var(0));
    return grothendieck_residue(phi_eval(phi, Y, sign), dens, opt).value;
}

VFieldConsistency vfield_consistency_check(const SingularVectorField<GaussRat>& vf,
                                           const MapJet<GaussRat>& pullback, int chart_j,
                                           int order) {
    const int n = int(vf.coeffs.size());
    VFieldConsistency out;
    // adapted coordinates on U^j: z^1 = y, the others are the u's minus u^j
    ExpVec ej(size_t(n), 0);
    ej[size_t(chart_j)] = 1;
    if (vf.y.partial(chart_j).constant_term().is_zero()) {
        out.pass = false;
        out.detail = "dy/du^j is not a unit on this chart";
        return out;
    }
    MapJet<GaussRat> phi;
    phi.comps.push_back(vf.y.truncated(order));
    for (int k = 0; k < n; ++k) {
        if (k == chart_j) continue;
        phi.comps.push_back(MultiSeries<GaussRat>::variable(n, k, order));
    }
    MapJet<GaussRat> phi_inv = invert_map_jet(phi);
    // conjugate the pullback into the adapted coordinates
    MapJet<GaussRat> p_z = compose(phi, compose(pullback, phi_inv));
    auto pa = analyze_pair(p_z, MapJet<GaussRat>::identity(n, order));
    if (pa.nu != vf.nu) {
        out.pass = false;
        out.detail = "order of coincidence changed under the chart change";
        return out;
    }
    auto ext = local_extension(pa, Variant::tangential);
    // transform V into the adapted coordinates
    auto jac = phi.jacobian();
    for (int i = 0; i < n; ++i) {
        MultiSeries<GaussRat> acc(n, Order(order));
        for (int k = 0; k < n; ++k)
            acc = acc + jac[size_t(i)][size_t(k)].truncated(order) * vf.coeffs[size_t(k)];
        MultiSeries<GaussRat> vz = compose(acc.truncated(order), phi_inv);
        MultiSeries<GaussRat> defect = vz - ext.coeffs[size_t(i)];
        if (!defect.is_zero() && defect.valuation(0).value < vf.nu) {
            out.pass = false;
            out.detail = "defect of component " + std::to_string(i + 1) +
                         " has valuation below nu";
            return out;
        }
    }
    return out;
}

}  // namespace coindex
