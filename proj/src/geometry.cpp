#include "coindex/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace coindex {

RationalMap RationalMap::from_polys(std::vector<PolyN> polys) {
    RationalMap m;
    m.nvars = polys.empty() ? 0 : polys[0].nvars();
    for (auto& p : polys) {
        RationalComponent c;
        c.den = PolyN::constant(m.nvars, GaussRat::one());
        c.num = std::move(p);
        m.comps.push_back(std::move(c));
    }
    return m;
}

RationalMap RationalMap::identity(int nvars) {
    std::vector<PolyN> comps;
    for (int k = 0; k < nvars; ++k) comps.push_back(PolyN::variable(nvars, k));
    return from_polys(std::move(comps));
}

GaussRat eval_poly(const PolyN& p, const Point& at) {
    GaussRat out = GaussRat::zero();
    for (const auto& [e, c] : p.terms()) {
        GaussRat m = c;
        for (int k = 0; k < p.nvars(); ++k)
            for (int j = 0; j < e[size_t(k)]; ++j) m *= at[size_t(k)];
        out += m;
    }
    return out;
}

PolyN shift_poly(const PolyN& p, const Point& at) {
    MapJet<GaussRat> translation;
    for (int k = 0; k < p.nvars(); ++k)
        translation.comps.push_back(PolyN::variable(p.nvars(), k) +
                                    PolyN::constant(p.nvars(), at[size_t(k)]));
    return compose(p, translation);
}

Point RationalMap::eval(const Point& p) const {
    Point out;
    for (const auto& c : comps) {
        GaussRat d = eval_poly(c.den, p);
        if (d.is_zero()) throw computation_error("rational map: denominator vanishes at point");
        out.push_back(eval_poly(c.num, p) / d);
    }
    return out;
}

MapJet<GaussRat> RationalMap::jet_at(const Point& p, int order) const {
    if (int(p.size()) != nvars) throw computation_error("rational map: bad point dimension");
    MapJet<GaussRat> jet;
    for (const auto& c : comps) {
        PolyN n = shift_poly(c.num, p).truncated(order);
        PolyN d = shift_poly(c.den, p).truncated(order);
        if (d.constant_term().is_zero())
            throw computation_error("rational map: denominator vanishes at expansion point");
        jet.comps.push_back((n * d.unit_inverse()).truncated(order));
    }
    return jet;
}

MultiSeries<RatFunc> generic_series_n2(const PolyN& p, int order) {
    if (p.nvars() != 2) throw computation_error("generic jet: n = 2 only");
    MultiSeries<RatFunc> out(2, order);
    // u^a t^b -> du^a (t + dt)^b, coefficients in Q(i)(t)
    for (const auto& [e, c] : p.terms()) {
        int a = e[0], b = e[1];
        // binomial expansion of (t+dt)^b
        mpq_class binom = 1;
        for (int k = 0; k <= b; ++k) {
            if (k > 0) binom = binom * (b - k + 1) / k;
            if (a + k > order) break;
            RatFunc coeff = RatFunc(Poly::monomial(b - k, GaussRat(mpq_class(binom)))) * RatFunc(c);
            ExpVec exp{int32_t(a), int32_t(k)};
            out.add_to_coeff(exp, coeff);
        }
    }
    return out;
}

MapJet<RatFunc> RationalMap::generic_jet_n2(int order) const {
    MapJet<RatFunc> jet;
    for (const auto& c : comps) {
        auto n = generic_series_n2(c.num, order);
        auto d = generic_series_n2(c.den, order);
        if (d.constant_term().is_zero())
            throw computation_error("rational map: denominator vanishes along S");
        jet.comps.push_back((n * d.unit_inverse()).truncated(order));
    }
    return jet;
}

const RationalMap& AtlasSpec::transition(int i, int j) const {
    auto it = transitions.find({i, j});
    if (it == transitions.end())
        throw computation_error("atlas: missing transition " + std::to_string(i) + "->" +
                                std::to_string(j));
    return it->second;
}

namespace {

// chart i of the blow-up: z_i = u, z_k = u t_k; chart vars ordered (u, t_k ascending k != i)
std::vector<PolyN> blowdown_polys(int n, int chart) {
    auto z = std::vector<PolyN>(size_t(n), PolyN(n));
    PolyN u = PolyN::variable(n, 0);
    int pos = 1;
    for (int k = 0; k < n; ++k) {
        if (k == chart) {
            z[size_t(k)] = u;
        } else {
            z[size_t(k)] = u * PolyN::variable(n, pos);
            ++pos;
        }
    }
    return z;
}

Mat<GaussRat> linear_part_of(const std::vector<PolyN>& F) {
    int n = int(F.size());
    Mat<GaussRat> L(size_t(n), std::vector<GaussRat>(size_t(n), GaussRat::zero()));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            ExpVec e(size_t(n), 0);
            e[size_t(k)] = 1;
            L[size_t(i)][size_t(k)] = F[size_t(i)].coeff(e);
        }
    }
    return L;
}

int dominant_index(const std::vector<GaussRat>& column) {
    int best = 0;
    mpq_class best_norm = column[0].norm2();
    for (size_t k = 1; k < column.size(); ++k) {
        mpq_class nk = column[k].norm2();
        if (nk > best_norm) {
            best = int(k);
            best_norm = nk;
        }
    }
    return best;
}

// lift of the polynomial self-map F through chart i of the blow-up
std::pair<RationalMap, int> lift_map(int n, const std::vector<PolyN>& F, int chart,
                                     const Mat<GaussRat>& L) {
    auto col = std::vector<GaussRat>(size_t(n));
    for (int k = 0; k < n; ++k) col[size_t(k)] = L[size_t(k)][size_t(chart)];
    int target = dominant_index(col);

    MapJet<GaussRat> bd;
    bd.comps = blowdown_polys(n, chart);
    auto w = std::vector<PolyN>(size_t(n), PolyN(n));
    for (int k = 0; k < n; ++k) w[size_t(k)] = compose(F[size_t(k)], bd);
    // every w_k is divisible by u
    auto wh = std::vector<PolyN>(size_t(n), PolyN(n));
    for (int k = 0; k < n; ++k) wh[size_t(k)] = w[size_t(k)].divide_by_var_power(0, 1);

    RationalMap out;
    out.nvars = n;
    RationalComponent first;
    first.num = PolyN::variable(n, 0) * wh[size_t(target)];
    first.den = PolyN::constant(n, GaussRat::one());
    out.comps.push_back(std::move(first));
    for (int k = 0; k < n; ++k) {
        if (k == target) continue;
        RationalComponent c;
        c.num = wh[size_t(k)];
        c.den = wh[size_t(target)];
        out.comps.push_back(std::move(c));
    }
    return {out, target};
}

}  // namespace

std::pair<AtlasSpec, PairSpec> build_blowup_family(int n, const std::vector<PolyN>& F,
                                                   const std::vector<PolyN>& G) {
    if (n < 2) throw config_error("blow-up family: need n >= 2");
    if (int(F.size()) != n || int(G.size()) != n)
        throw config_error("blow-up family: component count mismatch");
    for (const auto& p : F)
        if (!p.constant_term().is_zero()) throw config_error("blow-up family: F(0) != 0");
    for (const auto& p : G)
        if (!p.constant_term().is_zero()) throw config_error("blow-up family: G(0) != 0");
    Mat<GaussRat> LF = linear_part_of(F), LG = linear_part_of(G);
    if (LF != LG)
        throw hypothesis_error("blow-up family: dF_0 != dG_0, lifts disagree on the divisor");
    if (det_matrix(LF).is_zero())
        throw hypothesis_error("blow-up family: degenerate linear part");

    AtlasSpec atlas;
    atlas.name = "blowup_C" + std::to_string(n);
    atlas.n = n;
    for (int i = 0; i < n; ++i) atlas.charts.push_back({i, true});

    // transitions (i, j): u' = u t_j ; t'_i = 1/t_j ; t'_m = t_m / t_j
    for (int i = 0; i < n; ++i) {
        std::vector<int> vars_i;  // z-index per chart variable position (skipping u)
        for (int k = 0; k < n; ++k)
            if (k != i) vars_i.push_back(k);
        auto tvar = [&](int zk) {  // chart-i variable holding t_{zk}
            for (size_t p = 0; p < vars_i.size(); ++p)
                if (vars_i[p] == zk) return PolyN::variable(n, int(p) + 1);
            throw computation_error("blow-up: bad variable lookup");
        };
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            RationalMap tr;
            tr.nvars = n;
            RationalComponent uc;
            uc.num = PolyN::variable(n, 0) * tvar(j);
            uc.den = PolyN::constant(n, GaussRat::one());
            tr.comps.push_back(std::move(uc));
            for (int m = 0; m < n; ++m) {
                if (m == j) continue;
                RationalComponent c;
                c.num = m == i ? PolyN::constant(n, GaussRat::one()) : tvar(m);
                c.den = tvar(j);
                tr.comps.push_back(std::move(c));
            }
            atlas.transitions[{i, j}] = std::move(tr);

            // overlap samples on S: u = 0, t entries from a fixed list, t_j != 0
            std::vector<Point> samples;
            std::vector<mpq_class> base{mpq_class(1), mpq_class(2), mpq_class(-1, 2)};
            for (const auto& b : base) {
                Point p(size_t(n), GaussRat::zero());
                int pos = 1;
                for (int k = 0; k < n; ++k) {
                    if (k == i) continue;
                    p[size_t(pos)] = GaussRat(mpq_class(b + pos - 1));
                    if (p[size_t(pos)].is_zero()) p[size_t(pos)] = GaussRat::from_long(3);
                    ++pos;
                }
                samples.push_back(p);
            }
            atlas.overlap_samples[{i, j}] = std::move(samples);
        }
    }
    if (n >= 3) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = j + 1; k < n; ++k) {
                    Point p(size_t(n), GaussRat::zero());
                    for (int m = 1; m < n; ++m) p[size_t(m)] = GaussRat::from_long(m + 1);
                    atlas.triple_samples.emplace_back(i, j, k, p);
                }
    }

    PairSpec pair;
    pair.family = "builtin_blowup";
    pair.n = n;
    pair.base_f = F;
    pair.base_g = G;
    for (int i = 0; i < n; ++i) {
        auto [fm, ft] = lift_map(n, F, i, LF);
        auto [gm, gt] = lift_map(n, G, i, LG);
        pair.f.push_back(std::move(fm));
        pair.f_target.push_back(ft);
        pair.g.push_back(std::move(gm));
        pair.g_target.push_back(gt);
    }
    return {atlas, pair};
}

ConsistencyReport verify_atlas(const AtlasSpec& atlas, int order) {
    ConsistencyReport rep;
    for (const auto& [key, tr] : atlas.transitions) {
        auto [i, j] = key;
        auto samples = atlas.overlap_samples.count(key) ? atlas.overlap_samples.at(key)
                                                        : std::vector<Point>{};
        for (const auto& p : samples) {
            ++rep.checks;
            // adaptedness: first transition component = a * z1 with a a unit
            auto jet = tr.jet_at(p, order);
            auto val = jet.comps[0].valuation(0);
            if (val.value < 1) {
                rep.fail("transition (" + std::to_string(i) + "," + std::to_string(j) +
                         ") not adapted at a sample");
                continue;
            }
            auto a = jet.comps[0].divide_by_var_power(0, 1);
            if (a.constant_term().is_zero())
                rep.fail("transition (" + std::to_string(i) + "," + std::to_string(j) +
                         ") unit a vanishes at a sample");
            // round-trip with the reverse transition
            if (atlas.has_transition(j, i)) {
                Point q = tr.eval(p);
                auto back = atlas.transition(j, i).jet_at(q, order);
                auto fwd = tr.jet_at(p, order);
                // recentre: compose pure jets
                MapJet<GaussRat> fwd0, back0;
                for (int c = 0; c < int(fwd.comps.size()); ++c) {
                    fwd0.comps.push_back(fwd.comps[size_t(c)] -
                                         PolyN::constant(atlas.n, q[size_t(c)], order));
                    back0.comps.push_back(back.comps[size_t(c)] -
                                          PolyN::constant(atlas.n, p[size_t(c)], order));
                }
                auto round = compose(back0, fwd0);
                auto id = MapJet<GaussRat>::identity(atlas.n, order);
                for (int c = 0; c < atlas.n; ++c)
                    if (!(round.comps[size_t(c)] == id.comps[size_t(c)]))
                        rep.fail("transition round-trip failed on (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
            }
        }
    }
    // cocycle on sampled triple overlaps
    for (const auto& [i, j, k, p] : atlas.triple_samples) {
        ++rep.checks;
        Point via_j = atlas.transition(j, k).eval(atlas.transition(i, j).eval(p));
        Point direct = atlas.transition(i, k).eval(p);
        if (via_j != direct) rep.fail("cocycle failure on sampled triple overlap");
    }
    return rep;
}

ConsistencyReport verify_pair_consistency(const AtlasSpec& atlas, const PairSpec& pair,
                                          int order) {
    ConsistencyReport rep;
    const int n = atlas.n;
    for (const auto& [key, tr] : atlas.transitions) {
        auto [i, j] = key;
        if (!atlas.overlap_samples.count(key)) continue;
        for (const auto& p : atlas.overlap_samples.at(key)) {
            for (int which = 0; which < 2; ++which) {
                const auto& maps = which == 0 ? pair.f : pair.g;
                const auto& targets = which == 0 ? pair.f_target : pair.g_target;
                ++rep.checks;
                Point pj = tr.eval(p);
                Point fi = maps[size_t(i)].eval(p);
                Point fj = maps[size_t(j)].eval(pj);
                int ti = targets[size_t(i)], tj = targets[size_t(j)];
                Point fi_in_tj = ti == tj ? fi : atlas.transition(ti, tj).eval(fi);
                if (fi_in_tj != fj) {
                    rep.fail(std::string(which == 0 ? "f" : "g") + " inconsistent at sample on (" +
                             std::to_string(i) + "," + std::to_string(j) + ")");
                    continue;
                }
                // jet-level check: T_{ti,tj} o map_i = map_j o T_{ij} around the sample
                auto lhs_outer = ti == tj ? MapJet<GaussRat>::identity(n, order)
                                          : [&] {
                                                auto jet = atlas.transition(ti, tj).jet_at(fi, order);
                                                MapJet<GaussRat> out;
                                                for (int c = 0; c < n; ++c)
                                                    out.comps.push_back(
                                                        jet.comps[size_t(c)] -
                                                        PolyN::constant(n, fj[size_t(c)], order));
                                                return out;
                                            }();
                auto center = [&](const MapJet<GaussRat>& jet, const Point& at) {
                    MapJet<GaussRat> out;
                    for (int c = 0; c < n; ++c)
                        out.comps.push_back(jet.comps[size_t(c)] -
                                            PolyN::constant(n, at[size_t(c)], order));
                    return out;
                };
                auto mi = center(maps[size_t(i)].jet_at(p, order), fi);
                auto mj = center(maps[size_t(j)].jet_at(pj, order), fj);
                auto trj = center(tr.jet_at(p, order), pj);
                auto lhs = compose(lhs_outer, mi);
                auto rhs = compose(mj, trj);
                for (int c = 0; c < n; ++c)
                    if (!(lhs.comps[size_t(c)] == rhs.comps[size_t(c)]))
                        rep.fail(std::string(which == 0 ? "f" : "g") +
                                 " jet conjugation failed on (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
            }
        }
    }
    // g has unit Jacobian along sampled S-points
    for (size_t i = 0; i < pair.g.size(); ++i) {
        Point p(size_t(n), GaussRat::zero());
        for (int m = 1; m < n; ++m) p[size_t(m)] = GaussRat::from_long(m);
        ++rep.checks;
        auto jet = pair.g[i].jet_at(p, 2);
        if (det_matrix(jet.linear_part()).is_zero())
            rep.fail("g Jacobian degenerate at sampled S-point in chart " + std::to_string(i));
    }
    return rep;
}

namespace {

// dense ring Q(i)[h]/(h^n)
using HRing = std::vector<GaussRat>;

HRing hr_const(int n, GaussRat c) {
    HRing v(size_t(n), GaussRat::zero());
    v[0] = std::move(c);
    return v;
}

HRing hr_mul(const HRing& a, const HRing& b) {
    int n = int(a.size());
    HRing out(size_t(n), GaussRat::zero());
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j) out[size_t(i + j)] += a[size_t(i)] * b[size_t(j)];
    return out;
}

HRing hr_inv(const HRing& a) {
    int n = int(a.size());
    HRing out(size_t(n), GaussRat::zero());
    GaussRat c0 = GaussRat::one() / a[0];
    out[0] = c0;
    for (int k = 1; k < n; ++k) {
        GaussRat acc = GaussRat::zero();
        for (int j = 1; j <= k; ++j) acc += a[size_t(j)] * out[size_t(k - j)];
        out[size_t(k)] = -acc * c0;
    }
    return out;
}

HRing hr_pow(HRing base, int e) {
    HRing out = hr_const(int(base.size()), GaussRat::one());
    for (int k = 0; k < e; ++k) out = hr_mul(out, base);
    return out;
}

// total Chern class (1 + h)^n
HRing chern_tps(int n) {
    HRing one_plus_h = hr_const(n, GaussRat::one());
    if (n > 1) one_plus_h[1] = GaussRat::one();
    return hr_pow(one_plus_h, n);
}

GaussRat phi_of_virtual(int n, const PhiSpec& phi, const HRing& total_chern) {
    // e_i := c_i of the virtual bundle; read the h^{n-1} coefficient
    HRing acc(size_t(n), GaussRat::zero());
    for (const auto& [exps, coeff] : phi.terms) {
        HRing term = hr_const(n, GaussRat::from_long(coeff));
        for (size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            HRing ci(size_t(n), GaussRat::zero());
            if (int(i + 1) < n) ci[i + 1] = total_chern[i + 1];
            for (int rep = 0; rep < exps[i]; ++rep) term = hr_mul(term, ci);
        }
        for (int k = 0; k < n; ++k) acc[size_t(k)] += term[size_t(k)];
    }
    return acc[size_t(n - 1)];
}

}  // namespace

CharacteristicTarget chern_expand_cs(int n) {
    // integral over S of c_1([S])^{n-1}; [S]|_S has c_1 = -h on the blow-up
    GaussRat v = GaussRat::from_long((n - 1) % 2 == 0 ? 1 : -1);
    return {"cs", v, "builtin-closed-form"};
}

CharacteristicTarget chern_expand_bb(int n, const PhiSpec& phi, int nu) {
    if (!phi.weighted_homogeneous(n - 1))
        throw hypothesis_error("phi must be weighted-homogeneous of degree n-1");
    // c(TS - N^nu) = (1+h)^n / (1 - nu h)
    HRing cts = chern_tps(n);
    HRing cnu = hr_const(n, GaussRat::one());
    if (n > 1) cnu[1] = GaussRat::from_long(-nu);
    HRing total = hr_mul(cts, hr_inv(cnu));
    return {"bb", phi_of_virtual(n, phi, total), "builtin-closed-form"};
}

CharacteristicTarget chern_expand_ls(int n, const PhiSpec& phi, int nu) {
    if (!phi.weighted_homogeneous(n - 1))
        throw hypothesis_error("phi must be weighted-homogeneous of degree n-1");
    // c(TM|_S - [S]^nu) = (1+h)^n (1-h) / (1 - nu h)
    HRing cts = chern_tps(n);
    HRing oneminus = hr_const(n, GaussRat::one());
    if (n > 1) oneminus[1] = GaussRat::from_long(-1);
    HRing cnu = hr_const(n, GaussRat::one());
    if (n > 1) cnu[1] = GaussRat::from_long(-nu);
    HRing total = hr_mul(hr_mul(cts, oneminus), hr_inv(cnu));
    return {"ls", phi_of_virtual(n, phi, total), "builtin-closed-form"};
}

CharacteristicTarget chern_expand_count(int n, int nu) {
    // top Chern class of TS tensor (N^nu)^*: sum_j binom(n, j) nu^{n-1-j}
    GaussRat acc = GaussRat::zero();
    mpz_class binom = 1;
    for (int j = 0; j <= n - 1; ++j) {
        if (j > 0) binom = binom * (n - j + 1) / j;
        mpz_class nupow = 1;
        for (int k = 0; k < n - 1 - j; ++k) nupow *= nu;
        acc += GaussRat(mpq_class(binom * nupow));
    }
    return {"count", acc, "builtin-closed-form"};
}

}  // namespace coindex
