#pragma once

#include <random>

#include "coindex/pointfield.hpp"

namespace coindex::testing {

inline PolyN pmono(int n, std::vector<int32_t> e, long num, long den = 1) {
    return PolyN::monomial(n, ExpVec(e.begin(), e.end()), GaussRat::from_long(num, den));
}

inline std::vector<PolyN> identity_polys(int n) {
    std::vector<PolyN> out;
    for (int k = 0; k < n; ++k) out.push_back(PolyN::variable(n, k));
    return out;
}

// F = z + (z_2^d, z_1^d) swap family on C^2
inline std::vector<PolyN> swap_family(int d) {
    return {pmono(2, {1, 0}, 1) + pmono(2, {0, int32_t(d)}, 1),
            pmono(2, {0, 1}, 1) + pmono(2, {int32_t(d), 0}, 1)};
}

// F = z + (z_1^2, ..., z_n^2)
inline std::vector<PolyN> diag_square_family(int n) {
    std::vector<PolyN> F;
    for (int j = 0; j < n; ++j) {
        ExpVec lin(size_t(n), 0), sq(size_t(n), 0);
        lin[size_t(j)] = 1;
        sq[size_t(j)] = 2;
        F.push_back(PolyN::monomial(n, lin, GaussRat::one()) +
                    PolyN::monomial(n, sq, GaussRat::one()));
    }
    return F;
}

inline GaussRat grat(long num, long den = 1) { return GaussRat::from_long(num, den); }

// random sparse polynomial with small rational coefficients
inline MultiSeries<GaussRat> random_series(std::mt19937& rng, int nvars, int order, int terms,
                                           bool exact = false) {
    std::uniform_int_distribution<int> expd(0, order);
    std::uniform_int_distribution<long> coeffd(-6, 6);
    std::uniform_int_distribution<long> dend(1, 4);
    MultiSeries<GaussRat> s(nvars, exact ? Order() : Order(order));
    for (int t = 0; t < terms; ++t) {
        ExpVec e;
        int left = order;
        for (int v = 0; v < nvars; ++v) {
            int x = std::uniform_int_distribution<int>(0, left)(rng);
            e.push_back(x);
            left -= x;
        }
        long c = coeffd(rng);
        if (c == 0) continue;
        s.add_to_coeff(e, GaussRat::from_long(c, dend(rng)));
    }
    return s;
}

struct OverlapJets {
    PairAnalysis<GaussRat> pa_u, pa_hat;
    MapJet<GaussRat> transition;  // recentered at the sample and its image
};

// analyses of the same pair on both sides of an overlap, plus the recentered
// transition jet, all at one sampled point of S
inline OverlapJets overlap_analyses(const AtlasSpec& atlas, const PairSpec& pair, int i, int j,
                                    const Point& sample, int order) {
    OverlapJets out;
    out.pa_u = analyze_pair_at_point(pair.f[size_t(i)], pair.g[size_t(i)], sample, order);
    const RationalMap& tr = atlas.transition(i, j);
    Point image = tr.eval(sample);
    out.pa_hat = analyze_pair_at_point(pair.f[size_t(j)], pair.g[size_t(j)], image, order);
    auto jet = tr.jet_at(sample, order);
    for (int k = 0; k < atlas.n; ++k)
        out.transition.comps.push_back(
            jet.comps[size_t(k)] - PolyN::constant(atlas.n, image[size_t(k)], order));
    return out;
}

}  // namespace coindex::testing
