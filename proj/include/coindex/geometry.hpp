#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "coindex/phi.hpp"
#include "coindex/series.hpp"

namespace coindex {

/// Exact multivariate polynomial (a series without truncation bound).
using PolyN = MultiSeries<GaussRat>;

using Point = std::vector<GaussRat>;

/// Component of a rational map, num/den with den nonvanishing where expanded.
struct RationalComponent {
    PolyN num;
    PolyN den;  // exact polynomial; must not vanish at expansion points
};

struct RationalMap {
    int nvars = 0;
    std::vector<RationalComponent> comps;

    static RationalMap from_polys(std::vector<PolyN> polys);
    static RationalMap identity(int nvars);

    int ncomps() const { return int(comps.size()); }

    /// Exact value; throws when a denominator vanishes at the point.
    Point eval(const Point& p) const;

    /// Jet of the map recentered at p: series in local offsets x with x = 0 at p.
    /// Constant terms carry the image point.
    MapJet<GaussRat> jet_at(const Point& p, int order) const;

    /// n = 2 only: jet at the generic point (0, t) of S = {first var = 0},
    /// over the rational-function field Q(i)(t). Offsets (du, dt).
    MapJet<RatFunc> generic_jet_n2(int order) const;
};

PolyN shift_poly(const PolyN& p, const Point& at);
GaussRat eval_poly(const PolyN& p, const Point& at);
MultiSeries<RatFunc> generic_series_n2(const PolyN& p, int order);

struct AtlasChart {
    int id = 0;
    bool adapted = true;  // S = {z^1 = 0} in this chart
};

/// Chart atlas with exact rational transitions and sampled overlap data.
struct AtlasSpec {
    std::string name;
    int n = 0;  // ambient dimension
    std::vector<AtlasChart> charts;
    std::map<std::pair<int, int>, RationalMap> transitions;
    // sample points on S inside each overlap, in source-chart coordinates
    std::map<std::pair<int, int>, std::vector<Point>> overlap_samples;
    std::vector<std::tuple<int, int, int, Point>> triple_samples;

    const RationalMap& transition(int i, int j) const;
    bool has_transition(int i, int j) const {
        return transitions.count({i, j}) > 0;
    }
};

/// Per-chart map pair (f, g) with target chart bookkeeping.
struct PairSpec {
    std::string family;
    int n = 0;
    std::vector<RationalMap> f, g;
    std::vector<int> f_target, g_target;
    std::vector<PolyN> base_f, base_g;  // the downstairs polynomial maps
};

struct ConsistencyReport {
    bool pass = true;
    std::vector<std::string> failures;
    int checks = 0;
    void fail(std::string what) {
        pass = false;
        failures.push_back(std::move(what));
    }
};

/// Blow-up of C^n at the origin with the lifts of (F, G).
/// Requires F(0) = G(0) = 0 and dF_0 = dG_0 invertible.
std::pair<AtlasSpec, PairSpec> build_blowup_family(int n, const std::vector<PolyN>& F,
                                                   const std::vector<PolyN>& G);

/// Global well-definedness of the pair: overlap conjugation identities at the
/// sampled points (exact values and jets) and unit Jacobian of g along S.
ConsistencyReport verify_pair_consistency(const AtlasSpec& atlas, const PairSpec& pair,
                                          int order = 8);

/// Cocycle and adaptedness checks of the atlas itself at the sampled points.
ConsistencyReport verify_atlas(const AtlasSpec& atlas, int order = 8);

struct CharacteristicTarget {
    std::string which;  // "cs" | "bb" | "ls" | "count"
    GaussRat value;
    std::string provenance;  // "builtin-closed-form" | "user-supplied"
};

/// Exact characteristic numbers on the exceptional divisor P^{n-1} of the
/// blow-up family, computed in Q(i)[h]/(h^n).
CharacteristicTarget chern_expand_cs(int n);
CharacteristicTarget chern_expand_bb(int n, const PhiSpec& phi, int nu);
CharacteristicTarget chern_expand_ls(int n, const PhiSpec& phi, int nu);
CharacteristicTarget chern_expand_count(int n, int nu);

}  // namespace coindex
