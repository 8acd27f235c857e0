#pragma once

#include "coindex/foliation.hpp"

namespace coindex {

/// Pair analysis recentered at an exact point p of S (chart coordinates,
/// first coordinate zero). f and g must share the image point.
PairAnalysis<GaussRat> analyze_pair_at_point(const RationalMap& f, const RationalMap& g,
                                             const Point& p, int order);

/// n = 2: pair analysis at the generic point (0, t) of S over Q(i)(t).
/// Constant terms of the resulting germs are exact global functions on S.
PairAnalysis<RatFunc> analyze_pair_generic_n2(const RationalMap& f, const RationalMap& g,
                                              int order);

/// Exact global S-restrictions of the canonical data on one chart (n = 2).
struct N2ChartData {
    int chart = 0;
    int nu = 1;
    bool tangential = false;
    RatFunc h1, h2;         // h^j |_S as functions of the chart coordinate t
    RatFunc ell1, k1, h10;  // ell^1 |_S, k^1 |_S, h^1_0 |_S
    RatFunc dfg;            // d_{f,g} frame factor on S
    RatFunc H11, H12, H21, H22;  // (d h^j / d z^k)|_S
};

N2ChartData n2_chart_data(const RationalMap& f, const RationalMap& g, int chart, int order);

/// Generator coefficient on S for the requested foliation variant.
RatFunc n2_generator_component(const N2ChartData& data, Variant variant);

/// All singular points of the n = 2 foliation across the standard two-chart
/// blow-up atlas: every zero of the chart-0 generator plus the point at
/// infinity when the chart-1 generator vanishes at its origin.
std::vector<SingularPoint> find_singular_points_n2(const std::vector<N2ChartData>& charts,
                                                   Variant variant);

/// Exact residue of a rational integrand at one singular point. Per-point
/// values exist for exact points and for algebraic blocks with constant
/// residue; the block sum is always exact.
struct N2Residue {
    std::optional<GaussRat> per_point;
    GaussRat block_sum;
    int block_size = 1;
    std::string element_rep;  // non-constant algebraic residue, as a polynomial in the root
};

N2Residue residue_of_integrand_at(const RatFunc& integrand, const SingularPoint& pt);

RatFunc integrand_cs_n2(const N2ChartData& data, Variant variant);
RatFunc integrand_bb_n2(const N2ChartData& data, const PhiSpec& phi, int sign, bool nu1_variant);
RatFunc integrand_ls_n2(const N2ChartData& data, const PhiSpec& phi, int sign);
/// d log of the generator component; residues are local multiplicities.
RatFunc integrand_multiplicity_n2(const RatFunc& generator_component);

}  // namespace coindex
