#pragma once

#include <functional>

#include "coindex/pointfield.hpp"

namespace coindex {

struct GrothendieckOptions {
    int d_start = 3;
    int d_max = 14;
    int exponent_max = 12;
};

struct GrothendieckResult {
    GaussRat value;
    int stabilized_at = 0;        // degree D at which D and D+1 agreed
    std::vector<int> exponents;   // the monomialization exponents d_j
};

/// Grothendieck point residue of numerator / (d_1 ... d_m) at the origin via
/// the transformation law: monomialize the denominator ideal by exact linear
/// algebra, escalate the truncation degree until two consecutive degrees agree.
GrothendieckResult grothendieck_residue(const MultiSeries<GaussRat>& numerator,
                                        const std::vector<MultiSeries<GaussRat>>& denominators,
                                        GrothendieckOptions opt = {});

/// Shortcut valid at simple common zeros: numerator(0) / det(Jacobian)(0).
GaussRat simple_zero_residue(const MultiSeries<GaussRat>& numerator,
                             const std::vector<MultiSeries<GaussRat>>& denominators);

/// Local multiplicity of an isolated common zero: residue of the Jacobian
/// determinant; must come out a positive integer.
int local_multiplicity(const std::vector<MultiSeries<GaussRat>>& components,
                       GrothendieckOptions opt = {});

struct ContourResult {
    Cplx value{0.0, 0.0};
    double error_bound = 0.0;
};

/// Trapezoidal contour quadrature of (1/2 pi i) \oint f(z) dz on |z - c| = r.
ContourResult contour_residue_numeric_1d(const std::function<Cplx(Cplx)>& f, Cplx center,
                                         double radius);

/// Numeric oracle for series data: n = 2 single contour; for more variables the
/// denominators must be plain monomials (pre-monomialized input) and the rule
/// is the product torus.
ContourResult contour_residue_numeric(const MultiSeries<Cplx>& numerator,
                                      const std::vector<MultiSeries<Cplx>>& denominators,
                                      double radius);

Cplx eval_series(const MultiSeries<Cplx>& s, const std::vector<Cplx>& at);

/// phi evaluated on the elementary symmetric functions of a series matrix;
/// sign -1 evaluates phi(-M).
template <class F>
MultiSeries<F> phi_eval(const PhiSpec& phi, const Mat<MultiSeries<F>>& m, int sign) {
    if (phi.arity() > int(m.size()))
        throw hypothesis_error("phi arity exceeds matrix size");
    const int nv = m[0][0].nvars();
    auto es = elementary_symmetric_series(m);
    Order ord = es.back().order();
    MultiSeries<F> acc(nv, ord);
    for (const auto& [exps, coeff] : phi.terms) {
        MultiSeries<F> term =
            MultiSeries<F>::constant(nv, scalar_traits<F>::from_long(coeff), ord);
        for (size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            MultiSeries<F> base = es[i + 1];
            if (sign < 0 && (i + 1) % 2 == 1) base = -base;
            for (int rep = 0; rep < exps[i]; ++rep) term = term * base;
        }
        acc = acc + term;
    }
    return acc;
}

/// --- residue formulas at an exact singular point (series route, any n) ---

/// S-restricted data of a pair analysis: series in the n-1 coordinates of S.
struct SRestriction {
    std::vector<MultiSeries<GaussRat>> h;    // h^j |_S, j = 1..n, in n-1 variables
    Mat<MultiSeries<GaussRat>> dh;           // (d h^j / d z^k)|_S, n x n
    MultiSeries<GaussRat> ell1, k1, h10;
    int nu = 1;
    bool tangential = false;
};

SRestriction restrict_analysis(const PairAnalysis<GaussRat>& pa);

GaussRat residue_cs_smooth_at(const SRestriction& r, Variant variant, GrothendieckOptions opt = {});
GaussRat residue_bb_at(const SRestriction& r, const PhiSpec& phi, int sign, bool nu1_variant,
                       GrothendieckOptions opt = {});
GaussRat residue_ls_at(const SRestriction& r, const PhiSpec& phi, int sign,
                       GrothendieckOptions opt = {});

/// --- singular-S formulas (n = 2), branch-parametrized contours ---

/// Branch parametrization s -> (u^1(s), u^2(s)) of S at the point, as a 1-variable jet.
struct BranchJet {
    MultiSeries<GaussRat> u1, u2;  // 1-variable series in s, vanishing at s = 0
};

enum class SingularCsVariant { cs4, cs5, cs6 };

/// Residues via the y-cancelled integrand pulled back through the branch.
/// For cs5/cs6 the constant-in-y extension of b is derived from the chart when
/// dy/du^1 is a unit, or must be supplied by the caller.
GaussRat residue_cs_singular_branch(const MapJet<GaussRat>& pullback,
                                    const MultiSeries<GaussRat>& y, const BranchJet& branch,
                                    int nu, SingularCsVariant variant,
                                    const std::optional<MultiSeries<GaussRat>>& b_extension =
                                        std::nullopt);

/// (CS formula 7): nu > 1 tangential pairs, evaluated on charts where S is the
/// graph of the first coordinate (dy/du^1 a unit at the point).
GaussRat residue_cs_singular_vfield(const SingularVectorField<GaussRat>& vf,
                                    GrothendieckOptions opt = {});

/// (LS formula 2) on the same smooth-chart terms.
GaussRat residue_ls_vfield(const SingularVectorField<GaussRat>& vf, const PhiSpec& phi,
                           int sign, GrothendieckOptions opt = {});

struct VFieldConsistency {
    bool pass = true;
    std::string detail;
};

/// (V = X^j + V_nu): the ambient field agrees with the canonical extension in
/// the adapted coordinates of chart U^j up to coefficients in I_S^nu.
VFieldConsistency vfield_consistency_check(const SingularVectorField<GaussRat>& vf,
                                           const MapJet<GaussRat>& pullback, int chart_j,
                                           int order);

}  // namespace coindex
