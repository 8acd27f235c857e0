#pragma once

#include <optional>
#include <vector>

#include "coindex/poly.hpp"

namespace coindex {

/// Arithmetic in A = Q(i)[x]/(F) with F monic squarefree. Elements are
/// polynomials of degree < deg F. Used to evaluate residues exactly at
/// algebraic singular points without materializing their coordinates.
namespace qalg {

Poly reduce(const Poly& p, const Poly& modulus);
Poly mul(const Poly& a, const Poly& b, const Poly& modulus);
/// Inverse mod F; throws computation_error when gcd(a, F) != 1 (zero divisor).
Poly inverse(const Poly& a, const Poly& modulus);
/// Trace of the multiplication-by-a endomorphism of A; equals the sum of the
/// values of a at all roots of F.
GaussRat trace(const Poly& a, const Poly& modulus);

}  // namespace qalg

/// Residue data of a rational 1-form p/q dt at the roots of one squarefree
/// factor of q. `element` represents the residue as a function of the root;
/// when it is constant every root of the factor carries the same exact value.
struct AlgebraicResidue {
    Poly element;                     // residue as element of Q(i)[x]/(factor)
    std::optional<GaussRat> constant; // set when element has degree <= 0
    GaussRat factor_sum;              // exact sum of residues over the factor's roots
    int pole_order = 1;
};

/// Residue of p/q at the roots of `factor`, where factor^mult exactly divides q
/// and factor is monic squarefree. Throws when the cofactor shares a root.
AlgebraicResidue residue_at_factor_roots(const Poly& p, const Poly& q, const Poly& factor);

/// Exact residue of a rational function at a rational point.
GaussRat residue_at_rational(const RatFunc& f, const GaussRat& t0);

/// Sum of residues of (p/q) dt over all finite zeros of q, exactly, computed as
/// minus the residue at infinity. Requires deg p < deg q + 1 and gcd(p,q) = 1.
GaussRat rational_residue_sum(const Poly& p, const Poly& q);

}  // namespace coindex
