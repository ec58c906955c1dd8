#pragma once
// Flex machinery of a smooth plane quartic: the degree-24 flex resultant
// Res_Z(H, F), the hyperflex GCD form, frame-certified hyperflex counting,
// and per-point flex typing.

#include "quartix/covariants.hpp"

#include <map>

namespace quartix {

struct FlexReport {
  MultiPoly R;                      // flex resultant, binary form of degree 24
  MultiPoly G;                      // GCD(R, R_X, R_Y)
  int hyperflex_count = 0;          // degree of the squarefree part of G
  LinearMap3 coordinate_change_used;
  std::map<int, int> profile;       // root multiplicity -> count; sums to 24
};

// Res_Z(H, F) after the change of frame gamma, as a binary form in (X, Y) of
// degree 24.  Roots are the (X:Y)-projections of the 24 inflection points,
// with multiplicity.  Throws MathError when gamma leaves a vanishing Z^4
// coefficient in F or Z^6 coefficient in its Hessian.
MultiPoly flex_resultant(const MultiPoly& F, const LinearMap3& gamma);

// Draws admissible unimodular frames until two of them agree on the minimal
// count (projection collisions can only inflate it); returns the resultant,
// the GCD form, and the certified count from the first minimal frame.
// Requires F smooth (I27 != 0) over a field of characteristic 0 or >= 29.
FlexReport hyperflex_form(const MultiPoly& F, unsigned long seed = 11);

// convenience wrapper for hyperflex_form(F, seed).hyperflex_count
int hyperflex_count(const MultiPoly& F, unsigned long seed = 11);

enum class FlexType { Ordinary, Flex, Hyperflex };

// Vanishing order of F restricted to its tangent line at P: 2 is an ordinary
// point, 3 a flex, 4 a hyperflex.  Cross-checked against the Hessian (order
// >= 3 iff H(P) = 0) and, among flexes, against the rank of the Jacobian
// [grad F; grad H] (rank 1 iff hyperflex).  P must lie on F and be a smooth
// point, with coordinates over the field of F.
FlexType point_flex_type(const MultiPoly& F, const std::array<Elem, 3>& P);

}  // namespace quartix
