#pragma once
// The thirteen Dixmier-Ohno invariants of a plane quartic in their integral
// normalization, the discriminant I27, absolute invariants, weighted
// projective equality, and the calibration machinery that pins every scalar.

#include "quartix/poly.hpp"

#include <array>
#include <vector>

namespace quartix {

// index order of the invariant vector (weights 3,6,9,12,15,18,27,9,12,15,18,21,21)
enum InvIdx {
  IDX_I3 = 0,
  IDX_I6,
  IDX_I9,
  IDX_I12,
  IDX_I15,
  IDX_I18,
  IDX_I27,
  IDX_J9,
  IDX_J12,
  IDX_J15,
  IDX_J18,
  IDX_I21,
  IDX_J21,
};

struct InvariantVector {
  std::array<Elem, 13> v;

  static const std::array<int, 13>& weights();
  static const std::array<const char*, 13>& names();

  Elem& operator[](int k) { return v[k]; }
  const Elem& operator[](int k) const { return v[k]; }
  const FieldPtr& field() const { return v[0].field(); }
};

// the twelve ratios (I6/I3^2, ..., I27/I3^9) and (J9/I3^3, ..., J21/I3^7);
// defined only when I3 is invertible
struct AbsoluteInvariants {
  std::array<Elem, 6> i;
  std::array<Elem, 6> j;
};

// Fixed scalars relating the operational covariant pipeline to the printed
// integral invariants: final_k = m_k * raw_k with m_k = norm_k * c_k, where
// norm_k is the printed power-of-2-and-3 normalization and c_k absorbs the
// pipeline's internal conventions.  c_sigma/c_psi scale the sigma/psi
// contravariants before the chain is built.  Derived once by `calibrate`
// against the anchor curves and frozen here; `calibrate` stays as a
// regression check.
struct CalibrationTable {
  mpq_class c_sigma, c_psi;
  std::array<mpq_class, 13> norm;
  std::array<mpq_class, 13> c;
  std::array<mpq_class, 13> m;
};
const CalibrationTable& calibration_table();

// the thirteen invariants of a smooth-or-not ternary quartic over a field of
// characteristic 0 or p > 3; `seed` drives the unimodular-frame retries of
// the Macaulay resultant behind I27 (the value is frame-independent)
InvariantVector dixmier_ohno(const MultiPoly& F, unsigned long seed = 7);

// degree-27 discriminant: Macaulay resultant of (F_x, F_y, F_z) times the
// calibration scalar; zero exactly when the quartic is singular
Elem discriminant_I27(const MultiPoly& F, unsigned long seed = 7);

// throws MathError when I3 = 0 (caller must fall back to weighted equality)
AbsoluteInvariants absolute_invariants(const InvariantVector& v);

// same point of the weighted projective space: zero patterns agree and every
// pairwise cross-power identity v1[a]^{w_b} v2[b]^{w_a} = v2[a]^{w_b} v1[b]^{w_a}
// holds
bool weighted_equal(const InvariantVector& v1, const InvariantVector& v2);

// a quartic over Q together with its expected absolute invariants
struct CalibrationAnchor {
  MultiPoly F;
  std::array<mpq_class, 6> abs_i;
  std::array<mpq_class, 6> abs_j;
};

// Re-derives the per-invariant scalars from anchor curves (Fermat pins i6,
// a dense anchor pins the rest; extra anchors cross-check).  Solves each
// ratio m_k / m_3^{w_k/3} linearly from the absolute invariants, applies the
// gauge m_3 = 288, and throws MathError when anchors disagree or leave a
// scalar undetermined.  The result must equal calibration_table().
CalibrationTable calibrate(const std::vector<CalibrationAnchor>& anchors);

}  // namespace quartix
