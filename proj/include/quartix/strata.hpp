#pragma once
// Stratification of smooth plane quartics by their hyperflex structure:
// the stratum table (label, hyperflex count s, dimension, substrata), exact
// membership diagnostics for the one-dimensional strata Z1 and Z4 and for
// the zero-dimensional strata, reconstruction of representative curves on
// Z1/Z4 from the modular parameter z, and the built-in zero-dimensional
// models over their natural towers.
//
// All numeric tables (stratum rows, invariant tuples, ideal generators,
// closed forms) are loaded once from data/strata.dat; set QUARTIX_DATA to
// override the directory.

#include "quartix/invariants.hpp"

#include <optional>
#include <string>
#include <vector>

namespace quartix {

// one row of the stratification table; substrata are reporting metadata only
struct StratumLabel {
  std::string name;
  int s = 0;    // hyperflex count
  int dim = 0;  // dimension in moduli
  std::vector<std::string> substrata;
};

// all 26 rows, in table order (generic stratum first)
const std::vector<StratumLabel>& stratum_table();
// lookup by name ("Z1", "Theta", ...); throws MathError on unknown labels
const StratumLabel& stratum_row(const std::string& name);

// one exact diagnostic: `residual` is the tested quantity minus its expected
// value and must vanish for membership; boolean-only checks (e.g. the oracle
// comparison) carry a null residual
struct Diagnostic {
  std::string what;
  bool pass = false;
  Elem residual;
};

// outcome of a one-dimensional membership test
struct MembershipResult {
  bool member = false;
  bool z_known = false;
  Elem z;  // extracted modular parameter, valid when z_known
  std::vector<Diagnostic> checks;
  std::vector<std::string> notes;
};

// Z1 test: extract z = (-153 i1 - 171)/(26 i1 - 12 i2 + 38), then compare
// all twelve absolute invariants against the closed forms in z; member iff
// every comparison is an exact match.  Throws MathError when I3 = 0.
MembershipResult z1_test(const InvariantVector& v);

// Z4 test: the weighted defining polynomial in (I3, I6, I9) must vanish;
// then z is extracted from (i1, i2), the printed i1/i2 closed forms are
// confirmed, and full membership is decided by weighted equality against
// the invariants of the reconstructed model (the remaining ten absolutes
// have no printed closed forms).  When the z-extraction denominator
// vanishes over Q, the i1 closed form is solved for candidate z instead.
// Throws MathError when I3 = 0.
MembershipResult z4_test(const InvariantVector& v, unsigned long seed = 7);

// per-label trail of a zero-dimensional scan
struct LabelChecks {
  std::string label;
  bool member = false;
  std::vector<Diagnostic> checks;
};

// Exact zero-dimensional membership: Theta, Sigma, Phi, Psi by tuple
// equality on all twelve absolute invariants; Pi and Omega by vanishing of
// every ideal generator (the conjugate points of a pair are not separated
// by invariants, so those labels name the union).  Returns the matching
// table row or nothing.  Throws MathError when I3 = 0.
std::optional<StratumLabel> zero_dim_test(const InvariantVector& v);
std::optional<StratumLabel> zero_dim_test(const InvariantVector& v,
                                          std::vector<LabelChecks>& trail);

// head*(X^2-YZ)^2 - YZ*(2X-Y-Z)*(aX+bY+cZ): the shape shared by every
// one-parameter family model and most zero-dimensional models
MultiPoly head_model(const FieldPtr& K, const Elem& head, const Elem& a,
                     const Elem& b, const Elem& c);

// a curve rebuilt from a modular parameter
struct ReconstructedCurve {
  std::string stratum;  // "Z1" or "Z4"
  UVec param_poly;      // parameter polynomial over z's field (degree 4 / 6)
  FieldPtr field;       // extension holding the chosen root (and i for Z4)
  Elem t;               // the parameter root
  Elem z;               // the input z lifted into `field`
  MultiPoly model;      // the quartic over `field`
};

// Z1: t is a root of (2T^4 - T^3 + 12T^2 - T + 2) - 2z(T^3 + T) and the
// model is (t^2+1)(X^2-YZ)^2 - YZ(2X-Y-Z)(2tX - Y - t^2 Z).  Over Q a
// rational root is searched first (bounded divisor trial); otherwise the
// quartic is adjoined as a trusted minimal polynomial.
ReconstructedCurve reconstruct_z1(const Elem& z);

// Z4: t is a root of the degree-6 parameter polynomial, which splits over
// any field containing i into two conjugate cubics; the cubic for +i is
// adjoined over z's field extended by i, after degenerate roots (t = 0,
// t = -i, and roots off the fiber of z) are divided out.  Model:
// t(t+i)(X^2-YZ)^2 - YZ(2X-Y-Z)(((i-1)t^2+2t+(i+1))X - (it+1)(Y+Z)).
// Throws MathError when every root is degenerate.
ReconstructedCurve reconstruct_z4(const Elem& z);

// Invariants of rec.model.  A trusted minimal polynomial that was in fact
// reducible surfaces as a NonInvertibleError during the computation; the
// factor is then split off, rec is rebuilt in place over a nondegenerate
// piece, and the computation retries (each split drops the extension
// degree, so the loop terminates).
InvariantVector reconstructed_invariants(ReconstructedCurve& rec,
                                         unsigned long seed = 7);

// the fiber maps t -> z (Z1 needs nothing extra; Z4 needs i in t's field)
Elem z1_parameter_z(const Elem& t);
Elem z4_parameter_z(const Elem& t);

// Built-in zero-dimensional models over their natural fields:
//   Theta          degree-6 tower Q(i)[t]/(t^3 - (11+3i)/2 t^2 + (5-i)t - (5-i)/2)
//   Pi1, Pi2       degree-6 towers Q(i)[t]/(2t^3 - (1∓i)t^2 - (±4i)t - (1±i))
//   Sigma          Q(sqrt(-7))
//   Omega1, Omega2 Q(sqrt(7))
//   Phi, Psi       Q (the Fermat quartic; the Psi curve)
// Throws MathError on unknown labels.
MultiPoly builtin_model(const std::string& label);

// classification report: the most special matching stratum plus the full
// diagnostic trail over every tested label
struct StratumReport {
  std::optional<StratumLabel> match;
  bool z_known = false;
  Elem z;  // parameter of the matched one-dimensional stratum
  std::vector<LabelChecks> tested;
  std::vector<std::string> notes;
};

// Runs zero_dim_test, z1_test, z4_test in that order and reports the first
// member as the match (ties noted), with (s, dim) metadata from the table.
// A supplied hyperflex count is cross-checked against the match's s.  When
// I3 = 0 the printed diagnostics do not apply and the report says so
// instead of erroring.
StratumReport classify(const InvariantVector& v,
                       std::optional<int> hyperflex_count = std::nullopt,
                       unsigned long seed = 7);

}  // namespace quartix
