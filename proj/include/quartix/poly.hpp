#pragma once
// Sparse multivariate and dense univariate polynomial arithmetic over a Field:
// derivatives, substitution, resultants, GCDs and squarefree parts of binary
// forms, Lagrange interpolation, and small exact determinants.

#include "quartix/field.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace quartix {

using Expo = std::vector<int>;

// graded lexicographic: total degree first, then lex on exponents
struct GradedLexLess {
  bool operator()(const Expo& a, const Expo& b) const {
    int da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da < db;
    return a < b;
  }
};

class MultiPoly;

struct LinearMap3 {
  FieldPtr K;
  std::array<std::array<Elem, 3>, 3> m;

  static LinearMap3 identity(const FieldPtr& K);
  static LinearMap3 from_rows(const FieldPtr& K,
                              const std::array<std::array<long, 3>, 3>& a);
  Elem det() const;
  LinearMap3 transpose() const;
  LinearMap3 adjugate() const;
  LinearMap3 operator*(const LinearMap3& o) const;  // matrix product
};

class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(const FieldPtr& K, int nvars);
  static MultiPoly constant(const FieldPtr& K, int nvars, const Elem& c);
  static MultiPoly variable(const FieldPtr& K, int nvars, int i);
  static MultiPoly monomial(const FieldPtr& K, const Expo& e, const Elem& c);

  const FieldPtr& field() const { return K_; }
  int nvars() const { return nvars_; }
  const std::map<Expo, Elem, GradedLexLess>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;  // -1 for the zero polynomial
  bool is_homogeneous() const;
  bool is_homogeneous(int d) const;
  Elem coeff(const Expo& e) const;
  void add_term(const Expo& e, const Elem& c);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }
  MultiPoly scale(const Elem& c) const;
  MultiPoly scale(const mpq_class& q) const;
  MultiPoly pow(int n) const;

  MultiPoly derive(int var) const;
  Elem evaluate(const std::vector<Elem>& point) const;
  // substitute var i -> images[i]; output arity = images' arity
  MultiPoly substitute(const std::vector<MultiPoly>& images) const;
  // F^gamma(x) = F(gamma * x) for a 3-variable polynomial
  MultiPoly substitute_linear(const LinearMap3& g) const;
  // fix one variable to a scalar; keeps the variable list (exponent 0)
  MultiPoly eval_var(int var, const Elem& value) const;
  // lift all coefficients into an extension of the current field
  MultiPoly lift_to(const FieldPtr& K2) const;

  MultiPoly div_exact_mono(const Expo& mono) const;
  // exact division (throws MathError when the division is not exact)
  MultiPoly div_exact(const MultiPoly& b) const;

  std::string str(const std::vector<std::string>& names) const;

 private:
  FieldPtr K_;
  int nvars_ = 0;
  std::map<Expo, Elem, GradedLexLess> terms_;
};

// Sylvester-matrix resultant of P and Q with respect to one variable,
// evaluated by fraction-free Bareiss elimination over the remaining ring.
MultiPoly resultant_in_var(const MultiPoly& P, const MultiPoly& Q, int var);

// exact determinant of a square matrix of polynomials (fraction-free Bareiss);
// all entries must share one field and variable count
MultiPoly bareiss_det(std::vector<std::vector<MultiPoly>> M);

// monic GCD of binary forms (dehomogenize, Euclid, rehomogenize, restore the
// common monomial part)
MultiPoly gcd_binary_forms(const std::vector<MultiPoly>& forms);
// product of the distinct irreducible factors of a nonzero binary form
MultiPoly squarefree_part(const MultiPoly& P);

// ----------------------------------------------------------------- univariate
// dense layer: index = degree, trailing zeros trimmed

using UVec = std::vector<Elem>;

int udeg(const FieldPtr& K, const UVec& p);
UVec utrim(const FieldPtr& K, UVec p);
UVec uadd(const FieldPtr& K, const UVec& p, const UVec& q);
UVec usub(const FieldPtr& K, const UVec& p, const UVec& q);
UVec uscale(const FieldPtr& K, const UVec& p, const Elem& c);
UVec umul(const FieldPtr& K, const UVec& p, const UVec& q);
UVec urem(const FieldPtr& K, UVec p, const UVec& q);
std::pair<UVec, UVec> udivmod(const FieldPtr& K, UVec p, const UVec& q);
UVec ugcd(const FieldPtr& K, UVec p, UVec q);  // monic-normalized
UVec uderiv(const FieldPtr& K, const UVec& p);
UVec usquarefree(const FieldPtr& K, const UVec& p);
Elem ueval(const FieldPtr& K, const UVec& p, const Elem& x);
UVec lagrange(const FieldPtr& K, const std::vector<Elem>& xs,
              const std::vector<Elem>& ys);
// scalar resultant, Euclidean remainder sequence with leading-coefficient
// bookkeeping (agrees with the Sylvester determinant)
Elem uresultant(const FieldPtr& K, UVec p, UVec q);
Elem sylvester_res(const FieldPtr& K, const UVec& p, const UVec& q);

// bridges between binary forms (2-variable MultiPoly) and the dense layer:
// P = x^a y^b * core(y at x=1)
struct BinarySplit {
  int a = 0, b = 0;
  UVec core;
};
BinarySplit binary_split(const MultiPoly& P);
MultiPoly binary_join(const FieldPtr& K, int a, int b, const UVec& core);
// univariate p(y) homogenized to x,y-degree total_deg
MultiPoly binary_from_univ(const FieldPtr& K, const UVec& p, int total_deg);

// ----------------------------------------------------------------- matrices

using Mat = std::vector<std::vector<Elem>>;
Elem gauss_det(const FieldPtr& K, Mat M);

// random integer 3x3 with determinant +-1 (entries in [-bound, bound])
std::array<std::array<long, 3>, 3> random_unimodular(std::mt19937_64& rng,
                                                     int bound = 5);
// F(A*x) for an integer matrix frame
MultiPoly apply_frame(const MultiPoly& F,
                      const std::array<std::array<long, 3>, 3>& A);
// portable uniform integer in [lo, hi]
long rand_long(std::mt19937_64& rng, long lo, long hi);

}  // namespace quartix
