#pragma once
// Exact coefficient fields: Q, F_p, and iterated extensions K[T]/(m).
//
// A Field is immutable and shared; Elem carries a FieldPtr plus a payload.
// Extension elements are coordinate vectors over the base field (low index =
// constant term), reduced modulo a monic minimal polynomial.  Arithmetic
// auto-lifts elements along the tower, so `gen + 1` works without ceremony.

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace quartix {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : MathError {
  DivisionByZero() : MathError("division by zero") {}
};

class Elem {
 public:
  Elem() = default;  // null element; any arithmetic on it throws

  const FieldPtr& field() const { return f_; }
  bool is_null() const { return f_ == nullptr; }
  bool is_zero() const;
  bool is_one() const;

  Elem operator-() const;
  Elem inv() const;
  Elem pow(long n) const;

  std::string str() const;

  // payload accessors (checked against the field kind)
  const mpq_class& rat() const;
  const mpz_class& residue() const;
  const std::vector<Elem>& coords() const;

  friend Elem operator+(const Elem& a, const Elem& b);
  friend Elem operator-(const Elem& a, const Elem& b);
  friend Elem operator*(const Elem& a, const Elem& b);
  friend Elem operator/(const Elem& a, const Elem& b);
  friend bool operator==(const Elem& a, const Elem& b);
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

 private:
  friend class Field;
  FieldPtr f_;
  mpq_class q_;          // Kind::Rational
  mpz_class r_;          // Kind::Prime, 0 <= r_ < p
  std::vector<Elem> c_;  // Kind::Extension, size = degree, entries in base
};

// Thrown when inversion in K[T]/(m) meets a zero divisor: `factor` is a monic
// proper divisor of m (coefficients in the base field, low-to-high, including
// the leading 1).  Callers doing quotient-ring arithmetic can split m and retry.
struct NonInvertibleError : MathError {
  explicit NonInvertibleError(std::vector<Elem> fac)
      : MathError("element not invertible modulo the minimal polynomial"),
        factor(std::move(fac)) {}
  std::vector<Elem> factor;
};

class Field : public std::enable_shared_from_this<Field> {
 public:
  enum class Kind { Rational, Prime, Extension };

  static FieldPtr Q();
  static FieldPtr Fp(const mpz_class& p);
  // base[T]/(m) with m = T^d + tail[d-1] T^{d-1} + ... + tail[0]; tail entries
  // must live in `base`.  `gen_name` is how the image of T prints and parses.
  static FieldPtr ext(const FieldPtr& base, const std::vector<Elem>& tail,
                      const std::string& gen_name);
  static FieldPtr Qi();              // Q(i), i^2 = -1
  static FieldPtr Qsqrt(long d);     // Q(sqrt(d)), generator "s<d>" / "sm<-d>"

  Kind kind() const { return kind_; }
  const mpz_class& prime() const { return p_; }
  const FieldPtr& base() const { return base_; }
  int degree() const { return static_cast<int>(min_.size()); }
  const std::vector<Elem>& min_tail() const { return min_; }
  const std::string& gen_name() const { return gen_; }
  mpz_class characteristic() const;
  // total degree of the tower over Q or F_p
  long absolute_degree() const;

  Elem zero() const;
  Elem one() const;
  Elem of_int(long v) const;
  Elem of(const mpq_class& q) const;
  Elem gen() const;                    // Extension only
  Elem embed_base(const Elem& b) const;  // lift base element as constant
  // lift an element of this field or any ancestor into this field
  Elem lift(const Elem& a) const;

  bool equals(const Field& other) const;
  std::string describe() const;

  // element arithmetic (called by Elem operators after alignment)
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem inv(const Elem& a) const;
  bool eq(const Elem& a, const Elem& b) const;
  bool is_zero(const Elem& a) const;

 private:
  Field() = default;
  Elem wrap_rat(mpq_class q) const;
  Elem wrap_res(mpz_class r) const;
  Elem wrap_coords(std::vector<Elem> c) const;

  Kind kind_ = Kind::Rational;
  mpz_class p_;
  FieldPtr base_;
  std::vector<Elem> min_;
  std::string gen_;
};

// Align two elements into a common field (one field must be an ancestor of
// the other).  Throws MathError when the fields are unrelated.
void align(Elem& a, Elem& b);

}  // namespace quartix
