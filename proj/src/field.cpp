#include "quartix/field.hpp"

#include <sstream>

namespace quartix {

namespace {

// is `anc` the same field as `f` or a base of its tower?
bool ancestor_of(const Field& anc, const Field& f) {
  if (anc.equals(f)) return true;
  if (f.kind() == Field::Kind::Extension) return ancestor_of(anc, *f.base());
  return false;
}

bool needs_paren(const std::string& s, bool as_factor) {
  if (s.empty()) return false;
  for (size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '+' || ch == '*' || ch == '^' || ch == ' ') return true;
    if (ch == '-' && i > 0) return true;
    if (ch == '-' && i == 0 && as_factor) return true;
    if (ch == '/' && as_factor) return true;
  }
  return false;
}

std::string term_str(const Elem& c, const std::string& var, int k) {
  std::string cs = c.str();
  if (k == 0) return needs_paren(cs, false) ? "(" + cs + ")" : cs;
  std::string pw = (k == 1) ? var : var + "^" + std::to_string(k);
  if (cs == "1") return pw;
  if (cs == "-1") return "-" + pw;
  if (needs_paren(cs, true)) cs = "(" + cs + ")";
  return cs + "*" + pw;
}

std::string join_terms(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  std::string out = terms[0];
  for (size_t i = 1; i < terms.size(); ++i) {
    const std::string& t = terms[i];
    if (!t.empty() && t[0] == '-')
      out += " - " + t.substr(1);
    else
      out += " + " + t;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Field

FieldPtr Field::Q() {
  static FieldPtr q = [] {
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = Kind::Rational;
    return FieldPtr(f);
  }();
  return q;
}

FieldPtr Field::Fp(const mpz_class& p) {
  if (p < 2) throw MathError("Fp requires a prime modulus >= 2");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = Kind::Prime;
  f->p_ = p;
  return f;
}

FieldPtr Field::ext(const FieldPtr& base, const std::vector<Elem>& tail,
                    const std::string& gen_name) {
  if (!base) throw MathError("extension needs a base field");
  if (tail.empty()) throw MathError("extension needs degree >= 1");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = Kind::Extension;
  f->base_ = base;
  f->gen_ = gen_name;
  f->min_.reserve(tail.size());
  for (const Elem& c : tail) f->min_.push_back(base->lift(c));
  return f;
}

FieldPtr Field::Qi() {
  static FieldPtr qi = ext(Q(), {Q()->of_int(1), Q()->of_int(0)}, "i");
  return qi;
}

FieldPtr Field::Qsqrt(long d) {
  if (d == -1) return Qi();
  std::string name = d >= 0 ? "s" + std::to_string(d) : "sm" + std::to_string(-d);
  return ext(Q(), {Q()->of_int(-d), Q()->of_int(0)}, name);
}

mpz_class Field::characteristic() const {
  switch (kind_) {
    case Kind::Rational: return 0;
    case Kind::Prime: return p_;
    case Kind::Extension: return base_->characteristic();
  }
  return 0;
}

long Field::absolute_degree() const {
  if (kind_ == Kind::Extension) return degree() * base_->absolute_degree();
  return 1;
}

Elem Field::wrap_rat(mpq_class q) const {
  Elem e;
  e.f_ = shared_from_this();
  e.q_ = std::move(q);
  return e;
}

Elem Field::wrap_res(mpz_class r) const {
  Elem e;
  e.f_ = shared_from_this();
  e.r_ = std::move(r);
  return e;
}

Elem Field::wrap_coords(std::vector<Elem> c) const {
  Elem e;
  e.f_ = shared_from_this();
  e.c_ = std::move(c);
  return e;
}

Elem Field::zero() const { return of_int(0); }
Elem Field::one() const { return of_int(1); }

Elem Field::of_int(long v) const { return of(mpq_class(v)); }

Elem Field::of(const mpq_class& q) const {
  switch (kind_) {
    case Kind::Rational: {
      mpq_class c = q;
      c.canonicalize();
      return wrap_rat(c);
    }
    case Kind::Prime: {
      mpz_class num, den, dinv, r;
      num = q.get_num();
      den = q.get_den();
      mpz_mod(den.get_mpz_t(), den.get_mpz_t(), p_.get_mpz_t());
      if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p_.get_mpz_t()) == 0)
        throw DivisionByZero();
      r = num * dinv;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p_.get_mpz_t());
      return wrap_res(r);
    }
    case Kind::Extension:
      return embed_base(base_->of(q));
  }
  throw MathError("bad field kind");
}

Elem Field::gen() const {
  if (kind_ != Kind::Extension) throw MathError("gen() on a non-extension field");
  std::vector<Elem> c(min_.size(), base_->zero());
  if (c.size() == 1) {
    // degree-1 extension: T = -tail[0]
    c[0] = base_->neg(min_[0]);
  } else {
    c[1] = base_->one();
  }
  return wrap_coords(std::move(c));
}

Elem Field::embed_base(const Elem& b) const {
  if (kind_ != Kind::Extension) throw MathError("embed_base on a non-extension field");
  std::vector<Elem> c(min_.size(), base_->zero());
  c[0] = base_->lift(b);
  return wrap_coords(std::move(c));
}

Elem Field::lift(const Elem& a) const {
  if (a.is_null()) throw MathError("lift of null element");
  if (a.field().get() == this || equals(*a.field())) return a;
  if (kind_ == Kind::Extension) return embed_base(base_->lift(a));
  throw MathError("cannot lift element into unrelated field");
}

bool Field::equals(const Field& other) const {
  if (this == &other) return true;
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Rational: return true;
    case Kind::Prime: return p_ == other.p_;
    case Kind::Extension: {
      if (min_.size() != other.min_.size()) return false;
      if (!base_->equals(*other.base_)) return false;
      for (size_t k = 0; k < min_.size(); ++k)
        if (!base_->eq(min_[k], base_->lift(other.min_[k]))) return false;
      return true;
    }
  }
  return false;
}

std::string Field::describe() const {
  switch (kind_) {
    case Kind::Rational: return "Q";
    case Kind::Prime: return "Fp(" + p_.get_str() + ")";
    case Kind::Extension: {
      // recognize the Q(i) / Q(sqrt(d)) shorthands
      if (base_->kind() == Kind::Rational && min_.size() == 2 &&
          base_->is_zero(min_[1])) {
        const mpq_class& c0 = min_[0].rat();
        if (c0.get_den() == 1) {
          mpz_class d = -c0.get_num();
          if (d == -1 && gen_ == "i") return "Q(i)";
          std::string def = d >= 0 ? "s" + d.get_str()
                                   : "sm" + mpz_class(-d).get_str();
          if (gen_ == def) return "Q(sqrt(" + d.get_str() + "))";
        }
      }
      std::vector<std::string> terms;
      terms.push_back(term_str(base_->one(), gen_, degree()));
      for (int k = degree() - 1; k >= 0; --k)
        if (!base_->is_zero(min_[k]))
          terms.push_back(term_str(min_[k], gen_, k));
      return "ext(" + base_->describe() + "; " + gen_ + "; " +
             join_terms(terms) + ")";
    }
  }
  return "?";
}

// ---------------------------------------------------------------- arithmetic

Elem Field::add(const Elem& a, const Elem& b) const {
  switch (kind_) {
    case Kind::Rational: return wrap_rat(a.q_ + b.q_);
    case Kind::Prime: {
      mpz_class r = a.r_ + b.r_;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p_.get_mpz_t());
      return wrap_res(r);
    }
    case Kind::Extension: {
      std::vector<Elem> c(min_.size());
      for (size_t k = 0; k < c.size(); ++k)
        c[k] = base_->add(base_->lift(a.c_[k]), base_->lift(b.c_[k]));
      return wrap_coords(std::move(c));
    }
  }
  throw MathError("bad field kind");
}

Elem Field::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

Elem Field::neg(const Elem& a) const {
  switch (kind_) {
    case Kind::Rational: return wrap_rat(-a.q_);
    case Kind::Prime: {
      mpz_class r = -a.r_;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p_.get_mpz_t());
      return wrap_res(r);
    }
    case Kind::Extension: {
      std::vector<Elem> c(min_.size());
      for (size_t k = 0; k < c.size(); ++k) c[k] = base_->neg(base_->lift(a.c_[k]));
      return wrap_coords(std::move(c));
    }
  }
  throw MathError("bad field kind");
}

namespace {

// reduce a coefficient vector over `base` modulo the monic m = T^d + tail
void reduce_mod_min(const FieldPtr& base, const std::vector<Elem>& tail,
                    std::vector<Elem>& v) {
  size_t d = tail.size();
  for (size_t k = v.size(); k-- > d;) {
    Elem c = v[k];
    if (base->is_zero(c)) continue;
    v[k] = base->zero();
    for (size_t j = 0; j < d; ++j)
      v[k - d + j] = base->sub(v[k - d + j], base->mul(c, tail[j]));
  }
  v.resize(d, base->zero());
}

int poly_deg(const FieldPtr& base, const std::vector<Elem>& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (!base->is_zero(p[i])) return i;
  return -1;
}

std::vector<Elem> poly_mul(const FieldPtr& base, const std::vector<Elem>& p,
                           const std::vector<Elem>& q) {
  if (p.empty() || q.empty()) return {};
  std::vector<Elem> out(p.size() + q.size() - 1, base->zero());
  for (size_t i = 0; i < p.size(); ++i) {
    if (base->is_zero(p[i])) continue;
    for (size_t j = 0; j < q.size(); ++j)
      out[i + j] = base->add(out[i + j], base->mul(p[i], q[j]));
  }
  return out;
}

std::vector<Elem> poly_sub(const FieldPtr& base, std::vector<Elem> p,
                           const std::vector<Elem>& q) {
  if (p.size() < q.size()) p.resize(q.size(), base->zero());
  for (size_t i = 0; i < q.size(); ++i) p[i] = base->sub(p[i], q[i]);
  return p;
}

}  // namespace

Elem Field::mul(const Elem& a, const Elem& b) const {
  switch (kind_) {
    case Kind::Rational: return wrap_rat(a.q_ * b.q_);
    case Kind::Prime: {
      mpz_class r = a.r_ * b.r_;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), p_.get_mpz_t());
      return wrap_res(r);
    }
    case Kind::Extension: {
      size_t d = min_.size();
      std::vector<Elem> prod(2 * d - 1, base_->zero());
      for (size_t i = 0; i < d; ++i) {
        Elem ai = base_->lift(a.c_[i]);
        if (base_->is_zero(ai)) continue;
        for (size_t j = 0; j < d; ++j)
          prod[i + j] = base_->add(prod[i + j], base_->mul(ai, base_->lift(b.c_[j])));
      }
      reduce_mod_min(base_, min_, prod);
      return wrap_coords(std::move(prod));
    }
  }
  throw MathError("bad field kind");
}

Elem Field::inv(const Elem& a) const {
  switch (kind_) {
    case Kind::Rational:
      if (a.q_ == 0) throw DivisionByZero();
      return wrap_rat(1 / a.q_);
    case Kind::Prime: {
      mpz_class r;
      if (mpz_invert(r.get_mpz_t(), a.r_.get_mpz_t(), p_.get_mpz_t()) == 0)
        throw DivisionByZero();
      return wrap_res(r);
    }
    case Kind::Extension: {
      if (is_zero(a)) throw DivisionByZero();
      // extended Euclid between the monic minimal polynomial and a
      size_t d = min_.size();
      std::vector<Elem> r0 = min_;
      r0.push_back(base_->one());
      std::vector<Elem> r1;
      r1.reserve(d);
      for (const Elem& c : a.c_) r1.push_back(base_->lift(c));
      std::vector<Elem> s0{base_->zero()}, s1{base_->one()};
      while (true) {
        int d1 = poly_deg(base_, r1);
        if (d1 < 0) {
          // gcd(m, a) = r0 with deg >= 1: a is a zero divisor in base[T]/(m)
          int d0 = poly_deg(base_, r0);
          std::vector<Elem> fac(r0.begin(), r0.begin() + d0 + 1);
          Elem lc_inv = base_->inv(fac[d0]);
          for (Elem& c : fac) c = base_->mul(c, lc_inv);
          throw NonInvertibleError(std::move(fac));
        }
        if (d1 == 0) {
          Elem c = base_->inv(r1[0]);
          std::vector<Elem> res(d, base_->zero());
          for (size_t k = 0; k < s1.size() && k < d; ++k)
            res[k] = base_->mul(s1[k], c);
          if (s1.size() > d) {
            std::vector<Elem> full(s1.size(), base_->zero());
            for (size_t k = 0; k < s1.size(); ++k) full[k] = base_->mul(s1[k], c);
            reduce_mod_min(base_, min_, full);
            res = std::move(full);
          }
          return wrap_coords(std::move(res));
        }
        // divide r0 by r1
        int d0 = poly_deg(base_, r0);
        std::vector<Elem> q(std::max(d0 - d1 + 1, 1), base_->zero());
        std::vector<Elem> r = r0;
        Elem lc1 = base_->inv(r1[d1]);
        while (true) {
          int k = poly_deg(base_, r);
          if (k < d1) break;
          Elem c = base_->mul(r[k], lc1);
          for (int j = 0; j <= d1; ++j)
            r[k - d1 + j] = base_->sub(r[k - d1 + j], base_->mul(c, r1[j]));
          r[k] = base_->zero();
          q[k - d1] = base_->add(q[k - d1], c);
        }
        r0 = std::move(r1);
        r1 = std::move(r);
        std::vector<Elem> s2 = poly_sub(base_, s0, poly_mul(base_, q, s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
      }
    }
  }
  throw MathError("bad field kind");
}

bool Field::eq(const Elem& a, const Elem& b) const {
  switch (kind_) {
    case Kind::Rational: return a.q_ == b.q_;
    case Kind::Prime: return a.r_ == b.r_;
    case Kind::Extension:
      for (size_t k = 0; k < min_.size(); ++k)
        if (!base_->eq(base_->lift(a.c_[k]), base_->lift(b.c_[k]))) return false;
      return true;
  }
  return false;
}

bool Field::is_zero(const Elem& a) const {
  switch (kind_) {
    case Kind::Rational: return a.q_ == 0;
    case Kind::Prime: return a.r_ == 0;
    case Kind::Extension:
      for (const Elem& c : a.c_)
        if (!base_->is_zero(base_->lift(c))) return false;
      return true;
  }
  return false;
}

// ---------------------------------------------------------------- Elem

bool Elem::is_zero() const {
  if (is_null()) throw MathError("null element");
  return f_->is_zero(*this);
}

bool Elem::is_one() const {
  if (is_null()) throw MathError("null element");
  return f_->eq(*this, f_->one());
}

Elem Elem::operator-() const {
  if (is_null()) throw MathError("null element");
  return f_->neg(*this);
}

Elem Elem::inv() const {
  if (is_null()) throw MathError("null element");
  return f_->inv(*this);
}

Elem Elem::pow(long n) const {
  if (is_null()) throw MathError("null element");
  if (n < 0) return inv().pow(-n);
  Elem r = f_->one();
  Elem b = *this;
  unsigned long e = static_cast<unsigned long>(n);
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

const mpq_class& Elem::rat() const {
  if (is_null() || f_->kind() != Field::Kind::Rational)
    throw MathError("rat() on a non-rational element");
  return q_;
}

const mpz_class& Elem::residue() const {
  if (is_null() || f_->kind() != Field::Kind::Prime)
    throw MathError("residue() on a non-prime-field element");
  return r_;
}

const std::vector<Elem>& Elem::coords() const {
  if (is_null() || f_->kind() != Field::Kind::Extension)
    throw MathError("coords() on a non-extension element");
  return c_;
}

std::string Elem::str() const {
  if (is_null()) return "<null>";
  switch (f_->kind()) {
    case Field::Kind::Rational: return q_.get_str();
    case Field::Kind::Prime: return r_.get_str();
    case Field::Kind::Extension: {
      std::vector<std::string> terms;
      for (size_t k = 0; k < c_.size(); ++k) {
        const Elem& c = c_[k];
        if (c.is_zero()) continue;
        terms.push_back(term_str(c, f_->gen_name(), static_cast<int>(k)));
      }
      return join_terms(terms);
    }
  }
  return "?";
}

void align(Elem& a, Elem& b) {
  if (a.is_null() || b.is_null()) throw MathError("null element in arithmetic");
  if (a.field().get() == b.field().get()) return;
  if (ancestor_of(*b.field(), *a.field())) {
    b = a.field()->lift(b);
    return;
  }
  if (ancestor_of(*a.field(), *b.field())) {
    a = b.field()->lift(a);
    return;
  }
  throw MathError("elements of unrelated fields: " + a.field()->describe() +
                  " vs " + b.field()->describe());
}

Elem operator+(const Elem& a, const Elem& b) {
  Elem x = a, y = b;
  align(x, y);
  return x.field()->add(x, y);
}

Elem operator-(const Elem& a, const Elem& b) {
  Elem x = a, y = b;
  align(x, y);
  return x.field()->sub(x, y);
}

Elem operator*(const Elem& a, const Elem& b) {
  Elem x = a, y = b;
  align(x, y);
  return x.field()->mul(x, y);
}

Elem operator/(const Elem& a, const Elem& b) {
  Elem x = a, y = b;
  align(x, y);
  return x.field()->mul(x, x.field()->inv(y));
}

bool operator==(const Elem& a, const Elem& b) {
  Elem x = a, y = b;
  align(x, y);
  return x.field()->eq(x, y);
}

}  // namespace quartix
