#include "quartix/poly.hpp"

#include <algorithm>
#include <sstream>

namespace quartix {

namespace {

// lift two polynomials into a common field (one must live over an ancestor
// of the other's field)
void align_fields(MultiPoly& a, MultiPoly& b);

bool field_contains(const FieldPtr& big, const FieldPtr& small) {
  if (big->equals(*small)) return true;
  if (big->kind() == Field::Kind::Extension)
    return field_contains(big->base(), small);
  return false;
}

}  // namespace

// ---------------------------------------------------------------- LinearMap3

LinearMap3 LinearMap3::identity(const FieldPtr& K) {
  LinearMap3 g;
  g.K = K;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g.m[i][j] = i == j ? K->one() : K->zero();
  return g;
}

LinearMap3 LinearMap3::from_rows(const FieldPtr& K,
                                 const std::array<std::array<long, 3>, 3>& a) {
  LinearMap3 g;
  g.K = K;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g.m[i][j] = K->of_int(a[i][j]);
  return g;
}

Elem LinearMap3::det() const {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

LinearMap3 LinearMap3::transpose() const {
  LinearMap3 g;
  g.K = K;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g.m[i][j] = m[j][i];
  return g;
}

LinearMap3 LinearMap3::adjugate() const {
  LinearMap3 g;
  g.K = K;
  auto cof = [&](int i, int j) {
    int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
    int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
    return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
  };
  // adjugate = transpose of the cofactor matrix; the cyclic index trick
  // already absorbs the (-1)^{i+j} signs
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g.m[i][j] = cof(j, i);
  return g;
}

LinearMap3 LinearMap3::operator*(const LinearMap3& o) const {
  LinearMap3 g;
  g.K = K;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Elem s = K->zero();
      for (int k = 0; k < 3; ++k) s = s + m[i][k] * o.m[k][j];
      g.m[i][j] = s;
    }
  return g;
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(const FieldPtr& K, int nvars) : K_(K), nvars_(nvars) {}

MultiPoly MultiPoly::constant(const FieldPtr& K, int nvars, const Elem& c) {
  MultiPoly p(K, nvars);
  if (!K->is_zero(K->lift(c))) p.terms_[Expo(nvars, 0)] = K->lift(c);
  return p;
}

MultiPoly MultiPoly::variable(const FieldPtr& K, int nvars, int i) {
  MultiPoly p(K, nvars);
  Expo e(nvars, 0);
  e.at(i) = 1;
  p.terms_[e] = K->one();
  return p;
}

MultiPoly MultiPoly::monomial(const FieldPtr& K, const Expo& e, const Elem& c) {
  MultiPoly p(K, static_cast<int>(e.size()));
  if (!K->is_zero(K->lift(c))) p.terms_[e] = K->lift(c);
  return p;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

bool MultiPoly::is_homogeneous() const {
  int d = -2;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    if (d == -2) d = s;
    if (s != d) return false;
  }
  return true;
}

bool MultiPoly::is_homogeneous(int d) const {
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    if (s != d) return false;
  }
  return true;
}

Elem MultiPoly::coeff(const Expo& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? K_->zero() : it->second;
}

void MultiPoly::add_term(const Expo& e, const Elem& c) {
  if (static_cast<int>(e.size()) != nvars_)
    throw MathError("exponent arity mismatch");
  auto it = terms_.find(e);
  Elem v = it == terms_.end() ? K_->lift(c) : it->second + c;
  if (K_->is_zero(K_->lift(v)))
    terms_.erase(e);
  else
    terms_[e] = K_->lift(v);
}

namespace {
void align_fields(MultiPoly& a, MultiPoly& b) {
  if (a.field()->equals(*b.field())) return;
  if (field_contains(a.field(), b.field())) {
    b = b.lift_to(a.field());
    return;
  }
  if (field_contains(b.field(), a.field())) {
    a = a.lift_to(b.field());
    return;
  }
  throw MathError("polynomials over unrelated fields");
}
}  // namespace

MultiPoly MultiPoly::lift_to(const FieldPtr& K2) const {
  MultiPoly out(K2, nvars_);
  for (const auto& [e, c] : terms_) out.terms_[e] = K2->lift(c);
  return out;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly a = *this, b = o;
  align_fields(a, b);
  if (a.nvars_ != b.nvars_) throw MathError("arity mismatch");
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(K_, nvars_);
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly a = *this, b = o;
  align_fields(a, b);
  if (a.nvars_ != b.nvars_) throw MathError("arity mismatch");
  MultiPoly r(a.K_, a.nvars_);
  Expo e(a.nvars_, 0);
  for (const auto& [e1, c1] : a.terms_)
    for (const auto& [e2, c2] : b.terms_) {
      for (int i = 0; i < a.nvars_; ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  MultiPoly a = *this, b = o;
  align_fields(a, b);
  return (a - b).is_zero();
}

MultiPoly MultiPoly::scale(const Elem& c) const {
  Elem cl = c;
  MultiPoly self = *this;
  if (!K_->equals(*c.field())) {
    if (field_contains(K_, c.field()))
      cl = K_->lift(c);
    else if (field_contains(c.field(), K_))
      self = lift_to(c.field());
    else
      throw MathError("scalar over unrelated field");
  }
  MultiPoly r(self.K_, self.nvars_);
  for (const auto& [e, v] : self.terms_) {
    Elem w = v * cl;
    if (!w.is_zero()) r.terms_[e] = w;
  }
  return r;
}

MultiPoly MultiPoly::scale(const mpq_class& q) const { return scale(K_->of(q)); }

MultiPoly MultiPoly::pow(int n) const {
  if (n < 0) throw MathError("negative polynomial power");
  MultiPoly r = constant(K_, nvars_, K_->one());
  MultiPoly b = *this;
  while (n) {
    if (n & 1) r = r * b;
    b = n > 1 ? b * b : b;
    n >>= 1;
  }
  return r;
}

MultiPoly MultiPoly::derive(int var) const {
  if (var < 0 || var >= nvars_) throw MathError("derive: bad variable index");
  MultiPoly r(K_, nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Expo e2 = e;
    e2[var] -= 1;
    r.add_term(e2, c * K_->of_int(e[var]));
  }
  return r;
}

Elem MultiPoly::evaluate(const std::vector<Elem>& point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw MathError("evaluate: point length mismatch");
  Elem acc = K_->zero();
  for (const auto& [e, c] : terms_) {
    Elem t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) t = t * point[i];
    acc = acc + t;
  }
  return acc;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images) const {
  if (static_cast<int>(images.size()) != nvars_)
    throw MathError("substitute: image count mismatch");
  int nv_out = images.empty() ? 0 : images[0].nvars();
  FieldPtr KO = K_;
  for (const MultiPoly& im : images)
    if (!field_contains(KO, im.field())) KO = im.field();
  MultiPoly out(KO, nv_out);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = MultiPoly::constant(KO, nv_out, KO->lift(c));
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) term = term * images[i].pow(e[i]);
    out = out + term;
  }
  return out;
}

MultiPoly MultiPoly::substitute_linear(const LinearMap3& g) const {
  if (nvars_ != 3) throw MathError("substitute_linear needs 3 variables");
  if (g.det().is_zero()) throw MathError("singular substitution");
  std::vector<MultiPoly> images;
  FieldPtr KO = g.K;
  if (field_contains(K_, KO)) KO = K_;
  for (int i = 0; i < 3; ++i) {
    MultiPoly im(KO, 3);
    for (int j = 0; j < 3; ++j) {
      Expo e(3, 0);
      e[j] = 1;
      im.add_term(e, KO->lift(g.m[i][j]));
    }
    images.push_back(im);
  }
  return lift_to(KO).substitute(images);
}

MultiPoly MultiPoly::eval_var(int var, const Elem& value) const {
  MultiPoly r(K_, nvars_);
  for (const auto& [e, c] : terms_) {
    Elem t = c;
    for (int k = 0; k < e[var]; ++k) t = t * value;
    Expo e2 = e;
    e2[var] = 0;
    r.add_term(e2, t);
  }
  return r;
}

MultiPoly MultiPoly::div_exact_mono(const Expo& mono) const {
  MultiPoly r(K_, nvars_);
  for (const auto& [e, c] : terms_) {
    Expo e2 = e;
    for (int i = 0; i < nvars_; ++i) {
      e2[i] -= mono[i];
      if (e2[i] < 0) throw MathError("monomial division not exact");
    }
    r.terms_[e2] = c;
  }
  return r;
}

MultiPoly MultiPoly::div_exact(const MultiPoly& b) const {
  MultiPoly r = *this, d = b;
  align_fields(r, d);
  if (d.is_zero()) throw DivisionByZero();
  const FieldPtr& K = r.K_;
  MultiPoly q(K, r.nvars_);
  // leading term in graded-lex order is the last map entry
  const auto& [eb, cb] = *d.terms_.rbegin();
  Elem cb_inv = cb.inv();
  while (!r.is_zero()) {
    const auto& [er, cr] = *r.terms_.rbegin();
    Expo e = er;
    bool ok = true;
    for (int i = 0; i < r.nvars_; ++i) {
      e[i] -= eb[i];
      if (e[i] < 0) {
        ok = false;
        break;
      }
    }
    if (!ok) throw MathError("polynomial division not exact");
    Elem c = cr * cb_inv;
    MultiPoly t = MultiPoly::monomial(K, e, c);
    q = q + t;
    r = r - t * d;
  }
  return q;
}

std::string MultiPoly::str(const std::vector<std::string>& names) const {
  if (static_cast<int>(names.size()) != nvars_)
    throw MathError("str: name count mismatch");
  if (terms_.empty()) return "0";
  std::vector<std::string> parts;
  // print highest graded-lex term first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string cs = c.str();
    // multi-term coefficients (tower elements) need parentheses as factors
    bool multi = cs.find_first_of("+ ") != std::string::npos ||
                 cs.find('-', 1) != std::string::npos;
    std::string part;
    if (mono.empty()) {
      part = multi ? "(" + cs + ")" : cs;
    } else {
      bool neg = false;
      if (!multi && !cs.empty() && cs[0] == '-') {
        neg = true;
        cs = cs.substr(1);
      }
      if (multi)
        part = "(" + cs + ")*" + mono;
      else if (cs == "1")
        part = mono;
      else
        part = cs + "*" + mono;
      if (neg) part = "-" + part;
    }
    parts.push_back(part);
  }
  std::string out = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) {
    if (parts[i][0] == '-')
      out += " - " + parts[i].substr(1);
    else
      out += " + " + parts[i];
  }
  return out;
}

// ---------------------------------------------------------------- univariate

int udeg(const FieldPtr& K, const UVec& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (!K->is_zero(K->lift(p[i]))) return i;
  return -1;
}

UVec utrim(const FieldPtr& K, UVec p) {
  p.resize(udeg(K, p) + 1);
  return p;
}

UVec uadd(const FieldPtr& K, const UVec& p, const UVec& q) {
  UVec r(std::max(p.size(), q.size()), K->zero());
  for (size_t i = 0; i < p.size(); ++i) r[i] = r[i] + p[i];
  for (size_t i = 0; i < q.size(); ++i) r[i] = r[i] + q[i];
  return utrim(K, r);
}

UVec usub(const FieldPtr& K, const UVec& p, const UVec& q) {
  UVec r(std::max(p.size(), q.size()), K->zero());
  for (size_t i = 0; i < p.size(); ++i) r[i] = r[i] + p[i];
  for (size_t i = 0; i < q.size(); ++i) r[i] = r[i] - q[i];
  return utrim(K, r);
}

UVec uscale(const FieldPtr& K, const UVec& p, const Elem& c) {
  UVec r;
  r.reserve(p.size());
  for (const Elem& a : p) r.push_back(a * c);
  return utrim(K, r);
}

UVec umul(const FieldPtr& K, const UVec& p, const UVec& q) {
  if (p.empty() || q.empty()) return {};
  UVec out(p.size() + q.size() - 1, K->zero());
  for (size_t i = 0; i < p.size(); ++i) {
    if (K->is_zero(K->lift(p[i]))) continue;
    for (size_t j = 0; j < q.size(); ++j)
      out[i + j] = out[i + j] + p[i] * q[j];
  }
  return utrim(K, out);
}

std::pair<UVec, UVec> udivmod(const FieldPtr& K, UVec p, const UVec& q) {
  p = utrim(K, std::move(p));
  int dq = udeg(K, q);
  if (dq < 0) throw DivisionByZero();
  UVec out(std::max(static_cast<int>(p.size()) - dq, 1), K->zero());
  Elem lead = K->inv(K->lift(q[dq]));
  while (udeg(K, p) >= dq) {
    int dp = udeg(K, p);
    Elem c = p[dp] * lead;
    out[dp - dq] = out[dp - dq] + c;
    for (int i = 0; i <= dq; ++i)
      p[dp - dq + i] = p[dp - dq + i] - c * q[i];
    p[dp] = K->zero();  // force exact cancellation of the top coefficient
    p = utrim(K, std::move(p));
  }
  return {utrim(K, std::move(out)), p};
}

UVec urem(const FieldPtr& K, UVec p, const UVec& q) {
  return udivmod(K, std::move(p), q).second;
}

UVec ugcd(const FieldPtr& K, UVec p, UVec q) {
  p = utrim(K, std::move(p));
  q = utrim(K, std::move(q));
  while (!q.empty()) {
    UVec r = urem(K, p, q);
    p = std::move(q);
    q = std::move(r);
  }
  if (!p.empty()) p = uscale(K, p, K->inv(p[udeg(K, p)]));
  return p;
}

UVec uderiv(const FieldPtr& K, const UVec& p) {
  UVec r;
  for (size_t i = 1; i < p.size(); ++i)
    r.push_back(p[i] * K->of_int(static_cast<long>(i)));
  return utrim(K, r);
}

UVec usquarefree(const FieldPtr& K, const UVec& p) {
  if (udeg(K, p) <= 0) return utrim(K, p);
  UVec g = ugcd(K, p, uderiv(K, p));
  if (udeg(K, g) <= 0) return utrim(K, p);
  auto [q, r] = udivmod(K, p, g);
  if (!r.empty()) throw MathError("squarefree: inexact gcd division");
  return q;
}

Elem ueval(const FieldPtr& K, const UVec& p, const Elem& x) {
  Elem acc = K->zero();
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UVec lagrange(const FieldPtr& K, const std::vector<Elem>& xs,
              const std::vector<Elem>& ys) {
  size_t n = xs.size();
  if (ys.size() != n) throw MathError("lagrange: length mismatch");
  UVec acc;
  for (size_t i = 0; i < n; ++i) {
    UVec num{K->one()};
    Elem den = K->one();
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      num = umul(K, num, UVec{-xs[j], K->one()});
      den = den * (xs[i] - xs[j]);
    }
    acc = uadd(K, acc, uscale(K, num, ys[i] * K->inv(den)));
  }
  return acc;
}

Elem uresultant(const FieldPtr& K, UVec p, UVec q) {
  p = utrim(K, std::move(p));
  q = utrim(K, std::move(q));
  int dp = udeg(K, p), dq = udeg(K, q);
  if (dp < 0 || dq < 0) return K->zero();
  Elem acc = K->one();
  while (true) {
    if (dq == 0) return acc * q[0].pow(dp);
    UVec r = urem(K, p, q);
    int dr = udeg(K, r);
    if (dr < 0) return K->zero();
    // res(p, q) = (-1)^{dp dq} res(q, p);  res(q, r') with lc correction
    if ((dp & 1) && (dq & 1)) acc = -acc;
    acc = acc * q[dq].pow(dp - dr);
    p = std::move(q);
    dp = dq;
    q = std::move(r);
    dq = dr;
  }
}

Elem sylvester_res(const FieldPtr& K, const UVec& p, const UVec& q) {
  int m = udeg(K, p), n = udeg(K, q);
  if (m < 0 || n < 0) return K->zero();
  int N = m + n;
  if (N == 0) return K->one();
  Mat M(N, std::vector<Elem>(N, K->zero()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) M[i][i + (m - j)] = p[j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) M[n + i][i + (n - j)] = q[j];
  return gauss_det(K, std::move(M));
}

// ---------------------------------------------------------------- binary forms

BinarySplit binary_split(const MultiPoly& P) {
  if (P.nvars() != 2) throw MathError("binary form must have 2 variables");
  BinarySplit out;
  if (P.is_zero()) return out;
  const FieldPtr& K = P.field();
  int a = -1, b = -1;
  for (const auto& [e, c] : P.terms()) {
    a = a < 0 ? e[0] : std::min(a, e[0]);
    b = b < 0 ? e[1] : std::min(b, e[1]);
  }
  out.a = a;
  out.b = b;
  int d = 0;
  for (const auto& [e, c] : P.terms()) d = std::max(d, e[1] - b);
  out.core.assign(d + 1, K->zero());
  for (const auto& [e, c] : P.terms())
    out.core[e[1] - b] = out.core[e[1] - b] + c;
  out.core = utrim(K, std::move(out.core));
  return out;
}

MultiPoly binary_join(const FieldPtr& K, int a, int b, const UVec& core) {
  MultiPoly out(K, 2);
  int d = udeg(K, core);
  for (int k = 0; k <= d; ++k) {
    if (K->is_zero(K->lift(core[k]))) continue;
    out.add_term({a + (d - k), b + k}, core[k]);
  }
  return out;
}

MultiPoly binary_from_univ(const FieldPtr& K, const UVec& p, int total_deg) {
  MultiPoly out(K, 2);
  for (size_t k = 0; k < p.size(); ++k) {
    if (K->is_zero(K->lift(p[k]))) continue;
    out.add_term({total_deg - static_cast<int>(k), static_cast<int>(k)}, p[k]);
  }
  return out;
}

MultiPoly gcd_binary_forms(const std::vector<MultiPoly>& forms) {
  if (forms.empty()) throw MathError("gcd of an empty list");
  const FieldPtr& K = forms[0].field();
  bool any = false;
  int ga = 0, gb = 0;
  UVec gcore;
  for (const MultiPoly& P : forms) {
    if (P.is_zero()) continue;
    BinarySplit s = binary_split(P);
    if (!any) {
      ga = s.a;
      gb = s.b;
      gcore = s.core;
      any = true;
    } else {
      ga = std::min(ga, s.a);
      gb = std::min(gb, s.b);
      gcore = ugcd(K, gcore, s.core);
    }
  }
  if (!any) throw MathError("gcd of all-zero forms");
  // monic normalization of the whole form (core gcd is already monic)
  return binary_join(K, ga, gb, gcore);
}

MultiPoly squarefree_part(const MultiPoly& P) {
  if (P.is_zero()) throw MathError("squarefree part of zero");
  const FieldPtr& K = P.field();
  BinarySplit s = binary_split(P);
  UVec sf = usquarefree(K, s.core);
  if (!sf.empty()) sf = uscale(K, sf, K->inv(sf[udeg(K, sf)]));
  return binary_join(K, s.a > 0 ? 1 : 0, s.b > 0 ? 1 : 0, sf);
}

// ---------------------------------------------------------------- resultants

MultiPoly resultant_in_var(const MultiPoly& P, const MultiPoly& Q, int var) {
  if (P.is_zero() && Q.is_zero()) throw MathError("resultant of zero inputs");
  MultiPoly a = P, b = Q;
  // align fields
  if (!a.field()->equals(*b.field())) {
    if (field_contains(a.field(), b.field()))
      b = b.lift_to(a.field());
    else
      a = a.lift_to(b.field());
  }
  const FieldPtr& K = a.field();
  int nv = a.nvars();
  if (var < 0 || var >= nv) throw MathError("resultant: bad variable");
  // coefficient vectors in `var`: entries are polynomials in the other vars
  auto coeff_vec = [&](const MultiPoly& F) {
    int d = 0;
    for (const auto& [e, c] : F.terms()) d = std::max(d, e[var]);
    std::vector<MultiPoly> v(d + 1, MultiPoly(K, nv));
    for (const auto& [e, c] : F.terms()) {
      Expo e2 = e;
      e2[var] = 0;
      v[e[var]].add_term(e2, c);
    }
    while (v.size() > 1 && v.back().is_zero()) v.pop_back();
    return v;
  };
  std::vector<MultiPoly> pc = coeff_vec(a), qc = coeff_vec(b);
  int m = static_cast<int>(pc.size()) - 1, n = static_cast<int>(qc.size()) - 1;
  if (m < 0 || (m == 0 && pc[0].is_zero())) return MultiPoly(K, nv);
  if (n < 0 || (n == 0 && qc[0].is_zero())) return MultiPoly(K, nv);
  int N = m + n;
  if (N == 0) return MultiPoly::constant(K, nv, K->one());
  std::vector<std::vector<MultiPoly>> M(
      N, std::vector<MultiPoly>(N, MultiPoly(K, nv)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) M[i][i + (m - j)] = pc[j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) M[n + i][i + (n - j)] = qc[j];
  return bareiss_det(std::move(M));
}

MultiPoly bareiss_det(std::vector<std::vector<MultiPoly>> M) {
  if (M.empty()) throw MathError("determinant of an empty matrix");
  const int N = static_cast<int>(M.size());
  for (const auto& row : M)
    if (static_cast<int>(row.size()) != N)
      throw MathError("determinant of a non-square matrix");
  const FieldPtr& K = M[0][0].field();
  const int nv = M[0][0].nvars();
  // fraction-free Bareiss elimination with exact polynomial division
  MultiPoly den = MultiPoly::constant(K, nv, K->one());
  int sign = 1;
  for (int k = 0; k < N - 1; ++k) {
    int piv = -1;
    for (int r = k; r < N; ++r)
      if (!M[r][k].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return MultiPoly(K, nv);
    if (piv != k) {
      std::swap(M[piv], M[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) {
        MultiPoly num = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        M[i][j] = num.is_zero() ? num : num.div_exact(den);
      }
      M[i][k] = MultiPoly(K, nv);
    }
    den = M[k][k];
  }
  MultiPoly res = M[N - 1][N - 1];
  return sign < 0 ? -res : res;
}

// ---------------------------------------------------------------- matrices

Elem gauss_det(const FieldPtr& K, Mat M) {
  size_t n = M.size();
  if (n == 0) return K->one();
  Elem det = K->one();
  int sign = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = n;
    for (size_t r = c; r < n; ++r)
      if (!K->is_zero(K->lift(M[r][c]))) {
        piv = r;
        break;
      }
    if (piv == n) return K->zero();
    if (piv != c) {
      std::swap(M[c], M[piv]);
      sign = -sign;
    }
    Elem p = M[c][c];
    det = det * p;
    Elem pinv = K->inv(p);
    for (size_t r = c + 1; r < n; ++r) {
      if (K->is_zero(K->lift(M[r][c]))) continue;
      Elem f = M[r][c] * pinv;
      for (size_t j = c; j < n; ++j) M[r][j] = M[r][j] - f * M[c][j];
    }
  }
  return sign > 0 ? det : -det;
}

long rand_long(std::mt19937_64& rng, long lo, long hi) {
  // portable across standard libraries (uniform_int_distribution is not)
  unsigned long span = static_cast<unsigned long>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

std::array<std::array<long, 3>, 3> random_unimodular(std::mt19937_64& rng,
                                                     int bound) {
  while (true) {
    std::array<std::array<long, 3>, 3> A;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) A[i][j] = rand_long(rng, -bound, bound);
    long d = A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
             A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
             A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
    if (d == 1 || d == -1) return A;
  }
}

MultiPoly apply_frame(const MultiPoly& F,
                      const std::array<std::array<long, 3>, 3>& A) {
  return F.substitute_linear(LinearMap3::from_rows(F.field(), A));
}

}  // namespace quartix
