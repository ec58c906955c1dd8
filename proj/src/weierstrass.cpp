#include "quartix/weierstrass.hpp"
#include "quartix/invariants.hpp"

#include <optional>

namespace quartix {

namespace {

void require_quartic(const MultiPoly& F, const char* who) {
  if (F.nvars() != 3 || F.is_zero() || !F.is_homogeneous(4))
    throw MathError(std::string(who) + ": expected a nonzero ternary quartic");
}

// univariate in Z at X = 1, Y = yv
UVec dehom_x(const MultiPoly& F, const Elem& yv) {
  const FieldPtr& K = F.field();
  UVec out(16, K->zero());
  for (const auto& [e, co] : F.terms()) {
    Elem t = co;
    for (int k = 0; k < e[1]; ++k) t = t * yv;
    out[e[2]] = out[e[2]] + t;
  }
  return utrim(K, out);
}

// multiplicity profile of a nonzero binary form via squarefree decomposition
std::map<int, int> multiplicity_profile(const MultiPoly& Rb) {
  const FieldPtr& K = Rb.field();
  BinarySplit s = binary_split(Rb);
  std::map<int, int> prof;
  if (s.a > 0) prof[s.a]++;
  if (s.b > 0) prof[s.b]++;
  UVec p = s.core;
  if (udeg(K, p) <= 0) return prof;
  UVec gg = ugcd(K, p, uderiv(K, p));
  auto [w, r0] = udivmod(K, p, gg);
  if (udeg(K, r0) >= 0) throw MathError("inexact squarefree split");
  int m = 1;
  while (udeg(K, w) > 0 || udeg(K, gg) > 0) {
    if (udeg(K, gg) == 0) {
      if (udeg(K, w) > 0) prof[m] += udeg(K, w);
      break;
    }
    UVec y = ugcd(K, w, gg);
    auto [fm, r1] = udivmod(K, w, y);
    if (udeg(K, r1) >= 0) throw MathError("inexact squarefree split");
    if (udeg(K, fm) > 0) prof[m] += udeg(K, fm);
    w = y;
    auto [g2, r2] = udivmod(K, gg, y);
    if (udeg(K, r2) >= 0) throw MathError("inexact squarefree split");
    gg = g2;
    m += 1;
  }
  return prof;
}

struct FrameAttempt {
  MultiPoly R;
  LinearMap3 g;
  std::map<int, int> profile;
  int q = 0;  // 24 - number of distinct roots; >= the hyperflex count
};

std::optional<FrameAttempt> try_frame(const MultiPoly& F, const LinearMap3& g) {
  const FieldPtr& K = F.field();
  MultiPoly Fg = F.substitute_linear(g);
  MultiPoly H = hessian(Fg).p;
  if (Fg.coeff({0, 0, 4}).is_zero() || H.coeff({0, 0, 6}).is_zero())
    return std::nullopt;
  MultiPoly R = flex_resultant(F, g);
  std::map<int, int> prof = multiplicity_profile(R);
  int total = 0, distinct = 0, worst = 0;
  for (const auto& [m, n] : prof) {
    total += m * n;
    distinct += n;
    worst = std::max(worst, m);
  }
  if (total != 24) throw MathError("flex resultant degree escaped 24");
  if (worst > 2) return std::nullopt;  // two inflection points collided
  FrameAttempt out{std::move(R), g, std::move(prof), 24 - distinct};
  return out;
}

}  // namespace

MultiPoly flex_resultant(const MultiPoly& F, const LinearMap3& gamma) {
  require_quartic(F, "flex_resultant");
  const FieldPtr& K = F.field();
  mpz_class p = K->characteristic();
  if (p != 0 && p < 29)
    throw MathError("flex_resultant: needs 25 distinct evaluation nodes");
  MultiPoly Fg = F.substitute_linear(gamma);
  MultiPoly H = hessian(Fg).p;
  if (Fg.coeff({0, 0, 4}).is_zero() || H.coeff({0, 0, 6}).is_zero())
    throw MathError("flex_resultant: frame leaves a vanishing Z-leading term");
  // R(1, y) by 25-point evaluation + interpolation, then homogenize:
  // R is homogeneous of degree 4*6 = 24 in (X, Y)
  std::vector<Elem> pts, vals;
  for (int y = 0; y < 25; ++y) {
    Elem yv = K->of_int(y);
    UVec fz = dehom_x(Fg, yv);
    UVec hz = dehom_x(H, yv);
    if (udeg(K, fz) != 4 || udeg(K, hz) != 6)
      throw MathError("flex_resultant: dehomogenization lost the Z-degree");
    pts.push_back(yv);
    vals.push_back(sylvester_res(K, hz, fz));
  }
  UVec R1y = lagrange(K, pts, vals);
  if (udeg(K, R1y) > 24) throw MathError("flex resultant degree escaped 24");
  return binary_from_univ(K, R1y, 24);
}

FlexReport hyperflex_form(const MultiPoly& F, unsigned long seed) {
  require_quartic(F, "hyperflex_form");
  if (discriminant_I27(F).is_zero())
    throw MathError("hyperflex_form: the quartic is singular");
  const FieldPtr& K = F.field();
  std::mt19937_64 rng(seed);
  std::vector<FrameAttempt> kept;
  int admissible = 0;
  for (int tries = 0; tries < 160 && admissible < 20; ++tries) {
    LinearMap3 g = LinearMap3::from_rows(K, random_unimodular(rng));
    std::optional<FrameAttempt> att = try_frame(F, g);
    if (!att) continue;
    ++admissible;
    kept.push_back(std::move(*att));
    int mn = kept[0].q;
    for (const auto& a : kept) mn = std::min(mn, a.q);
    int hits = 0;
    for (const auto& a : kept)
      if (a.q == mn) ++hits;
    if (hits < 2) continue;
    // two independent frames agree on the minimum: certified
    for (auto& a : kept) {
      if (a.q != mn) continue;
      FlexReport rep;
      rep.R = a.R;
      rep.G = gcd_binary_forms({a.R, a.R.derive(0), a.R.derive(1)});
      rep.hyperflex_count = squarefree_part(rep.G).total_degree();
      rep.coordinate_change_used = a.g;
      rep.profile = a.profile;
      if (rep.hyperflex_count != mn)
        throw MathError("hyperflex GCD degree disagrees with the profile");
      return rep;
    }
  }
  throw MathError("hyperflex_form: no two admissible frames agreed");
}

int hyperflex_count(const MultiPoly& F, unsigned long seed) {
  return hyperflex_form(F, seed).hyperflex_count;
}

FlexType point_flex_type(const MultiPoly& F, const std::array<Elem, 3>& P) {
  require_quartic(F, "point_flex_type");
  const FieldPtr& K = F.field();
  std::vector<Elem> pv = {P[0], P[1], P[2]};
  if (P[0].is_zero() && P[1].is_zero() && P[2].is_zero())
    throw MathError("point_flex_type: zero vector is not a projective point");
  if (!F.evaluate(pv).is_zero())
    throw MathError("point_flex_type: the point does not lie on the curve");
  std::array<Elem, 3> gF = {F.derive(0).evaluate(pv), F.derive(1).evaluate(pv),
                            F.derive(2).evaluate(pv)};
  if (gF[0].is_zero() && gF[1].is_zero() && gF[2].is_zero())
    throw MathError("point_flex_type: the curve is singular at the point");
  // second point on the tangent line, independent of P: two spanning vectors
  // of the gradient's kernel, at least one of which is not parallel to P
  std::array<Elem, 3> v1, v2;
  if (!gF[0].is_zero()) {
    v1 = {-gF[1], gF[0], K->zero()};
    v2 = {-gF[2], K->zero(), gF[0]};
  } else if (!gF[1].is_zero()) {
    v1 = {gF[1], -gF[0], K->zero()};
    v2 = {K->zero(), -gF[2], gF[1]};
  } else {
    v1 = {gF[2], K->zero(), -gF[0]};
    v2 = {K->zero(), gF[2], -gF[1]};
  }
  auto parallel = [&](const std::array<Elem, 3>& a, const std::array<Elem, 3>& b) {
    return (a[0] * b[1] - a[1] * b[0]).is_zero() &&
           (a[0] * b[2] - a[2] * b[0]).is_zero() &&
           (a[1] * b[2] - a[2] * b[1]).is_zero();
  };
  std::array<Elem, 3> Q = parallel(v1, P) ? v2 : v1;
  // restrict F to the tangent line: b(s, t) = F(s P + t Q), binary quartic
  std::vector<MultiPoly> images;
  for (int k = 0; k < 3; ++k) {
    MultiPoly im(K, 2);
    im.add_term({1, 0}, P[k]);
    im.add_term({0, 1}, Q[k]);
    images.push_back(im);
  }
  MultiPoly b = F.substitute(images);
  if (b.is_zero())
    throw MathError("point_flex_type: the tangent line lies in the curve");
  int k = 5;
  for (int j = 1; j <= 4; ++j)
    if (!b.coeff({4 - j, j}).is_zero()) {
      k = j;
      break;
    }
  if (k < 2 || k > 4) throw MathError("point_flex_type: contact order escaped");
  // Hessian cross-check: contact >= 3 exactly at the zeros of H
  Elem HP = hessian(F).p.evaluate(pv);
  if (HP.is_zero() != (k >= 3))
    throw MathError("point_flex_type: Hessian disagrees with the contact order");
  if (k >= 3) {
    // hyperflexes are the flexes where grad H is parallel to grad F
    MultiPoly Hp = hessian(F).p;
    std::array<Elem, 3> gH = {Hp.derive(0).evaluate(pv),
                              Hp.derive(1).evaluate(pv),
                              Hp.derive(2).evaluate(pv)};
    if (parallel(gF, gH) != (k == 4))
      throw MathError("point_flex_type: Jacobian rank disagrees with contact");
  }
  return k == 2 ? FlexType::Ordinary : (k == 3 ? FlexType::Flex : FlexType::Hyperflex);
}

}  // namespace quartix
