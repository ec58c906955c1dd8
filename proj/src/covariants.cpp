#include "quartix/covariants.hpp"

#include "quartix/invariants.hpp"

namespace quartix {

namespace {

const char* space_name(Space s) {
  return s == Space::Covariant ? "covariant" : "contravariant";
}

mpz_class factorial(int n) {
  mpz_class f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void require_ternary_quartic(const MultiPoly& F, const char* who) {
  if (F.nvars() != 3 || !F.is_homogeneous(4))
    throw MathError(std::string(who) + ": expected a homogeneous ternary quartic");
}

}  // namespace

Form hessian(const MultiPoly& F) {
  require_ternary_quartic(F, "hessian");
  MultiPoly d2[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) d2[i][j] = F.derive(i).derive(j);
  MultiPoly det = d2[0][0] * (d2[1][1] * d2[2][2] - d2[1][2] * d2[2][1]) -
                  d2[0][1] * (d2[1][0] * d2[2][2] - d2[1][2] * d2[2][0]) +
                  d2[0][2] * (d2[1][0] * d2[2][1] - d2[1][1] * d2[2][0]);
  return Form{std::move(det), Space::Covariant, 3, 6};
}

MultiPoly d_op_raw(const MultiPoly& op, const MultiPoly& target) {
  if (op.nvars() != 3 || target.nvars() != 3)
    throw MathError("d_op: both forms must have 3 variables");
  MultiPoly acc(target.field(), 3);
  for (const auto& [e, c] : op.terms()) {
    MultiPoly t = target;
    for (int var = 0; var < 3; ++var)
      for (int k = 0; k < e[var]; ++k) t = t.derive(var);
    if (t.is_zero()) continue;
    acc = acc + t.scale(c);
  }
  return acc;
}

Form d_op(const Form& op, const Form& target) {
  if (op.space == target.space)
    throw MathError(std::string("d_op: operator and target are both ") +
                    space_name(op.space));
  if (op.order > target.order)
    throw MathError("d_op: operator order exceeds target order");
  Form out;
  out.p = d_op_raw(op.p, target.p);
  out.space = target.space;
  out.order = target.order - op.order;
  out.degree = op.degree + target.degree;
  return out;
}

MultiPoly transvectant(const MultiPoly& F, const MultiPoly& G, int k) {
  if (F.nvars() != 2 || G.nvars() != 2)
    throw MathError("transvectant: binary forms required");
  int r = F.total_degree(), s = G.total_degree();
  if (k < 0 || k > r || k > s)
    throw MathError("transvectant: index out of range");
  const FieldPtr& K = F.field();
  mpq_class pref(factorial(r - k) * factorial(s - k), factorial(r) * factorial(s));
  pref.canonicalize();
  MultiPoly acc(K, 2);
  for (int j = 0; j <= k; ++j) {
    MultiPoly dF = F, dG = G;
    for (int t = 0; t < k - j; ++t) dF = dF.derive(0);
    for (int t = 0; t < j; ++t) dF = dF.derive(1);
    for (int t = 0; t < j; ++t) dG = dG.derive(0);
    for (int t = 0; t < k - j; ++t) dG = dG.derive(1);
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), k, j);
    mpq_class sgn = (j % 2 ? -1 : 1) * mpq_class(binom);
    acc = acc + (dF * dG).scale(sgn);
  }
  return acc.scale(pref);
}

namespace {

// classical coefficients a40..a04 of a binary quartic (divide out binomials)
std::array<Elem, 5> classical_coeffs(const MultiPoly& q) {
  const FieldPtr& K = q.field();
  const int bins[5] = {1, 4, 6, 4, 1};
  std::array<Elem, 5> a;
  for (int m = 0; m <= 4; ++m)
    a[m] = q.coeff({4 - m, m}) * K->of(mpq_class(1, bins[m]));
  return a;
}

}  // namespace

std::pair<Elem, Elem> binary_quartic_sigma_psi(const MultiPoly& q) {
  if (q.nvars() != 2 || !q.is_homogeneous(4))
    throw MathError("binary sigma/psi: homogeneous binary quartic required");
  const FieldPtr& K = q.field();
  auto a = classical_coeffs(q);
  const Elem &a40 = a[0], &a31 = a[1], &a22 = a[2], &a13 = a[3], &a04 = a[4];
  Elem sg = a40 * a04 - K->of_int(4) * a31 * a13 + K->of_int(3) * a22 * a22;
  Elem ps = a40 * a22 * a04 - a40 * a13 * a13 - a31 * a31 * a04 +
            K->of_int(2) * a31 * a22 * a13 - a22 * a22 * a22;
  return {sg, ps};
}

std::pair<Elem, Elem> binary_quartic_sigma_psi_transvectant(const MultiPoly& q) {
  if (q.nvars() != 2 || !q.is_homogeneous(4))
    throw MathError("binary sigma/psi: homogeneous binary quartic required");
  const FieldPtr& K = q.field();
  if (q.is_zero()) return {K->zero(), K->zero()};
  Elem sg = transvectant(q, q, 4).coeff({0, 0}) * K->of(mpq_class(1, 2));
  MultiPoly g = transvectant(q, q, 2);
  Elem ps = transvectant(q, g, 4).coeff({0, 0}) * K->of(mpq_class(1, 6));
  return {sg, ps};
}

std::pair<Form, Form> sigma_psi_contravariants(const MultiPoly& F) {
  require_ternary_quartic(F, "sigma/psi");
  const FieldPtr& K = F.field();
  // G(x,y,u,v,w) = F(xw, yw, -ux-vy) in the 5-variable ring x,y,u,v,w
  MultiPoly x = MultiPoly::variable(K, 5, 0), y = MultiPoly::variable(K, 5, 1);
  MultiPoly u = MultiPoly::variable(K, 5, 2), v = MultiPoly::variable(K, 5, 3);
  MultiPoly w = MultiPoly::variable(K, 5, 4);
  MultiPoly G = F.substitute({x * w, y * w, -(u * x + v * y)});
  // bucket by the (x,y) bidegree: binary-quartic coefficients over (u,v,w)
  std::array<MultiPoly, 5> bucket;
  for (auto& b : bucket) b = MultiPoly(K, 3);
  for (const auto& [e, c] : G.terms()) {
    if (e[0] + e[1] != 4) throw MathError("sigma/psi: unexpected bidegree");
    bucket[e[1]].add_term({e[2], e[3], e[4]}, c);
  }
  const int bins[5] = {1, 4, 6, 4, 1};
  std::array<MultiPoly, 5> a;
  for (int m = 0; m <= 4; ++m)
    a[m] = bucket[m].scale(mpq_class(1, bins[m]));
  const MultiPoly &a40 = a[0], &a31 = a[1], &a22 = a[2], &a13 = a[3], &a04 = a[4];
  MultiPoly sg = a40 * a04 - (a31 * a13).scale(mpq_class(4)) +
                 (a22 * a22).scale(mpq_class(3));
  MultiPoly ps = a40 * a22 * a04 - a40 * a13 * a13 - a31 * a31 * a04 +
                 (a31 * a22 * a13).scale(mpq_class(2)) - a22 * a22 * a22;
  const CalibrationTable& cal = calibration_table();
  MultiPoly sg0 = sg.div_exact_mono({0, 0, 4}).scale(cal.c_sigma);
  MultiPoly ps0 = ps.div_exact_mono({0, 0, 6}).scale(cal.c_psi);
  return {Form{std::move(sg0), Space::Contravariant, 2, 4},
          Form{std::move(ps0), Space::Contravariant, 3, 6}};
}

Mat gram_matrix(const MultiPoly& q) {
  if (q.nvars() != 3 || !q.is_homogeneous(2))
    throw MathError("gram matrix: order-2 ternary form required");
  const FieldPtr& K = q.field();
  Elem h = K->of(mpq_class(1, 2));
  Elem A = q.coeff({2, 0, 0}), B = q.coeff({0, 2, 0}), C = q.coeff({0, 0, 2});
  Elem D = q.coeff({1, 1, 0}) * h, E = q.coeff({1, 0, 1}) * h,
       Fc = q.coeff({0, 1, 1}) * h;
  return Mat{{A, D, E}, {D, B, Fc}, {E, Fc, C}};
}

Elem mat_det3(const Mat& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat mat_adj3(const Mat& m) {
  auto cof = [&](int i, int j) {
    int r[2], s[2], ri = 0, si = 0;
    for (int k = 0; k < 3; ++k) {
      if (k != i) r[ri++] = k;
      if (k != j) s[si++] = k;
    }
    Elem minor = m[r[0]][s[0]] * m[r[1]][s[1]] - m[r[0]][s[1]] * m[r[1]][s[0]];
    return (i + j) % 2 == 0 ? minor : -minor;
  };
  Mat out(3, std::vector<Elem>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = cof(j, i);
  return out;
}

Elem mat_dot(const Mat& a, const Mat& b) {
  Elem s = a[0][0] * b[0][0];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i || j) s = s + a[i][j] * b[i][j];
  return s;
}

JPairings j_pairings(const Form& phi, const Form& psi) {
  if (phi.order != 2 || psi.order != 2)
    throw MathError("J-pairings need order-2 forms");
  if (phi.space != Space::Covariant || psi.space != Space::Contravariant)
    throw MathError("J-pairings need a covariant and a contravariant");
  Mat gp = gram_matrix(phi.p), gq = gram_matrix(psi.p);
  JPairings out;
  out.j11 = mat_dot(gp, gq);
  out.j22 = mat_dot(mat_adj3(gp), mat_adj3(gq));
  out.j30 = mat_det3(gp);
  out.j03 = mat_det3(gq);
  return out;
}

CovariantChain covariant_chain(const MultiPoly& F) {
  require_ternary_quartic(F, "covariant chain");
  CovariantChain ch;
  auto sp = sigma_psi_contravariants(F);
  ch.sigma = std::move(sp.first);
  ch.psi = std::move(sp.second);
  ch.hess = hessian(F);
  Form Ff{F, Space::Covariant, 1, 4};
  auto scaled = [](Form f, const mpq_class& q) {
    f.p = f.p.scale(q);
    return f;
  };
  ch.rho = scaled(d_op(Ff, ch.psi), mpq_class(1, 144));
  ch.tau = scaled(d_op(ch.rho, Ff), mpq_class(1, 12));
  ch.xi = scaled(d_op(ch.sigma, ch.hess), mpq_class(1, 72));
  ch.eta = scaled(d_op(ch.xi, ch.sigma), mpq_class(1, 12));
  Form rhoH = d_op(ch.rho, ch.hess);
  ch.nu = scaled(d_op(ch.eta, rhoH), mpq_class(1, 8));
  Form tau2{ch.tau.p * ch.tau.p, Space::Covariant, 2 * ch.tau.degree, 4};
  ch.chi = scaled(d_op(tau2, ch.psi), mpq_class(1, 8));
  return ch;
}

}  // namespace quartix
