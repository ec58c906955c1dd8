#include "doctest.h"
#include "quartix/weierstrass.hpp"
#include "quartix/invariants.hpp"

using namespace quartix;

namespace {

MultiPoly fermat(const FieldPtr& K) {
  MultiPoly F(K, 3);
  F.add_term({4, 0, 0}, K->one());
  F.add_term({0, 4, 0}, K->one());
  F.add_term({0, 0, 4}, K->one());
  return F;
}

MultiPoly psi_curve(const FieldPtr& K) {
  MultiPoly F = fermat(K);
  F.add_term({2, 2, 0}, K->of_int(3));
  F.add_term({2, 0, 2}, K->of_int(3));
  F.add_term({0, 2, 2}, K->of_int(3));
  return F;
}

MultiPoly klein(const FieldPtr& K) {
  MultiPoly F(K, 3);
  F.add_term({3, 1, 0}, K->one());
  F.add_term({0, 3, 1}, K->one());
  F.add_term({1, 0, 3}, K->one());
  return F;
}

// head*(X^2 - YZ)^2 - YZ*(2X - Y - Z)*(aX + bY + cZ)
MultiPoly head_model(const FieldPtr& K, const Elem& head, const Elem& a,
                     const Elem& b, const Elem& c) {
  MultiPoly X = MultiPoly::variable(K, 3, 0);
  MultiPoly Y = MultiPoly::variable(K, 3, 1);
  MultiPoly Z = MultiPoly::variable(K, 3, 2);
  MultiPoly q = X * X - Y * Z;
  MultiPoly l1 = X.scale(K->of_int(2)) - Y - Z;
  MultiPoly l2 = X.scale(a) + Y.scale(b) + Z.scale(c);
  return (q * q).scale(head) - Y * Z * l1 * l2;
}

// family member with 8 hyperflexes, parameter t = 3
MultiPoly z1_t3(const FieldPtr& K) {
  return head_model(K, K->of_int(10), K->of_int(6), K->of_int(-1), K->of_int(-9));
}

// family member with 7 hyperflexes over Q(i), parameter t = 2
MultiPoly z4_t2(const FieldPtr& Qi) {
  Elem i = Qi->gen();
  Elem t = Qi->of_int(2);
  Elem head = t * (t + i);
  Elem a = (i - Qi->one()) * t * t + t + t + Qi->one() + i;
  Elem b = -(i * t + Qi->one());
  return head_model(Qi, head, a, b, b);
}

}  // namespace

TEST_SUITE("weierstrass") {

TEST_CASE("flex resultant is a degree-24 binary form") {
  FieldPtr Q = Field::Q();
  MultiPoly F = fermat(Q);
  // full shear: X -> X+Y+Z, Y -> Y+Z keeps both Z-leading terms nonzero
  LinearMap3 shear =
      LinearMap3::from_rows(Q, {{{1, 1, 1}, {0, 1, 1}, {0, 0, 1}}});
  MultiPoly R = flex_resultant(F, shear);
  CHECK(R.nvars() == 2);
  CHECK(R.total_degree() == 24);
  CHECK(R.is_homogeneous(24));
  // the identity frame is inadmissible for Fermat: its Hessian is a multiple
  // of X^2 Y^2 Z^2, so the Z^6 coefficient vanishes
  CHECK_THROWS_AS(flex_resultant(F, LinearMap3::identity(Q)), MathError);
  // tiny characteristic lacks the 25 evaluation nodes
  FieldPtr F5 = Field::Fp(5);
  LinearMap3 shear5 =
      LinearMap3::from_rows(F5, {{{1, 0, 0}, {0, 1, 0}, {1, 1, 1}}});
  CHECK_THROWS_AS(flex_resultant(fermat(F5), shear5), MathError);
}

TEST_CASE("hyperflex counts of the pinned curves") {
  FieldPtr Q = Field::Q();
  FlexReport rep = hyperflex_form(fermat(Q));
  CHECK(rep.hyperflex_count == 12);
  CHECK(rep.G.total_degree() >= 12);
  int total = 0;
  for (const auto& [m, n] : rep.profile) total += m * n;
  CHECK(total == 24);
  CHECK(rep.profile.at(2) == 12);  // 12 double roots, no deeper collisions
  CHECK(!rep.coordinate_change_used.det().is_zero());

  CHECK(hyperflex_count(psi_curve(Q)) == 12);
  CHECK(hyperflex_count(klein(Q)) == 0);
  CHECK(hyperflex_count(z1_t3(Q)) == 8);
}

TEST_CASE("hyperflex count of the order-four family member over Q(i)") {
  FieldPtr Qi = Field::Qi();
  CHECK(hyperflex_count(z4_t2(Qi)) == 7);
}

TEST_CASE("count is invariant under GL3 frames and reruns") {
  FieldPtr Q = Field::Q();
  MultiPoly F = fermat(Q);
  std::mt19937_64 rng(101);
  int done = 0;
  while (done < 20) {
    std::array<std::array<long, 3>, 3> rows;
    for (auto& r : rows)
      for (auto& x : r) x = rand_long(rng, -5, 5);
    LinearMap3 g = LinearMap3::from_rows(Q, rows);
    if (g.det().is_zero()) continue;
    ++done;
    CHECK(hyperflex_count(F.substitute_linear(g)) == 12);
  }
  // seed changes the frames, never the count; equal seeds reproduce the report
  CHECK(hyperflex_count(F, 5) == 12);
  CHECK(hyperflex_count(F, 997) == 12);
  FlexReport a = hyperflex_form(F, 31);
  FlexReport b = hyperflex_form(F, 31);
  CHECK(a.R == b.R);
  CHECK(a.G == b.G);
}

TEST_CASE("hyperflex counting works over large prime fields") {
  FieldPtr Fp = Field::Fp(40013);
  CHECK(hyperflex_count(fermat(Fp)) == 12);
  CHECK(hyperflex_count(klein(Fp)) == 0);
}

TEST_CASE("singular curves are rejected") {
  FieldPtr Q = Field::Q();
  MultiPoly cone(Q, 3);
  cone.add_term({4, 0, 0}, Q->one());
  cone.add_term({0, 4, 0}, Q->one());
  CHECK_THROWS_AS(hyperflex_form(cone), MathError);
  MultiPoly X = MultiPoly::variable(Q, 3, 0);
  MultiPoly Y = MultiPoly::variable(Q, 3, 1);
  MultiPoly Z = MultiPoly::variable(Q, 3, 2);
  MultiPoly nodal = Y * Y * Z * Z - X * X * X * X - X * X * Z * Z;
  CHECK_THROWS_AS(hyperflex_form(nodal), MathError);
}

TEST_CASE("point types on the order-four family member") {
  FieldPtr Qi = Field::Qi();
  MultiPoly F = z4_t2(Qi);
  // both points lie on X^2 = YZ and are hyperflexes (tangents Y = 0 and
  // 2X - Y - Z = 0)
  std::array<Elem, 3> p1 = {Qi->zero(), Qi->zero(), Qi->one()};
  std::array<Elem, 3> p2 = {Qi->one(), Qi->one(), Qi->one()};
  CHECK(point_flex_type(F, p1) == FlexType::Hyperflex);
  CHECK(point_flex_type(F, p2) == FlexType::Hyperflex);
}

TEST_CASE("point types on Fermat, Klein, and an ordinary point") {
  // (1 : w : 0) with w^4 = -1 is one of Fermat's twelve hyperflexes
  FieldPtr Q = Field::Q();
  std::vector<Elem> tail = {Q->one(), Q->zero(), Q->zero(), Q->zero()};
  FieldPtr L = Field::ext(Q, tail, "w");  // w^4 = -1
  MultiPoly F = fermat(Q).lift_to(L);
  std::array<Elem, 3> hex = {L->one(), L->gen(), L->zero()};
  CHECK(point_flex_type(F, hex) == FlexType::Hyperflex);
  // Klein's coordinate points are ordinary flexes
  CHECK(point_flex_type(klein(Q), {Q->one(), Q->zero(), Q->zero()}) ==
        FlexType::Flex);
  CHECK(point_flex_type(klein(Q), {Q->zero(), Q->zero(), Q->one()}) ==
        FlexType::Flex);
  // non-inflection point: x^4+y^4+z^4-3x^2y^2 at (1:1:1), where H = -1296
  MultiPoly G = fermat(Q);
  G.add_term({2, 2, 0}, Q->of_int(-3));
  CHECK(point_flex_type(G, {Q->one(), Q->one(), Q->one()}) ==
        FlexType::Ordinary);
}

TEST_CASE("point preconditions") {
  FieldPtr Q = Field::Q();
  MultiPoly F = fermat(Q);
  CHECK_THROWS_AS(point_flex_type(F, {Q->one(), Q->one(), Q->one()}),
                  MathError);  // not on the curve
  CHECK_THROWS_AS(point_flex_type(F, {Q->zero(), Q->zero(), Q->zero()}),
                  MathError);
  MultiPoly X = MultiPoly::variable(Q, 3, 0);
  MultiPoly Y = MultiPoly::variable(Q, 3, 1);
  MultiPoly Z = MultiPoly::variable(Q, 3, 2);
  MultiPoly nodal = Y * Y * Z * Z - X * X * X * X - X * X * Z * Z;
  CHECK_THROWS_AS(point_flex_type(nodal, {Q->zero(), Q->one(), Q->zero()}),
                  MathError);  // singular at the point
  // a smooth point whose tangent is a line component of the curve
  MultiPoly cubes = X * X * X + Y * Y * Y + Z * Z * Z;
  MultiPoly with_line = (X + Y + Z) * cubes;
  CHECK_THROWS_AS(
      point_flex_type(with_line, {Q->of_int(2), Q->of_int(-1), Q->of_int(-1)}),
      MathError);
}

}  // TEST_SUITE
