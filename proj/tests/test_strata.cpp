#include "doctest.h"
#include "quartix/strata.hpp"
#include "quartix/weierstrass.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

using namespace quartix;

namespace {

mpq_class rq(const char* s) {
  mpq_class x(s);
  x.canonicalize();
  return x;
}

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

// family member with an order-8 automorphism group at parameter t
MultiPoly z1_member(const FieldPtr& K, const Elem& t) {
  return head_model(K, t * t + K->one(), t + t, -K->one(), -(t * t));
}

// family member with an order-4 automorphism group at parameter t; K must
// contain i
MultiPoly z4_member(const FieldPtr& K, const Elem& i, const Elem& t) {
  Elem a = (i - K->one()) * t * t + t + t + i + K->one();
  Elem b = -(i * t + K->one());
  return head_model(K, t * (t + i), a, b, b);
}

// invariant vector over Q with the given rational entries
InvariantVector q_vec(const FieldPtr& Q, const std::array<const char*, 13>& s) {
  InvariantVector v;
  for (int k = 0; k < 13; ++k) v.v[k] = Q->of(rq(s[k]));
  return v;
}

const LabelChecks& trail_entry(const std::vector<LabelChecks>& trail,
                               const std::string& label) {
  for (const auto& lc : trail)
    if (lc.label == label) return lc;
  REQUIRE(false);
  static LabelChecks dummy;
  return dummy;
}

bool has_note(const std::vector<std::string>& notes, const std::string& part) {
  for (const auto& n : notes)
    if (n.find(part) != std::string::npos) return true;
  return false;
}

// Reduce a model over a number-field tower to F_p by sending each tower
// generator to a root of its reduced minimal polynomial.  Hyperflex counts
// are only used as a cross-check at two primes, so a bad prime would have
// to lie twice to slip through.
MultiPoly reduce_mod_p(const MultiPoly& F, unsigned long p) {
  FieldPtr Fp = Field::Fp(mpz_class(p));
  std::vector<FieldPtr> tower;
  for (FieldPtr f = F.field(); f->kind() == Field::Kind::Extension; f = f->base())
    tower.push_back(f);
  std::reverse(tower.begin(), tower.end());
  std::vector<Elem> gimg;
  std::function<Elem(const Elem&)> red = [&](const Elem& e) -> Elem {
    const FieldPtr& Ke = e.field();
    if (Ke->kind() == Field::Kind::Rational) return Fp->of(e.rat());
    size_t lvl = 0;
    while (!tower.at(lvl)->equals(*Ke)) ++lvl;
    const auto& cs = e.coords();
    Elem acc = Fp->zero();
    Elem gp = Fp->one();
    for (const auto& c : cs) {
      acc = acc + red(c) * gp;
      gp = gp * gimg.at(lvl);
    }
    return acc;
  };
  for (const auto& lvl : tower) {
    std::vector<Elem> mc;
    for (const auto& c : lvl->min_tail()) mc.push_back(red(c));
    mc.push_back(Fp->one());
    bool found = false;
    for (unsigned long x = 0; x < p && !found; ++x) {
      Elem xe = Fp->of_int(static_cast<long>(x));
      Elem acc = Fp->zero();
      for (size_t k = mc.size(); k-- > 0;) acc = acc * xe + mc[k];
      if (acc.is_zero()) {
        gimg.push_back(xe);
        found = true;
      }
    }
    REQUIRE(found);
  }
  MultiPoly G(Fp, F.nvars());
  for (const auto& [e, c] : F.terms()) G.add_term(e, red(c));
  return G;
}

}  // namespace

TEST_SUITE("strata") {

TEST_CASE("stratum table loads with lattice metadata") {
  const auto& rows = stratum_table();
  CHECK(rows.size() == 26);
  CHECK(rows.front().name == "M3o");
  CHECK(rows.front().s == 0);
  CHECK(rows.front().dim == 6);

  const StratumLabel& z1 = stratum_row("Z1");
  CHECK(z1.s == 8);
  CHECK(z1.dim == 1);
  CHECK(z1.substrata == std::vector<std::string>{"Phi", "Psi"});

  const StratumLabel& z4 = stratum_row("Z4");
  CHECK(z4.s == 7);
  CHECK(z4.dim == 1);
  CHECK(z4.substrata == std::vector<std::string>{"Omega", "Psi"});

  CHECK(stratum_row("Psi").s == 12);
  CHECK(stratum_row("Psi").dim == 0);
  CHECK(stratum_row("Omega").s == 9);
  CHECK(stratum_row("Theta").s == 7);
  CHECK(stratum_row("Sigma").s == 8);
  CHECK_THROWS_AS(stratum_row("Z17"), MathError);
}

TEST_CASE("tuple strata recognize their built-in models") {
  FieldPtr Q = Field::Q();

  std::vector<LabelChecks> trail;
  auto hf = zero_dim_test(dixmier_ohno(fermat(Q)), trail);
  REQUIRE(hf.has_value());
  CHECK(hf->name == "Phi");
  CHECK(hf->s == 12);
  int members = 0;
  for (const auto& lc : trail) members += lc.member ? 1 : 0;
  CHECK(members == 1);

  auto hp = zero_dim_test(dixmier_ohno(psi_curve(Q)));
  REQUIRE(hp.has_value());
  CHECK(hp->name == "Psi");

  auto hs = zero_dim_test(dixmier_ohno(builtin_model("Sigma")));
  REQUIRE(hs.has_value());
  CHECK(hs->name == "Sigma");
}

TEST_CASE("theta tower model matches its tuple") {
  MultiPoly T = builtin_model("Theta");
  CHECK(T.field()->absolute_degree() == 6);
  std::vector<LabelChecks> trail;
  auto h = zero_dim_test(dixmier_ohno(T), trail);
  REQUIRE(h.has_value());
  CHECK(h->name == "Theta");
  int members = 0;
  for (const auto& lc : trail) members += lc.member ? 1 : 0;
  CHECK(members == 1);
}

TEST_CASE("ideal strata recognize both points of each pair") {
  auto ho1 = zero_dim_test(dixmier_ohno(builtin_model("Omega1")));
  REQUIRE(ho1.has_value());
  CHECK(ho1->name == "Omega");
  auto ho2 = zero_dim_test(dixmier_ohno(builtin_model("Omega2")));
  REQUIRE(ho2.has_value());
  CHECK(ho2->name == "Omega");

  auto hp1 = zero_dim_test(dixmier_ohno(builtin_model("Pi1")));
  REQUIRE(hp1.has_value());
  CHECK(hp1->name == "Pi");
  auto hp2 = zero_dim_test(dixmier_ohno(builtin_model("Pi2")));
  REQUIRE(hp2.has_value());
  CHECK(hp2->name == "Pi");

  CHECK_THROWS_AS(builtin_model("Xi"), MathError);
}

TEST_CASE("z1 membership extracts the family parameter") {
  FieldPtr Q = Field::Q();

  // t = 3 sits at z = t + 1/t + 4t/(t^2+1) - 1/2 = 121/30
  MembershipResult m3 = z1_test(dixmier_ohno(z1_member(Q, Q->of_int(3))));
  CHECK(m3.member);
  REQUIRE(m3.z_known);
  CHECK(m3.z == Q->of(rq("121/30")));
  CHECK(z1_parameter_z(Q->of_int(3)) == Q->of(rq("121/30")));

  // t = 2 is the point with twelve hyperflexes
  MembershipResult m2 = z1_test(dixmier_ohno(psi_curve(Q)));
  CHECK(m2.member);
  REQUIRE(m2.z_known);
  CHECK(m2.z == Q->of(rq("18/5")));

  // the Fermat point lies on this family closure at z = -9/2
  MembershipResult mf = z1_test(dixmier_ohno(fermat(Q)));
  CHECK(mf.member);
  REQUIRE(mf.z_known);
  CHECK(mf.z == Q->of(rq("-9/2")));

  // a curve off the family fails at least one closed form
  MultiPoly G = fermat(Q);
  G.add_term({3, 1, 0}, Q->one());
  MembershipResult mg = z1_test(dixmier_ohno(G));
  CHECK(!mg.member);
}

TEST_CASE("z1 reconstruction round trips") {
  FieldPtr Q = Field::Q();

  // z = 18/5: the parameter quartic has rational roots, no extension needed
  ReconstructedCurve r1 = reconstruct_z1(Q->of(rq("18/5")));
  CHECK(r1.field->kind() == Field::Kind::Rational);
  CHECK(z1_parameter_z(r1.t) == r1.z);
  InvariantVector w1 = reconstructed_invariants(r1);
  CHECK(weighted_equal(w1, dixmier_ohno(psi_curve(Q))));

  // z = 3 and z = -7/2: irreducible parameter quartics
  for (const char* zs : {"3", "-7/2"}) {
    Elem z = Q->of(rq(zs));
    ReconstructedCurve r = reconstruct_z1(z);
    CHECK(udeg(Q, r.param_poly) == 4);
    InvariantVector w = reconstructed_invariants(r);
    MembershipResult m = z1_test(w);
    CHECK(m.member);
    REQUIRE(m.z_known);
    CHECK(m.z == r.field->lift(z));
  }
}

TEST_CASE("z1 reconstruction survives a reducible trusted quartic") {
  // over Q(i) the rational-root shortcut is off, so z = 18/5 adjoins a
  // quartic that splits; the invariant run must still land on the printed
  // point, splitting the parameter extension if an inversion fails
  FieldPtr Qi = Field::Qi();
  ReconstructedCurve r = reconstruct_z1(Qi->of(rq("18/5")));
  InvariantVector w = reconstructed_invariants(r);
  CHECK(weighted_equal(w, dixmier_ohno(psi_curve(Field::Q()))));
}

TEST_CASE("z1 family symmetry t -> (1+it)/(t+i)") {
  FieldPtr Qi = Field::Qi();
  Elem i = Qi->gen();
  Elem t0 = Qi->of_int(2);
  Elem t1 = (Qi->one() + i * t0) / (t0 + i);
  CHECK(t1 == (Qi->of_int(4) + Qi->of_int(3) * i) / Qi->of_int(5));
  CHECK(z1_parameter_z(t0) == z1_parameter_z(t1));
  CHECK(weighted_equal(dixmier_ohno(z1_member(Qi, t0)),
                       dixmier_ohno(z1_member(Qi, t1))));
}

TEST_CASE("z4 membership confirms a family member through the oracle") {
  FieldPtr Qi = Field::Qi();
  Elem i = Qi->gen();
  Elem t = Qi->of_int(2);
  Elem z = z4_parameter_z(t);
  CHECK(z == (Qi->of_int(17) - Qi->of_int(14) * i) / Qi->of_int(15));

  InvariantVector v = dixmier_ohno(z4_member(Qi, i, t));
  MembershipResult m = z4_test(v);
  CHECK(m.member);
  REQUIRE(m.z_known);
  CHECK(m.z == z);
  REQUIRE(!m.checks.empty());
  CHECK(m.checks.front().what == "defining polynomial");
  CHECK(m.checks.front().pass);
  CHECK(m.checks.back().what == "oracle comparison with reconstructed model");
}

TEST_CASE("z4 reconstruction round trips") {
  FieldPtr Qi = Field::Qi();
  Elem i = Qi->gen();
  for (const char* ts : {"1+i", "3i"}) {
    Elem t = ts[0] == '1' ? Qi->one() + i : Qi->of_int(3) * i;
    Elem z = z4_parameter_z(t);
    InvariantVector direct = dixmier_ohno(z4_member(Qi, i, t));
    ReconstructedCurve r = reconstruct_z4(z);
    CHECK(r.stratum == "Z4");
    CHECK(udeg(Qi, r.param_poly) == 6);
    InvariantVector w = reconstructed_invariants(r);
    CHECK(weighted_equal(direct, w));
  }
}

TEST_CASE("z4 family symmetry t -> i(t-1)/(t+1)") {
  FieldPtr Qi = Field::Qi();
  Elem i = Qi->gen();
  Elem t0 = Qi->of_int(2);
  Elem t1 = i * (t0 - Qi->one()) / (t0 + Qi->one());
  CHECK(z4_parameter_z(t0) == z4_parameter_z(t1));
  CHECK(weighted_equal(dixmier_ohno(z4_member(Qi, i, t0)),
                       dixmier_ohno(z4_member(Qi, i, t1))));
}

TEST_CASE("z4 hand anchors and the z = 1 parameter polynomial") {
  FieldPtr Q = Field::Q();

  // (I3, I6, I9) = (1, -1, 1) kills the defining polynomial, and the
  // extraction sends (i1, i2) = (-1, 1) to z = 1
  InvariantVector v = q_vec(Q, {"1", "-1", "1", "0", "0", "0", "0", "0", "0",
                                "0", "0", "0", "0"});
  MembershipResult m = z4_test(v);
  REQUIRE(m.checks.size() >= 3);
  CHECK(m.checks[0].what == "defining polynomial");
  CHECK(m.checks[0].pass);
  REQUIRE(m.z_known);
  CHECK(m.z == Q->one());
  CHECK(m.checks[1].pass);  // i1 closed form at z = 1
  CHECK(m.checks[2].pass);  // i2 closed form at z = 1
  CHECK(!m.member);         // the remaining absolutes do not match

  // at z = 1 the degree-6 polynomial collapses to 2T^2(T^2+1)(T-1)^2: the
  // T = 0 and T = -i roots are degenerate and reconstruction must land on
  // t = 1 over Q(i)
  ReconstructedCurve r = reconstruct_z4(Q->one());
  CHECK(r.field->absolute_degree() == 2);
  CHECK(r.t == r.field->one());
  CHECK(z4_parameter_z(r.t) == r.z);
}

TEST_CASE("z4 extraction falls back to the i1 closed form") {
  FieldPtr Q = Field::Q();
  // the unique rational point with defining = 0 and a vanishing extraction
  // denominator; the quadratic from the i1 closed form degenerates to the
  // linear equation -18z + 9 = 0
  InvariantVector v = q_vec(Q, {"1", "5/4", "79/16", "0", "0", "0", "0", "0",
                                "0", "0", "0", "0", "0"});
  MembershipResult m = z4_test(v);
  CHECK(has_note(m.notes, "denominator vanished"));
  CHECK(has_note(m.notes, "candidate z"));
  REQUIRE(m.z_known);
  CHECK(m.z == Q->of(rq("1/2")));
  CHECK(!m.member);  // i2 closed form fails at z = 1/2
}

TEST_CASE("classification reports") {
  FieldPtr Q = Field::Q();

  SUBCASE("the Fermat point is Phi, which also sits on the Z1 closure") {
    StratumReport rep = classify(dixmier_ohno(fermat(Q)));
    REQUIRE(rep.match.has_value());
    CHECK(rep.match->name == "Phi");
    CHECK(rep.match->s == 12);
    CHECK(rep.match->dim == 0);
    CHECK(rep.tested.size() == 8);
    CHECK(trail_entry(rep.tested, "Z1").member);
    CHECK(!trail_entry(rep.tested, "Z4").member);
    CHECK(has_note(rep.notes, "multiple diagnostics matched"));
  }

  SUBCASE("a generic Z1 member reports Z1 with its parameter") {
    StratumReport rep = classify(dixmier_ohno(z1_member(Q, Q->of_int(3))));
    REQUIRE(rep.match.has_value());
    CHECK(rep.match->name == "Z1");
    CHECK(rep.match->s == 8);
    CHECK(rep.match->dim == 1);
    REQUIRE(rep.z_known);
    CHECK(rep.z == Q->of(rq("121/30")));
  }

  SUBCASE("the order-96 point matches Psi, Z1 (z = 18/5) and Z4 (z = 6)") {
    StratumReport rep = classify(dixmier_ohno(psi_curve(Q)));
    REQUIRE(rep.match.has_value());
    CHECK(rep.match->name == "Psi");
    CHECK(trail_entry(rep.tested, "Z1").member);
    CHECK(trail_entry(rep.tested, "Z4").member);
    CHECK(has_note(rep.notes, "multiple diagnostics matched"));
  }

  SUBCASE("hyperflex cross-check") {
    InvariantVector v = dixmier_ohno(fermat(Q));
    CHECK(has_note(classify(v, 12).notes, "matches s = 12"));
    CHECK(has_note(classify(v, 7).notes, "does not match s = 12"));
  }

  SUBCASE("I3 = 0 is reported, not an error") {
    InvariantVector v = q_vec(Q, {"0", "1", "0", "0", "0", "0", "1", "0", "0",
                                  "0", "0", "0", "0"});
    StratumReport rep = classify(v);
    CHECK(!rep.match.has_value());
    CHECK(rep.tested.empty());
    CHECK(has_note(rep.notes, "outside printed diagnostics"));
  }

  SUBCASE("a curve off every printed stratum reports no match") {
    MultiPoly G = fermat(Q);
    G.add_term({3, 1, 0}, Q->one());
    StratumReport rep = classify(dixmier_ohno(G));
    CHECK(!rep.match.has_value());
    CHECK(rep.tested.size() == 8);
    for (const auto& lc : rep.tested) CHECK(!lc.member);
  }
}

TEST_CASE("built-in hyperflex counts match the table") {
  // exact counts over the natural fields
  CHECK(hyperflex_count(builtin_model("Phi")) == stratum_row("Phi").s);
  CHECK(hyperflex_count(builtin_model("Psi")) == stratum_row("Psi").s);
  CHECK(hyperflex_count(builtin_model("Sigma")) == stratum_row("Sigma").s);
  CHECK(hyperflex_count(builtin_model("Omega1")) == stratum_row("Omega").s);
  CHECK(hyperflex_count(builtin_model("Omega2")) == stratum_row("Omega").s);

  // the degree-6 towers are counted after reduction at two split primes
  // (both 1 mod 4); a count disturbed by bad reduction would have to agree
  // twice to pass
  for (const char* label : {"Theta", "Pi1", "Pi2"}) {
    int want = stratum_row(label[0] == 'T' ? "Theta" : "Pi").s;
    MultiPoly M = builtin_model(label);
    CHECK(hyperflex_count(reduce_mod_p(M, 40013)) == want);
    CHECK(hyperflex_count(reduce_mod_p(M, 40169)) == want);
  }
}

}  // TEST_SUITE
