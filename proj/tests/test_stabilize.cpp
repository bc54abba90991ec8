#include "doctest.h"

#include "newt/milnor.hpp"
#include "newt/ndeg.hpp"
#include "newt/parse.hpp"
#include "newt/stabilize.hpp"

#include <random>
#include <string>
#include <vector>

using namespace newt;

namespace {

Ctx q2() { return Context::make({"x", "y"}, Field(0)); }
Ctx q3() { return Context::make({"x", "y", "z"}, Field(0)); }

// The running example: a germ whose Newton diagram is degenerate but which
// becomes non-degenerate after one quadratic-trick rewrite.
Poly luengo(const Ctx& c) {
  Poly phi = parse_poly("x*y^3 + z^4", c);
  return parse_poly("x^9 + y^10", c) + parse_poly("y", c) * phi.pow(2);
}

}  // namespace

TEST_CASE("decomposition search recovers g + m*phi^k splittings") {
  Ctx c = q3();
  Poly phi = parse_poly("x*y^3 + z^4", c);
  Poly f = luengo(c);

  auto d = find_decomposition(f, phi, 2);
  REQUIRE(d.has_value());
  CHECK(d->m == parse_poly("y", c));
  CHECK(d->g == parse_poly("x^9 + y^10", c));
  CHECK(d->k == 2);
  CHECK(f == d->g + d->m * d->phi.pow(d->k));

  // No multiple of phi^2 present => no decomposition.
  CHECK(!find_decomposition(parse_poly("x^9 + y^10", c), phi, 2).has_value());

  // A non-monomial multiplier can still be split one monomial at a time:
  // whatever comes back must recompose the input.
  Ctx c2 = q2();
  Poly p2 = parse_poly("x + y", c2);
  Poly f2 = (parse_poly("x", c2) + parse_poly("y^2", c2)) * p2.pow(2);
  auto d2 = find_decomposition(f2, p2, 2);
  REQUIRE(d2.has_value());
  CHECK(f2 == d2->g + d2->m * d2->phi.pow(d2->k));

  // No single monomial multiple of phi^2 hides inside x^3.
  CHECK(!find_decomposition(parse_poly("x^3", c2), p2, 2).has_value());
}

TEST_CASE("basic trick: output shape, certificate, and quadratic part") {
  Ctx c = q3();
  Poly f = luengo(c);
  auto d = find_decomposition(f, parse_poly("x*y^3 + z^4", c), 2);
  REQUIRE(d.has_value());

  auto [F, tr] = basic_trick(f, *d);
  Ctx e = F.ctx();
  REQUIRE(e->size() == 5);
  CHECK(e->name(3) == "u");
  CHECK(e->name(4) == "v");
  CHECK(F == parse_poly("-u*v + u*(x*y^3 + z^4) + y*v^2 + x^9 + y^10", e));

  auto vr = verify_stable_equiv(tr);
  CHECK(vr.ok);
  REQUIRE(tr.steps.size() == 1);
  CHECK(tr.steps[0].rule == StepRule::BasicTrick);
  CHECK(tr.input == f);
  CHECK(tr.output == F);

  // The new germ acquires exactly one non-degenerate quadratic pair.
  CHECK(quadratic_rank(F) == 2);
  CHECK(quadratic_rank(f) == 0);
}

TEST_CASE("basic trick with k = 1 and input validation") {
  Ctx c = q2();
  Poly g = parse_poly("y^3", c);
  Poly m = parse_poly("x", c);
  Poly phi = parse_poly("x + y^2", c);
  Poly f = g + m * phi;

  auto [F, tr] = basic_trick(f, Decomposition{g, m, phi, 1});
  CHECK(F == parse_poly("-u*v + u*(x + y^2) + x*v + y^3", F.ctx()));
  CHECK(verify_stable_equiv(tr).ok);

  // Decomposition that does not recompose the input is rejected.
  CHECK_THROWS_AS(basic_trick(g, Decomposition{g, m, phi, 1}), MathError);
  // k = 0 is not a trick.
  CHECK_THROWS_AS(basic_trick(f, Decomposition{g, m, phi, 0}), MathError);
}

TEST_CASE("fresh variables dodge occupied names and certificates still replay") {
  Ctx c = Context::make({"u", "v"}, Field(0));
  Poly m = parse_poly("u", c);
  Poly phi = parse_poly("v", c);
  Poly f = m * phi;

  auto [F, tr] = basic_trick(f, Decomposition{Poly::zero(c), m, phi, 1});
  Ctx e = F.ctx();
  REQUIRE(e->size() == 4);
  CHECK(e->name(2) == "u_2");
  CHECK(e->name(3) == "v_2");
  CHECK(F == parse_poly("-u_2*v_2 + u_2*v + u*v_2", e));
  CHECK(verify_stable_equiv(tr).ok);
}

TEST_CASE("square case peels a squared summand into a rank-one quadric") {
  Ctx c = q2();
  Poly g = parse_poly("y^3", c);
  Poly phi = parse_poly("x + y^2", c);
  Poly f = g + phi.pow(2);

  auto [F, tr] = square_case(f, g, phi);
  CHECK(F == parse_poly("-1/4*u^2 + u*(x + y^2) + y^3", F.ctx()));
  CHECK(verify_stable_equiv(tr).ok);

  // Stable equivalence preserves the Milnor number: f ~ x^2 + y^3 up to
  // coordinate change, so both sides sit at 2.
  CHECK(milnor_number(f).mu == 2);
  CHECK(milnor_number(F).mu == 2);

  // Needs 1/4, so characteristic 2 must refuse.
  Ctx c2 = Context::make({"x", "y"}, Field(2));
  Poly g2 = parse_poly("y^3", c2);
  Poly p2 = parse_poly("x + y^2", c2);
  CHECK_THROWS_AS(square_case(g2 + p2.pow(2), g2, p2), MathError);

  // Wrong remainder is rejected.
  CHECK_THROWS_AS(square_case(f, parse_poly("y^4", c), phi), MathError);
}

TEST_CASE("multi-term trick: shared phi across several powers, chained shear") {
  Ctx c = q2();
  Poly phi = parse_poly("x + y^2", c);
  Poly g = parse_poly("y^5", c);
  Poly m1 = parse_poly("x", c);
  Poly m2 = parse_poly("y", c);
  Poly f = g + m1 * phi.pow(2) + m2 * phi.pow(3);

  auto [F, tr] = multi_term_trick(f, phi, {TrickTerm{m1, 2}, TrickTerm{m2, 3}}, g);
  Ctx e = F.ctx();
  REQUIRE(e->size() == 6);
  CHECK(F == parse_poly(
                 "-u1*v1 + u1*v2 - u2*v2 + u2*(x + y^2) + x*v1^2 + y*v2^3 + y^5", e));
  CHECK(verify_stable_equiv(tr).ok);

  // Two tricks plus one shear.
  REQUIRE(tr.steps.size() == 3);
  CHECK(tr.steps[0].rule == StepRule::BasicTrick);
  CHECK(tr.steps[1].rule == StepRule::BasicTrick);
  CHECK(tr.steps[2].rule == StepRule::MultiTerm);

  // A single term degenerates to the plain trick, same names and output.
  Poly f1 = g + m1 * phi.pow(2);
  auto [Fa, ta] = multi_term_trick(f1, phi, {TrickTerm{m1, 2}}, g);
  auto [Fb, tb] = basic_trick(f1, Decomposition{g, m1, phi, 2});
  CHECK(Fa == Fb);
  CHECK(verify_stable_equiv(ta).ok);

  // Terms that do not recompose the input are rejected.
  CHECK_THROWS_AS(multi_term_trick(f, phi, {TrickTerm{m1, 2}}, g), MathError);
}

TEST_CASE("multi-term trick absorbs exponent-one terms into the last shear") {
  Ctx c = q3();
  Poly phi = parse_poly("x*y^3 + z^4", c);
  Poly g = parse_poly("x^9 + y^10", c);
  // Deformation of the running example: an extra x^5 * phi term.
  Poly ft = g + parse_poly("y", c) * phi.pow(2) + parse_poly("x^5", c) * phi;

  auto [Ft, tr] = multi_term_trick(
      ft, phi, {TrickTerm{parse_poly("y", c), 2}, TrickTerm{parse_poly("x^5", c), 1}}, g);
  Ctx e = Ft.ctx();
  CHECK(Ft == parse_poly(
                  "-u*v + u*(x*y^3 + z^4) + y*v^2 + x^5*v + x^9 + y^10", e));
  CHECK(verify_stable_equiv(tr).ok);
  CHECK(is_nondegenerate(Ft).verdict);
}

TEST_CASE("rewritten Luengo germ: same Milnor number, diagram turns non-degenerate") {
  Ctx c = q3();
  Poly f = luengo(c);

  // The input itself fails Newton non-degeneracy (one face carries a
  // degenerate truncation) but passes the weak form.
  CHECK(!is_nondegenerate(f).verdict);
  CHECK(is_weakly_nondegenerate(f).verdict);

  auto d = find_decomposition(f, parse_poly("x*y^3 + z^4", c), 2);
  REQUIRE(d.has_value());
  auto [F, tr] = basic_trick(f, *d);
  CHECK(verify_stable_equiv(tr).ok);

  // After the rewrite the diagram is honestly non-degenerate.
  CHECK(is_nondegenerate(F).verdict);

  // Milnor number 547 on both sides of the rewrite.
  auto mu_f = milnor_number(f).mu;
  auto mu_F = milnor_number(F).mu;
  REQUIRE(mu_f.has_value());
  REQUIRE(mu_F.has_value());
  CHECK(*mu_f == 547);
  CHECK(*mu_F == 547);
}

TEST_CASE("cubic reduction drives every germ below degree four") {
  SUBCASE("single high power") {
    Ctx c = Context::make({"x"}, Field(0));
    auto [F, tr] = cubic_reduction(parse_poly("x^5", c));
    CHECK(F == parse_poly("x^2*v1 + x^2*v2 + x*u1*u2 - u1*v1 - u2*v2", F.ctx()));
    CHECK(F.total_degree() <= 3);
    CHECK(verify_stable_equiv(tr).ok);
    auto mu = milnor_number(F).mu;
    REQUIRE(mu.has_value());
    CHECK(*mu == 4);  // mu(x^5) = 4 survives the rewrite
    for (const auto& s : tr.steps) {
      CHECK(s.rule == StepRule::BasicTrick);
      CHECK(s.k == 1);
    }
  }

  SUBCASE("already cubic: no steps, trace still verifies") {
    Ctx c = q2();
    Poly f = parse_poly("x^3 + y^3", c);
    auto [F, tr] = cubic_reduction(f);
    CHECK(F == f);
    CHECK(tr.steps.empty());
    CHECK(verify_stable_equiv(tr).ok);
  }

  SUBCASE("two quartics") {
    Ctx c = q2();
    auto [F, tr] = cubic_reduction(parse_poly("x^4 + y^4", c));
    CHECK(F == parse_poly("x^2*u1 + x^2*v1 + y^2*u2 + y^2*v2 - u1*v1 - u2*v2",
                          F.ctx()));
    CHECK(F.total_degree() <= 3);
    CHECK(verify_stable_equiv(tr).ok);
    auto mu = milnor_number(F).mu;
    REQUIRE(mu.has_value());
    CHECK(*mu == 9);  // mu(x^4 + y^4) = 3 * 3
    CHECK(quadratic_rank(F) == 4);
  }

  SUBCASE("germ must vanish at the origin") {
    Ctx c = q2();
    CHECK_THROWS_AS(cubic_reduction(parse_poly("1 + x^4", c)), MathError);
  }
}

TEST_CASE("certificate replay rejects tampered traces") {
  Ctx c = q2();
  Poly g = parse_poly("y^3", c);
  Poly m = parse_poly("x", c);
  Poly phi = parse_poly("y", c);
  auto [F, tr] = basic_trick(g + m * phi.pow(2), Decomposition{g, m, phi, 2});
  REQUIRE(verify_stable_equiv(tr).ok);

  SUBCASE("corrupted output polynomial") {
    StabTrace bad = tr;
    Ctx e = bad.output.ctx();
    bad.output = bad.output + parse_poly("u", e);
    bad.steps.back().output = bad.output;
    auto vr = verify_stable_equiv(bad);
    CHECK(!vr.ok);
    CHECK(vr.failed_step == 0);
    CHECK(!vr.reason.empty());
  }

  SUBCASE("non-invertible coordinate change") {
    Ctx e = Context::make({"u", "v"}, Field(0));
    Poly p = parse_poly("u", e);
    StabStep s{StepRule::Rename, p,  parse_poly("v", e), {},
               Poly::zero(e),    Poly::zero(e), 0, -1, -1, {}};
    s.subst = {{0, parse_poly("v", e)}};  // u -> v, v -> v: rank 1
    StabTrace bad{p, s.output, {s}};
    auto vr = verify_stable_equiv(bad);
    CHECK(!vr.ok);
    CHECK(vr.failed_step == 0);
  }

  SUBCASE("steps that do not chain") {
    StabTrace bad = tr;
    StabStep extra = tr.steps[0];
    bad.steps.push_back(extra);  // input of step 1 != output of step 0
    auto vr = verify_stable_equiv(bad);
    CHECK(!vr.ok);
  }

  SUBCASE("endpoint mismatch") {
    StabTrace bad = tr;
    bad.input = g;
    CHECK(!verify_stable_equiv(bad).ok);
  }
}

TEST_CASE("randomized rewrites always carry valid certificates") {
  std::mt19937 rng(7);
  Ctx c = q3();
  auto rnd_poly = [&](int max_terms, bool nonzero) {
    Poly p = Poly::zero(c);
    std::uniform_int_distribution<int> nterms(nonzero ? 1 : 0, max_terms);
    std::uniform_int_distribution<int> expo(0, 2);
    std::uniform_int_distribution<int> coef(-3, 3);
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
      std::vector<int> e{expo(rng), expo(rng), expo(rng)};
      int cf = coef(rng);
      if (cf == 0) cf = 1;
      p = p + Poly::term(c, Monomial{e}, c->field().from_long(cf));
    }
    if (nonzero && p.is_zero()) p = parse_poly("x", c);
    return p;
  };
  std::uniform_int_distribution<int> kdist(1, 4);

  for (int rep = 0; rep < 25; ++rep) {
    Poly g = rnd_poly(3, false);
    Poly m = rnd_poly(2, true);
    Poly phi = rnd_poly(2, true);
    unsigned k = static_cast<unsigned>(kdist(rng));
    Poly f = g + m * phi.pow(k);
    auto [F, tr] = basic_trick(f, Decomposition{g, m, phi, k});
    auto vr = verify_stable_equiv(tr);
    CHECK(vr.ok);
    if (!vr.ok) {
      MESSAGE("rep ", rep, ": ", vr.reason);
      break;
    }
  }
}

TEST_CASE("gallery builders reproduce the catalogued normal forms") {
  Ctx c = q3();
  Poly x = parse_poly("x", c), y = parse_poly("y", c), z = parse_poly("z", c);

  SUBCASE("cone over a cubic with one node") {
    auto ex = cubic_one_node(z, parse_poly("x + y + z", c), x, y);
    Ctx e = ex.output.ctx();
    CHECK(ex.output ==
          parse_poly("-u1*v1 - u2*v2 + u1*x + u2*y + v1^2*z + v2^2*(x + y + z)", e));
    CHECK(verify_stable_equiv(ex.trace).ok);
    CHECK(is_nondegenerate(ex.output).verdict);
  }

  SUBCASE("cone over a cubic with three nodes") {
    auto ex = cubic_three_nodes(x, y, z);
    Ctx e = ex.output.ctx();
    CHECK(ex.output == parse_poly("-u1*v1 - u2*v2 + u1*x + u2*y + v1*v2*z", e));
    CHECK(verify_stable_equiv(ex.trace).ok);
    REQUIRE(ex.trace.steps.size() == 2);
  }

  SUBCASE("cone over a quartic with four nodes") {
    Poly q1 = parse_poly("x^2 + x*y + y^2 + x*z + z^2", c);
    Poly q2 = parse_poly("x^2 + 2*y^2 + y*z + 3*z^2 + x*y", c);
    auto ex = quartic_four_nodes(q1, q2);
    Ctx e = ex.output.ctx();
    CHECK(ex.output ==
          parse_poly("-u*v + u*(x^2 + x*y + y^2 + x*z + z^2) "
                     "+ v*(x^2 + 2*y^2 + y*z + 3*z^2 + x*y)", e));
    CHECK(verify_stable_equiv(ex.trace).ok);
    CHECK(is_nondegenerate(ex.output).verdict);
    CHECK(quadratic_rank(ex.output) >= 2);
  }

  SUBCASE("cone over a quintic with four nodes") {
    Poly q1 = parse_poly("x^2 + x*y + y^2 + x*z + z^2", c);
    Poly q2 = parse_poly("x^2 + 2*y^2 + y*z + 3*z^2 + x*y", c);
    auto ex = quintic_four_nodes(x, y, z, q1, q2);
    Ctx e = ex.output.ctx();
    CHECK(ex.output ==
          parse_poly("-u1*v1 + u2*v1 - u2*v2 + u2*v3 - u3*v3 "
                     "+ u1*(x^2 + x*y + y^2 + x*z + z^2) "
                     "+ u3*(x^2 + 2*y^2 + y*z + 3*z^2 + x*y) "
                     "+ v1^2*x + v2^2*y + v3^2*z", e));
    CHECK(verify_stable_equiv(ex.trace).ok);
    REQUIRE(!ex.trace.steps.empty());
    CHECK(ex.trace.steps.back().rule == StepRule::Rename);
  }

  SUBCASE("linear-section family with a high-order fold") {
    Ctx e3 = q3();
    auto ex = le_yomdin(parse_poly("x^3 + y^3 + z^3", e3), parse_poly("z", e3), 7);
    Ctx e = ex.output.ctx();
    CHECK(ex.output == parse_poly("x^3 + y^3 + z^3 - u*v + u*z + v^7", e));
    CHECK(verify_stable_equiv(ex.trace).ok);
  }

  SUBCASE("builders validate their inputs") {
    CHECK_THROWS_AS(cubic_one_node(z, parse_poly("x^2", c), x, y), MathError);
    CHECK_THROWS_AS(quartic_four_nodes(x, x), MathError);
    CHECK_THROWS_AS(le_yomdin(parse_poly("x^3 + y^3 + z^3", c),
                              parse_poly("z^2", c), 3),
                    MathError);
    CHECK_THROWS_AS(le_yomdin(parse_poly("x^3 + y^3 + z^3", c),
                              parse_poly("z", c), 0),
                    MathError);
  }
}

TEST_CASE("quadratic rank diagnoses the split-off quadric") {
  Ctx c = q3();
  CHECK(quadratic_rank(parse_poly("x^3 + y^3 + z^3", c)) == 0);
  CHECK(quadratic_rank(parse_poly("x*y + z^5", c)) == 2);
  CHECK(quadratic_rank(parse_poly("x^2 + y^2 + z^2", c)) == 3);
  CHECK(quadratic_rank(parse_poly("(x + y)^2 + z^3", c)) == 1);
  Ctx c2 = Context::make({"x", "y"}, Field(2));
  CHECK_THROWS_AS(quadratic_rank(parse_poly("x*y", c2)), MathError);
}
