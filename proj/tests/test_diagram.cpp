#include <algorithm>

#include "doctest.h"
#include "newt/diagram.hpp"
#include "newt/parse.hpp"

using namespace newt;

namespace {
Ctx q2() { return Context::make({"x", "y"}, Field()); }
Ctx q3() { return Context::make({"x", "y", "z"}, Field()); }
mpq_class q(long a, long b = 1) { return mpq_class(a, b); }
}  // namespace

TEST_CASE("diagram of x*y + x^5 + y^5") {
  Ctx c = q2();
  NewtonDiagram d = newton_diagram(parse_poly("x*y + x^5 + y^5", c));
  // Support in storage order: (1,1), (0,5), (5,0).
  REQUIRE(d.pts.size() == 3);
  CHECK(d.vertices == std::vector<int>{0, 1, 2});
  CHECK(d.convenient);
  REQUIRE(d.faces.size() == 5);  // three vertices, two edges
  CHECK(d.face_by_pts({0, 1}) != nullptr);
  CHECK(d.face_by_pts({0, 2}) != nullptr);
  CHECK(d.face_by_pts({1, 2}) == nullptr);  // axis points are not joined
  const DFace* mid = d.face_by_pts({0});
  REQUIRE(mid != nullptr);
  CHECK(mid->inner);  // the vertex x*y avoids both coordinate lines
  const DFace* ax = d.face_by_pts({1});
  REQUIRE(ax != nullptr);
  CHECK_FALSE(ax->inner);
  CHECK(ax->vanishing == std::vector<int>{0});
  for (const auto& f : d.faces)
    for (const auto& w : f.witness) CHECK(w > 0);
  CHECK(d.facets.size() == 4);
  int compact = 0;
  for (const auto& f : d.facets) compact += f.compact ? 1 : 0;
  CHECK(compact == 2);

  NuReport r = newton_number(d);
  CHECK(r.convenient);
  CHECK(r.V == std::vector<mpq_class>{1, 10, 5});
  CHECK(r.nu == 1);
  CHECK(r.integral);
}

TEST_CASE("diagram of x^3 + y^5") {
  NewtonDiagram d = newton_diagram(parse_poly("x^3 + y^5", q2()));
  CHECK(d.faces.size() == 3);
  NuReport r = newton_number(d);
  CHECK(r.V == std::vector<mpq_class>{1, 8, q(15, 2)});
  CHECK(r.nu == 8);
}

TEST_CASE("one-variable and non-convenient germs") {
  Ctx c1 = Context::make({"x"}, Field());
  NuReport r = newton_number(newton_diagram(parse_poly("x^7", c1)));
  CHECK(r.nu == 6);
  CHECK(r.convenient);

  NewtonDiagram d = newton_diagram(parse_poly("x*y", q2()));
  CHECK_FALSE(d.convenient);
  CHECK(d.faces.size() == 1);
  NuReport rr = newton_number(d);
  CHECK(rr.nu == 1);
  CHECK(rr.V == std::vector<mpq_class>{1, 0, 0});
}

TEST_CASE("quadric with a fat two-face") {
  Ctx c = q3();
  Poly f = parse_poly("x^2 + 2*x*y + y^2 + x*z + z^2", c);
  NewtonDiagram d = newton_diagram(f);
  // Storage order: z^2, y^2, x*z, x*y, x^2.
  REQUIRE(d.pts.size() == 5);
  CHECK(d.vertices == std::vector<int>{0, 1, 4});
  REQUIRE(d.faces.size() == 7);  // 3 vertices + 3 edges + 1 two-face
  const DFace* top = d.face_by_pts({0, 1, 2, 3, 4});
  REQUIRE(top != nullptr);
  CHECK(top->dim == 2);
  CHECK(top->vertex_pts == std::vector<int>{0, 1, 4});
  CHECK(top->inner);
  const DFace* edge = d.face_by_pts({1, 3, 4});
  REQUIRE(edge != nullptr);
  CHECK(edge->dim == 1);
  CHECK(face_poly(f, d, *edge) == parse_poly("(x + y)^2", c));

  NuReport r = newton_number(d);
  CHECK(r.V == std::vector<mpq_class>{1, 6, 6, q(4, 3)});
  CHECK(r.nu == 1);
}

TEST_CASE("weighted homogeneous space germ") {
  Ctx c = q3();
  Poly f = parse_poly("x^5 + x*y^3 + z^3 - 3*x^2*y*z", c);
  NewtonDiagram d = newton_diagram(f);
  // Storage order: z^3, x*y^3, x^2*y*z, x^5.
  REQUIRE(d.pts.size() == 4);
  CHECK(d.vertices == std::vector<int>{0, 1, 3});  // the mixed term is interior
  CHECK_FALSE(d.convenient);                        // no pure power of y
  REQUIRE(d.faces.size() == 7);
  const DFace* top = d.face_by_pts({0, 1, 2, 3});
  REQUIRE(top != nullptr);
  CHECK(top->dim == 2);
  CHECK(face_poly(f, d, *top) == f);

  REQUIRE(d.facets.size() == 5);
  CHECK(d.facets[3].normal == QVec{3, 0, 1});  // skew unbounded facet
  CHECK(d.facets[3].c == 3);
  CHECK(d.facets[3].pts_on == std::vector<int>{0, 1});
  CHECK(d.facets[4].normal == QVec{3, 4, 5});
  CHECK(d.facets[4].c == 15);
  CHECK(d.facets[4].compact);

  NuReport r = newton_number(d);
  CHECK(r.V == std::vector<mpq_class>{1, 8, 15, q(15, 2)});
  CHECK(r.nu == 22);
  CHECK(r.integral);
}

TEST_CASE("newton number is invariant under variable permutation") {
  Ctx c = q3();
  Poly f = parse_poly("x^5 + x*y^3 + z^3 - 3*x^2*y*z", c);
  Poly g = parse_poly("y^5 + y*z^3 + x^3 - 3*y^2*z*x", c);
  CHECK(newton_number(newton_diagram(f)).nu == newton_number(newton_diagram(g)).nu);
}

TEST_CASE("restriction to a coordinate plane matches the small diagram") {
  Ctx c = q3();
  NewtonDiagram big = newton_diagram(parse_poly("x^2 + 2*x*y + y^2 + x*z + z^2", c));
  Ctx cxz = Context::make({"x", "z"}, Field());
  NewtonDiagram small = newton_diagram(parse_poly("x^2 + x*z + z^2", cxz));
  // Collect the faces of the big diagram lying in the xz-plane as sets of
  // (x, z) exponent pairs, and compare with the plane diagram.
  auto key = [](const NewtonDiagram& d, const DFace& f, int xi, int zi) {
    std::vector<std::pair<mpq_class, mpq_class>> k;
    for (int p : f.pts) k.push_back({d.pts[p][xi], d.pts[p][zi]});
    std::sort(k.begin(), k.end());
    return k;
  };
  std::vector<std::vector<std::pair<mpq_class, mpq_class>>> restricted, direct;
  for (const auto& f : big.faces) {
    bool in_plane = true;
    for (int p : f.pts)
      if (big.pts[p][1] != 0) in_plane = false;
    if (in_plane) restricted.push_back(key(big, f, 0, 2));
  }
  for (const auto& f : small.faces) direct.push_back(key(small, f, 0, 1));
  std::sort(restricted.begin(), restricted.end());
  std::sort(direct.begin(), direct.end());
  CHECK(restricted == direct);
}

TEST_CASE("covector diagrams") {
  Ctx c = q2();
  CDiagram cd = natural_cdiagram(parse_poly("x*y + x^5 + y^5", c));
  REQUIRE(cd.covectors.size() == 2);
  CHECK(cd.covectors[0] == QVec{q(1, 5), q(4, 5)});
  CHECK(cd.covectors[1] == QVec{q(4, 5), q(1, 5)});
  NewtonDiagram d = newton_diagram(cd);
  CHECK(d.convenient);
  REQUIRE(d.pts.size() == 3);  // sorted: (0,5), (1,1), (5,0)
  CHECK(d.pts[1] == QVec{1, 1});
  CHECK(newton_number(d).nu == 1);

  CDiagram one{c, {QVec{q(1, 2), q(1, 3)}}};
  NuReport r = newton_number(newton_diagram(one));
  CHECK(r.V == std::vector<mpq_class>{1, 5, 3});
  CHECK(r.nu == 2);

  CDiagram frac{c, {QVec{q(1, 2), q(2, 5)}}};
  NuReport fr = newton_number(newton_diagram(frac));
  CHECK(fr.nu == q(3, 2));
  CHECK_FALSE(fr.integral);

  Ctx c3 = q3();
  CDiagram qd = natural_cdiagram(parse_poly("x^2 + 2*x*y + y^2 + x*z + z^2", c3));
  REQUIRE(qd.covectors.size() == 1);
  CHECK(qd.covectors[0] == QVec{q(1, 2), q(1, 2), q(1, 2)});
  CHECK(newton_number(newton_diagram(qd)).nu == 1);
}

TEST_CASE("diagram input validation") {
  Ctx c = q2();
  CHECK_THROWS_AS(newton_diagram(Poly::zero(c)), MathError);
  CHECK_THROWS_AS(newton_diagram(CDiagram{c, {}}), MathError);
  CHECK_THROWS_AS(newton_diagram(CDiagram{c, {QVec{1, 0}}}), MathError);
  CHECK_THROWS_AS(newton_diagram(CDiagram{c, {QVec{1}}}), MathError);
  CHECK_THROWS_AS(natural_cdiagram(parse_poly("x*y", c)), MathError);      // not convenient
  CHECK_THROWS_AS(natural_cdiagram(parse_poly("1 + x + y", c)), MathError);
}
