#include "newt/ndeg.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace newt {

namespace {

std::vector<int> all_vars(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// x_i * df/dx_i for every variable.
std::vector<Poly> toric_jacobian(const Poly& f) {
  int n = static_cast<int>(f.nvars());
  std::vector<Poly> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(Poly::variable(f.ctx(), i) * f.partial(i));
  return out;
}

std::vector<Poly> jacobian(const Poly& f) {
  int n = static_cast<int>(f.nvars());
  std::vector<Poly> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(f.partial(i));
  return out;
}

}  // namespace

NdegReport is_nondegenerate(const Poly& f) {
  if (f.is_zero()) throw MathError("the zero germ has no diagram");
  NewtonDiagram d = newton_diagram(f);
  int n = static_cast<int>(f.nvars());
  std::vector<int> all = all_vars(n);
  NdegReport rep{NdegMode::Kouchnirenko, true, {}};
  for (size_t id = 0; id < d.faces.size(); ++id) {
    const DFace& face = d.faces[id];
    Poly fd = face_poly(f, d, face);
    bool passed = !has_torus_zero(toric_jacobian(fd), all);
    if (f.field().characteristic() == 0 &&
        passed != !has_torus_zero(jacobian(fd), all))
      throw MathError("internal: the two jacobian forms disagree on the torus");
    rep.per_face.push_back({static_cast<int>(id), face.pts, face.dim, all, passed});
    rep.verdict = rep.verdict && passed;
  }
  return rep;
}

NdegReport is_weakly_nondegenerate(const Poly& f) {
  if (f.is_zero()) throw MathError("the zero germ has no diagram");
  NewtonDiagram d = newton_diagram(f);
  int n = static_cast<int>(f.nvars());
  std::vector<int> all = all_vars(n);
  NdegReport rep{NdegMode::Weak, true, {}};
  for (size_t id = 0; id < d.faces.size(); ++id) {
    const DFace& face = d.faces[id];
    bool maximal = true;
    for (const DFace& other : d.faces)
      if (other.pts != face.pts &&
          std::includes(other.pts.begin(), other.pts.end(), face.pts.begin(), face.pts.end()))
        maximal = false;
    if (!maximal) continue;
    Poly fd = face_poly(f, d, face);
    std::vector<Poly> sys = jacobian(fd);
    sys.insert(sys.begin(), fd);
    bool passed = !has_torus_zero(sys, all);
    rep.per_face.push_back({static_cast<int>(id), face.pts, face.dim, all, passed});
    rep.verdict = rep.verdict && passed;
  }
  return rep;
}

NdegReport is_inner_nondegenerate(const Poly& f, const CDiagram& gamma) {
  if (f.is_zero()) throw MathError("the zero germ has no diagram");
  int n = static_cast<int>(f.nvars());
  if (n > 16) throw MathError("inner non-degeneracy limited to 16 variables");
  for (const auto& [m, c] : f.terms()) {
    (void)c;
    for (const QVec& w : gamma.covectors) {
      mpq_class v = 0;
      for (int i = 0; i < n; ++i) v += w[i] * m.e[i];
      if (v < 1) throw MathError("support lies outside the diagram region");
    }
  }
  NewtonDiagram d = newton_diagram(gamma);
  NdegReport rep{NdegMode::Inner, true, {}};
  for (size_t id = 0; id < d.faces.size(); ++id) {
    const DFace& face = d.faces[id];
    if (!face.inner) continue;
    std::vector<Poly> sys = jacobian(face_poly(f, d, face));
    // Supports of the face's vertices, as bitmasks; the face meets the
    // coordinate subspace of I exactly when one of them is contained in I.
    std::vector<unsigned> vmasks;
    for (int p : face.vertex_pts) {
      unsigned m = 0;
      for (int i = 0; i < n; ++i)
        if (d.pts[p][i] != 0) m |= 1u << i;
      vmasks.push_back(m);
    }
    for (unsigned I = 1; I < (1u << n); ++I) {
      bool meets = false;
      for (unsigned m : vmasks) meets = meets || (m & ~I) == 0;
      if (!meets) continue;
      std::vector<int> nv;
      for (int i = 0; i < n; ++i)
        if (I & (1u << i)) nv.push_back(i);
      bool passed = !has_torus_zero(sys, nv);
      rep.per_face.push_back({static_cast<int>(id), face.pts, face.dim, nv, passed});
      rep.verdict = rep.verdict && passed;
    }
  }
  return rep;
}

BiviaResult bivia_test(const Poly& f, unsigned seed, int trials) {
  if (f.is_zero()) throw MathError("the zero germ has no diagram");
  std::vector<Poly> gens = toric_jacobian(f);
  SamuelResult s = samuel_multiplicity(gens, seed, trials);
  NuReport r = newton_number(newton_diagram(f));
  int n = static_cast<int>(f.nvars());
  mpq_class fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  mpq_class vol = fact * r.V[n];
  return {mpq_class(s.multiplicity) == vol, s.multiplicity, vol, s};
}

Poly generic_for_diagram(const NewtonDiagram& d, CoefScheme scheme, unsigned seed) {
  if (!d.from_polynomial) throw MathError("generic members need a lattice diagram");
  std::set<int> on;
  for (const DFace& face : d.faces) on.insert(face.pts.begin(), face.pts.end());
  const Field& k = d.ctx->field();
  long p = k.characteristic();
  std::mt19937 gen(seed);
  std::uniform_int_distribution<long> dist(1, p == 0 ? 101 : p - 1);
  Poly out(d.ctx);
  long i = 0;
  for (int pt : on) {
    Coef c;
    switch (scheme) {
      case CoefScheme::Ones: c = 1; break;
      case CoefScheme::Counting: c = p == 0 ? i + 1 : i % (p - 1) + 1; break;
      case CoefScheme::SeededRandom: c = dist(gen); break;
    }
    out.add_term(d.support[pt], c);
    ++i;
  }
  return out;
}

}  // namespace newt
