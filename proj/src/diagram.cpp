#include "newt/diagram.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace newt {

namespace {

using ZVec = std::vector<mpz_class>;

mpz_class dotz(const ZVec& a, const ZVec& b) {
  mpz_class s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void gcd_reduce(ZVec& v) {
  mpz_class g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
}

// Exact Gauss-Jordan inverse; rows are the selected constraint rows.
std::vector<std::vector<mpq_class>> invert(const std::vector<ZVec>& rows) {
  size_t d = rows.size();
  std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(2 * d, 0));
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j) m[i][j] = mpq_class(rows[i][j]);
    m[i][d + i] = 1;
  }
  for (size_t col = 0; col < d; ++col) {
    size_t piv = col;
    while (piv < d && m[piv][col] == 0) ++piv;
    if (piv == d) throw MathError("internal: singular initial cone basis");
    std::swap(m[piv], m[col]);
    mpq_class lead = m[col][col];
    for (auto& x : m[col]) x /= lead;
    for (size_t r = 0; r < d; ++r) {
      if (r == col || m[r][col] == 0) continue;
      mpq_class f = m[r][col];
      for (size_t j = 0; j < 2 * d; ++j) m[r][j] -= f * m[col][j];
    }
  }
  std::vector<std::vector<mpq_class>> inv(d, std::vector<mpq_class>(d));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) inv[i][j] = m[i][d + j];
  return inv;
}

// Extreme rays of the pointed full-dimensional cone {y : row.y >= 0 for all
// rows} by double description, seeded from d independent rows (a simplicial
// relaxation) with the remaining constraints inserted one at a time. The
// adjacency of two rays is decided combinatorially from their common tight
// sets, which is valid because the ray list always holds exactly the extreme
// rays of the relaxation processed so far.
std::vector<ZVec> dd_rays(const std::vector<ZVec>& rows, const std::vector<int>& init) {
  size_t d = init.size();
  std::vector<ZVec> selected;
  for (int i : init) selected.push_back(rows[i]);
  auto inv = invert(selected);
  std::vector<ZVec> rays;
  for (size_t j = 0; j < d; ++j) {
    mpz_class den = 1;
    for (size_t i = 0; i < d; ++i) den = lcm(den, inv[i][j].get_den());
    ZVec r(d);
    for (size_t i = 0; i < d; ++i) r[i] = inv[i][j].get_num() * (den / inv[i][j].get_den());
    gcd_reduce(r);
    rays.push_back(std::move(r));
  }
  std::vector<int> processed(init.begin(), init.end());
  auto tight_set = [&](const ZVec& r) {
    std::vector<bool> z(processed.size());
    for (size_t i = 0; i < processed.size(); ++i) z[i] = dotz(rows[processed[i]], r) == 0;
    return z;
  };
  std::set<int> done(init.begin(), init.end());
  for (size_t h = 0; h < rows.size(); ++h) {
    if (done.count(static_cast<int>(h))) continue;
    std::vector<mpz_class> val(rays.size());
    bool any_neg = false;
    for (size_t i = 0; i < rays.size(); ++i) {
      val[i] = dotz(rows[h], rays[i]);
      if (val[i] < 0) any_neg = true;
    }
    processed.push_back(static_cast<int>(h));
    if (!any_neg) continue;
    std::vector<std::vector<bool>> tight(rays.size());
    for (size_t i = 0; i < rays.size(); ++i) tight[i] = tight_set(rays[i]);
    std::vector<ZVec> next;
    for (size_t i = 0; i < rays.size(); ++i)
      if (val[i] >= 0) next.push_back(rays[i]);
    for (size_t p = 0; p < rays.size(); ++p) {
      if (val[p] <= 0) continue;
      for (size_t m = 0; m < rays.size(); ++m) {
        if (val[m] >= 0) continue;
        // Common tight set of p and m; adjacent iff no third ray covers it.
        std::vector<bool> common(processed.size() - 1);
        for (size_t i = 0; i + 1 < processed.size(); ++i) common[i] = tight[p][i] && tight[m][i];
        bool adjacent = true;
        for (size_t t = 0; t < rays.size() && adjacent; ++t) {
          if (t == p || t == m) continue;
          bool covers = true;
          for (size_t i = 0; i + 1 < processed.size() && covers; ++i)
            if (common[i] && !tight[t][i]) covers = false;
          if (covers) adjacent = false;
        }
        if (!adjacent) continue;
        ZVec nr(rays[p].size());
        for (size_t i = 0; i < nr.size(); ++i) nr[i] = val[p] * rays[m][i] - val[m] * rays[p][i];
        gcd_reduce(nr);
        next.push_back(std::move(nr));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    rays = std::move(next);
  }
  return rays;
}

mpq_class dotq(const QVec& a, const QVec& b) {
  mpq_class s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Affine dimension of a point set.
int affine_dim(const std::vector<QVec>& pts, const std::vector<int>& idx) {
  if (idx.empty()) return -1;
  std::vector<QVec> diffs;
  for (size_t i = 1; i < idx.size(); ++i) {
    QVec d = pts[idx[i]];
    for (size_t j = 0; j < d.size(); ++j) d[j] -= pts[idx[0]][j];
    diffs.push_back(std::move(d));
  }
  // Gauss elimination rank.
  int rank = 0;
  size_t cols = pts[idx[0]].size();
  for (size_t col = 0; col < cols && rank < static_cast<int>(diffs.size()); ++col) {
    size_t piv = rank;
    while (piv < diffs.size() && diffs[piv][col] == 0) ++piv;
    if (piv == diffs.size()) continue;
    std::swap(diffs[piv], diffs[rank]);
    for (size_t r = rank + 1; r < diffs.size(); ++r) {
      if (diffs[r][col] == 0) continue;
      mpq_class f = diffs[r][col] / diffs[rank][col];
      for (size_t j = col; j < cols; ++j) diffs[r][j] -= f * diffs[rank][j];
    }
    ++rank;
  }
  return rank;
}

mpq_class det(std::vector<QVec> m) {
  size_t k = m.size();
  mpq_class d = 1;
  for (size_t col = 0; col < k; ++col) {
    size_t piv = col;
    while (piv < k && m[piv][col] == 0) ++piv;
    if (piv == k) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      d = -d;
    }
    d *= m[col][col];
    for (size_t r = col + 1; r < k; ++r) {
      if (m[r][col] == 0) continue;
      mpq_class f = m[r][col] / m[col][col];
      for (size_t j = col; j < k; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return d;
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

NewtonDiagram build_from_points(const Ctx& ctx, std::vector<QVec> pts,
                                std::vector<Monomial> support, bool from_poly) {
  int n = static_cast<int>(ctx->size());
  if (pts.empty()) throw MathError("empty point set has no Newton polyhedron");
  for (const auto& p : pts)
    for (const auto& x : p)
      if (x < 0) throw MathError("Newton polyhedron points must be nonnegative");

  NewtonDiagram d;
  d.ctx = ctx;
  d.pts = std::move(pts);
  d.support = std::move(support);
  d.from_polynomial = from_poly;

  // Polar side: {(a0, a) : a.p + a0 >= 0 for all points, a >= 0}. Extreme
  // rays with a != 0 are exactly the facet normals of the polyhedron.
  std::vector<ZVec> rows;
  for (int i = 0; i < n; ++i) {
    ZVec r(n + 1, 0);
    r[i + 1] = 1;
    rows.push_back(std::move(r));
  }
  std::vector<int> init;
  for (int i = 0; i < n; ++i) init.push_back(i);
  init.push_back(n);
  for (const auto& p : d.pts) {
    mpz_class den = 1;
    for (const auto& x : p) den = lcm(den, x.get_den());
    ZVec r(n + 1);
    r[0] = den;
    for (int i = 0; i < n; ++i) r[i + 1] = p[i].get_num() * (den / p[i].get_den());
    rows.push_back(std::move(r));
  }
  for (const auto& ray : dd_rays(rows, init)) {
    QVec normal(n);
    bool zero = true, strict = true;
    for (int i = 0; i < n; ++i) {
      normal[i] = mpq_class(ray[i + 1]);
      if (normal[i] != 0) zero = false;
      if (normal[i] == 0) strict = false;
    }
    if (zero) continue;
    Facet f;
    f.normal = std::move(normal);
    f.c = mpq_class(-ray[0]);
    f.compact = strict;
    bool tight = false;
    for (size_t i = 0; i < d.pts.size(); ++i) {
      mpq_class v = dotq(f.normal, d.pts[i]);
      if (v < f.c) throw MathError("internal: facet inequality violated");
      if (v == f.c) {
        f.pts_on.push_back(static_cast<int>(i));
        tight = true;
      }
    }
    if (!tight) throw MathError("internal: facet misses the polyhedron");
    d.facets.push_back(std::move(f));
  }
  std::sort(d.facets.begin(), d.facets.end(),
            [](const Facet& a, const Facet& b) { return a.normal < b.normal; });

  // Compact faces: the point sets of faces are the meets of facet point sets,
  // and a face is compact exactly when the total inward normal over all
  // facets through it is strictly positive (that sum is the witness).
  std::set<std::vector<int>> closed;
  for (const auto& f : d.facets) closed.insert(f.pts_on);
  std::vector<std::vector<int>> queue(closed.begin(), closed.end());
  while (!queue.empty()) {
    std::vector<int> s = std::move(queue.back());
    queue.pop_back();
    for (const auto& f : d.facets) {
      std::vector<int> meet = intersect_sorted(s, f.pts_on);
      if (!meet.empty() && closed.insert(meet).second) queue.push_back(std::move(meet));
    }
  }
  for (const auto& s : closed) {
    QVec witness(n, 0);
    mpq_class cw = 0;
    for (const auto& f : d.facets) {
      if (!std::includes(f.pts_on.begin(), f.pts_on.end(), s.begin(), s.end())) continue;
      for (int i = 0; i < n; ++i) witness[i] += f.normal[i];
      cw += f.c;
    }
    bool strict = true;
    for (const auto& w : witness)
      if (w <= 0) strict = false;
    if (!strict) continue;
    for (size_t i = 0; i < d.pts.size(); ++i) {
      mpq_class v = dotq(witness, d.pts[i]);
      bool member = std::binary_search(s.begin(), s.end(), static_cast<int>(i));
      if (member ? v != cw : v <= cw) throw MathError("internal: witness covector inconsistent");
    }
    DFace face;
    face.pts = s;
    face.dim = affine_dim(d.pts, s);
    face.witness = std::move(witness);
    for (int i = 0; i < n; ++i) {
      bool all_zero = true;
      for (int p : s)
        if (d.pts[p][i] != 0) all_zero = false;
      if (all_zero) face.vanishing.push_back(i);
    }
    face.inner = face.vanishing.empty();
    d.faces.push_back(std::move(face));
  }
  std::sort(d.faces.begin(), d.faces.end(), [](const DFace& a, const DFace& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.pts < b.pts;
  });
  for (const auto& f : d.faces)
    if (f.dim == 0) d.vertices.push_back(f.pts[0]);
  std::sort(d.vertices.begin(), d.vertices.end());
  for (auto& f : d.faces)
    f.vertex_pts = intersect_sorted(f.pts, d.vertices);

  for (int i = 0; i < n; ++i) {
    bool touches = false;
    for (const auto& p : d.pts) {
      bool on_axis = true;
      for (int j = 0; j < n; ++j)
        if (j != i && p[j] != 0) on_axis = false;
      if (on_axis) touches = true;
    }
    if (!touches) {
      d.convenient = false;
      return d;
    }
  }
  d.convenient = true;
  return d;
}

}  // namespace

const DFace* NewtonDiagram::face_by_pts(const std::vector<int>& p) const {
  for (const auto& f : faces)
    if (f.pts == p) return &f;
  return nullptr;
}

NewtonDiagram newton_diagram(const Poly& f) {
  if (f.is_zero()) throw MathError("the zero polynomial has no Newton polyhedron");
  std::vector<QVec> pts;
  std::vector<Monomial> support = f.support();
  for (const auto& m : support) {
    QVec p(m.e.size());
    for (size_t i = 0; i < m.e.size(); ++i) p[i] = m.e[i];
    pts.push_back(std::move(p));
  }
  return build_from_points(f.ctx(), std::move(pts), std::move(support), true);
}

NewtonDiagram newton_diagram(const CDiagram& cd) {
  int n = static_cast<int>(cd.ctx->size());
  if (cd.covectors.empty()) throw MathError("a diagram needs at least one covector");
  for (const auto& w : cd.covectors) {
    if (static_cast<int>(w.size()) != n) throw MathError("covector arity mismatch");
    for (const auto& x : w)
      if (x <= 0) throw MathError("covectors must be strictly positive");
  }
  // Vertex enumeration of {x >= 0 : w.x >= 1} via its homogenization
  // {(t, x) : t >= 0, x >= 0, w.x >= t}: rays with t > 0 are vertices x/t.
  std::vector<ZVec> rows;
  std::vector<int> init;
  for (int i = 0; i <= n; ++i) {
    ZVec r(n + 1, 0);
    r[i] = 1;
    rows.push_back(std::move(r));
    init.push_back(i);
  }
  for (const auto& w : cd.covectors) {
    mpz_class den = 1;
    for (const auto& x : w) den = lcm(den, x.get_den());
    ZVec r(n + 1);
    r[0] = -den;
    for (int i = 0; i < n; ++i) r[i + 1] = w[i].get_num() * (den / w[i].get_den());
    rows.push_back(std::move(r));
  }
  std::vector<QVec> vertices;
  for (const auto& ray : dd_rays(rows, init)) {
    if (ray[0] == 0) {
      int nonzero = 0;
      for (int i = 1; i <= n; ++i)
        if (ray[i] != 0) ++nonzero;
      if (nonzero != 1) throw MathError("internal: unexpected recession ray");
      continue;
    }
    QVec v(n);
    for (int i = 0; i < n; ++i) v[i] = mpq_class(ray[i + 1]) / mpq_class(ray[0]);
    vertices.push_back(std::move(v));
  }
  std::sort(vertices.begin(), vertices.end());
  NewtonDiagram d = build_from_points(cd.ctx, std::move(vertices), {}, false);
  if (!d.convenient) throw MathError("internal: covector diagram must be convenient");
  return d;
}

CDiagram natural_cdiagram(const Poly& f) {
  NewtonDiagram d = newton_diagram(f);
  for (const auto& m : d.support)
    if (m.is_constant()) throw MathError("germ must vanish at the origin");
  if (!d.convenient)
    throw MathError("only a convenient polynomial has a covector diagram");
  CDiagram cd;
  cd.ctx = f.ctx();
  for (const auto& facet : d.facets) {
    if (!facet.compact) continue;
    QVec w(facet.normal.size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = facet.normal[i] / facet.c;
    cd.covectors.push_back(std::move(w));
  }
  std::sort(cd.covectors.begin(), cd.covectors.end());
  if (cd.covectors.empty()) throw MathError("internal: no compact facet found");
  return cd;
}

Poly face_poly(const Poly& f, const NewtonDiagram& d, const DFace& face) {
  if (!f.ctx()->same(*d.ctx))
    throw MathError("face polynomial needs a matching variable context");
  size_t n = d.ctx->size();
  // The witness attains its minimum over the region exactly on the face, so
  // it selects the face terms of any polynomial supported inside the region.
  mpq_class target = 0;
  for (size_t i = 0; i < n; ++i) target += face.witness[i] * d.pts[face.pts[0]][i];
  Poly out(f.ctx());
  for (const auto& [m, c] : f.terms()) {
    for (const auto& fc : d.facets) {
      mpq_class v = -fc.c;
      for (size_t i = 0; i < n; ++i) v += fc.normal[i] * m.e[i];
      if (v < 0) throw MathError("support lies outside the diagram region");
    }
    mpq_class val = 0;
    for (size_t i = 0; i < n; ++i) val += face.witness[i] * m.e[i];
    if (val == target) out.add_term(m, c);
  }
  return out;
}

NuReport newton_number(const NewtonDiagram& d) {
  int n = static_cast<int>(d.ctx->size());
  if (n > 20) throw MathError("Newton number limited to 20 variables");
  NuReport rep;
  rep.convenient = d.convenient;
  rep.V.assign(n + 1, 0);
  rep.V[0] = 1;

  // Pulling triangulation of each face, memoized over the face lattice:
  // cone the lexicographically smallest vertex over the triangulated facets
  // that do not contain it.
  std::vector<std::vector<std::vector<int>>> tri(d.faces.size());
  std::vector<bool> have(d.faces.size(), false);
  auto pull = [&](auto&& self, size_t fi) -> const std::vector<std::vector<int>>& {
    if (have[fi]) return tri[fi];
    const DFace& f = d.faces[fi];
    if (f.dim == 0) {
      tri[fi] = {{f.pts[0]}};
    } else {
      int apex = f.vertex_pts[0];
      for (int v : f.vertex_pts)
        if (d.pts[v] < d.pts[apex]) apex = v;
      for (size_t gi = 0; gi < d.faces.size(); ++gi) {
        const DFace& g = d.faces[gi];
        if (g.dim != f.dim - 1) continue;
        if (!std::includes(f.pts.begin(), f.pts.end(), g.pts.begin(), g.pts.end())) continue;
        if (std::binary_search(g.pts.begin(), g.pts.end(), apex)) continue;
        for (const auto& s : self(self, gi)) {
          std::vector<int> simplex = s;
          simplex.push_back(apex);
          tri[fi].push_back(std::move(simplex));
        }
      }
    }
    have[fi] = true;
    return tri[fi];
  };

  std::vector<unsigned> mask(d.faces.size(), 0);
  for (size_t fi = 0; fi < d.faces.size(); ++fi)
    for (int p : d.faces[fi].pts)
      for (int i = 0; i < n; ++i)
        if (d.pts[p][i] != 0) mask[fi] |= 1u << i;

  std::vector<mpz_class> fact(n + 1);
  fact[0] = 1;
  for (int k = 1; k <= n; ++k) fact[k] = fact[k - 1] * k;

  for (unsigned I = 1; I < (1u << n); ++I) {
    int k = __builtin_popcount(I);
    std::vector<int> coords;
    for (int i = 0; i < n; ++i)
      if (I & (1u << i)) coords.push_back(i);
    mpq_class vol = 0;
    for (size_t fi = 0; fi < d.faces.size(); ++fi) {
      if (d.faces[fi].dim != k - 1) continue;
      if ((mask[fi] | I) != I) continue;
      for (const auto& simplex : pull(pull, fi)) {
        std::vector<QVec> m;
        for (int p : simplex) {
          QVec row(k);
          for (int j = 0; j < k; ++j) row[j] = d.pts[p][coords[j]];
          m.push_back(std::move(row));
        }
        mpq_class dv = det(std::move(m));
        vol += abs(dv) / mpq_class(fact[k]);
      }
    }
    rep.V[k] += vol;
    if (vol != 0) rep.subspaces.push_back({coords, vol});
  }

  rep.nu = 0;
  for (int k = 0; k <= n; ++k) {
    mpq_class term = mpq_class(fact[k]) * rep.V[k];
    rep.nu += ((n - k) % 2 == 0) ? term : -term;
  }
  rep.integral = rep.nu.get_den() == 1;
  if (d.from_polynomial && !rep.integral)
    throw MathError("internal: lattice Newton number must be an integer");
  return rep;
}

}  // namespace newt
