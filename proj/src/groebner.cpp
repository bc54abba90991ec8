#include "newt/groebner.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>

namespace newt {

namespace {

mpq_class weighted_degree(const Monomial& m, const std::vector<mpq_class>& w) {
  mpq_class d = 0;
  for (size_t i = 0; i < m.e.size(); ++i) d += w[i] * m.e[i];
  return d;
}

// Lexicographic on exponent vectors, first differing entry decides.
int lex_cmp(const Monomial& a, const Monomial& b) {
  for (size_t i = 0; i < a.e.size(); ++i) {
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

bool TermOrder::greater(const Monomial& a, const Monomial& b) const {
  if (kind == Kind::Lex) return lex_cmp(a, b) > 0;
  int degs = 0;  // sign of deg(a) - deg(b)
  if (weights.empty()) {
    int da = a.degree(), db = b.degree();
    degs = (da > db) - (da < db);
  } else {
    mpq_class da = weighted_degree(a, weights), db = weighted_degree(b, weights);
    degs = cmp(da, db);
  }
  if (kind == Kind::LocalDegLex) {
    if (degs != 0) return degs < 0;
  } else {
    if (degs != 0) return degs > 0;
  }
  return lex_cmp(a, b) > 0;
}

namespace {

struct Term {
  Monomial m;
  Coef c;
};

// Terms sorted leading-first under the active order.
using VPoly = std::vector<Term>;

VPoly to_vpoly(const Poly& f, const TermOrder& ord) {
  VPoly v;
  v.reserve(f.terms().size());
  for (const auto& [m, c] : f.terms()) v.push_back({m, c});
  std::sort(v.begin(), v.end(),
            [&ord](const Term& a, const Term& b) { return ord.greater(a.m, b.m); });
  return v;
}

Poly to_poly(const VPoly& v, const Ctx& ctx) {
  Poly f(ctx);
  for (const auto& t : v) f.add_term(t.m, t.c);
  return f;
}

int max_degree(const VPoly& v) {
  int d = 0;
  for (const auto& t : v) d = std::max(d, t.m.degree());
  return d;
}

// r = f - c * x^g * h, merging the sorted term lists.
VPoly axpy(const VPoly& f, const Coef& c, const Monomial& g, const VPoly& h, const Field& k,
           const TermOrder& ord) {
  VPoly r;
  r.reserve(f.size() + h.size());
  size_t i = 0, j = 0;
  while (i < f.size() && j < h.size()) {
    Monomial hm = h[j].m * g;
    if (f[i].m == hm) {
      Coef nc = k.sub(f[i].c, k.mul(c, h[j].c));
      if (!Field::is_zero(nc)) r.push_back({f[i].m, nc});
      ++i, ++j;
    } else if (ord.greater(f[i].m, hm)) {
      r.push_back(f[i]);
      ++i;
    } else {
      r.push_back({std::move(hm), k.neg(k.mul(c, h[j].c))});
      ++j;
    }
  }
  for (; i < f.size(); ++i) r.push_back(f[i]);
  for (; j < h.size(); ++j) r.push_back({h[j].m * g, k.neg(k.mul(c, h[j].c))});
  return r;
}

// Multiply f by the positive rational that clears denominators and divides
// out the content, and return that scale. Coefficient control: applied after
// every reduction step so exact rationals grow additively, not
// multiplicatively. Residue fields need no control.
Coef primitive_scale(VPoly& f, const Field& k) {
  if (f.empty() || k.characteristic() != 0) return 1;
  mpz_class den = 1;
  for (const auto& t : f) den = lcm(den, t.c.get_den());
  mpz_class num = 0;
  for (const auto& t : f) num = gcd(num, t.c.get_num() * (den / t.c.get_den()));
  if (num == 0) return 1;
  mpq_class scale(den, num < 0 ? mpz_class(-num) : num);
  scale.canonicalize();
  for (auto& t : f) {
    t.c *= scale;
    t.c.canonicalize();
  }
  return scale;
}

// Clear denominators and divide by the content so coefficients stay small.
void make_primitive(VPoly& f, const Field& k) {
  primitive_scale(f, k);
  if (!f.empty() && f.front().c < 0)
    for (auto& t : f) t.c = -t.c;
}

void make_monic(VPoly& f, const Field& k) {
  if (f.empty()) return;
  Coef inv = k.inv(f.front().c);
  for (auto& t : f) t.c = k.mul(t.c, inv);
}

// Max total degree over the monomials outside the ideal spanned by `lms`
// in variables 0..nars-1, or -1 when none lie outside. Callers guarantee
// only finitely many do.
int height_rec(const std::vector<std::vector<int>>& lms, int nars) {
  for (const auto& g : lms) {
    bool constant = true;
    for (int i = 0; i < nars; ++i)
      if (g[i] != 0) constant = false;
    if (constant) return -1;
  }
  if (nars == 0) return 0;
  int best = -1;
  int v = nars - 1;
  for (int e = 0;; ++e) {
    std::vector<std::vector<int>> slice;
    for (const auto& g : lms)
      if (g[v] <= e) slice.push_back(g);
    int h = height_rec(slice, nars - 1);
    if (h < 0) break;
    best = std::max(best, e + h);
  }
  return best;
}

// Smallest D such that every monomial of total degree >= D is divisible by
// one of `lms`, or -1 when no such D exists (some variable has no pure
// power among the minimal generators' radicals, so the staircase is
// infinite). Any monomial of degree > the staircase height that escaped
// all of `lms` would itself be a staircase monomial, so D = height + 1.
int staircase_degree_bound(const std::vector<std::vector<int>>& lms, int n) {
  for (const auto& g : lms) {
    bool constant = true;
    for (int i = 0; i < n; ++i)
      if (g[i] != 0) constant = false;
    if (constant) return 0;
  }
  for (int i = 0; i < n; ++i) {
    bool pure = false;
    for (const auto& g : lms) {
      bool only_i = true;
      for (int j = 0; j < n; ++j)
        if (j != i && g[j] != 0) only_i = false;
      if (only_i && g[i] > 0) pure = true;
    }
    if (!pure) return -1;
  }
  return height_rec(lms, n) + 1;
}

struct Engine {
  Ctx ctx;
  TermOrder ord;
  Field k;
  std::vector<VPoly> G;
  // Once every monomial of total degree >= trunc lies in the span of the
  // current leading monomials, the ideal contains that power of the maximal
  // ideal outright, so the whole completion may run modulo it: terms of
  // degree >= trunc are dropped on sight. This is what stops local division
  // from chasing remainders into ever higher order. -1 means no bound known.
  int trunc = -1;

  explicit Engine(Ctx c, TermOrder o) : ctx(std::move(c)), ord(std::move(o)), k(ctx->field()) {}

  // Tighten trunc from the current leading monomials. Only meaningful for
  // local orders, where the basis elements stay honest generators: when the
  // bound first becomes finite nothing has been dropped yet, so the power of
  // the maximal ideal it certifies really is inside the ideal, and every
  // later drop only subtracts elements the certificate already covers.
  void refresh_trunc() {
    if (!ord.local()) return;
    std::vector<std::vector<int>> lms;
    lms.reserve(G.size());
    for (const auto& g : G)
      if (!g.empty()) lms.push_back(g.front().m.e);
    int b = staircase_degree_bound(lms, static_cast<int>(ctx->size()));
    if (b < 0) return;
    trunc = trunc < 0 ? b : std::min(trunc, b);
  }

  // Terms sit in ascending total degree under a local degree order, so the
  // disposable ones form a suffix.
  void drop_high_order(VPoly& h) const {
    if (trunc < 0) return;
    while (!h.empty() && h.back().m.degree() >= trunc) h.pop_back();
  }

  VPoly global_nf(VPoly h) const {
    VPoly out;
    Coef u = 1;  // h holds u times its true value
    while (!h.empty()) {
      u *= primitive_scale(h, k);
      u.canonicalize();
      bool reduced = false;
      for (const auto& g : G) {
        if (g.front().m.divides(h.front().m)) {
          Coef q = k.div(h.front().c, g.front().c);
          h = axpy(h, q, h.front().m.quotient(g.front().m), g, k, ord);
          reduced = true;
          break;
        }
      }
      if (!reduced) {
        out.push_back({h.front().m, k.div(h.front().c, u)});
        h.erase(h.begin());
      }
    }
    return out;
  }

  // Mora weak normal form: u * h = sum q_i g_i + r with u a unit. A reducer of
  // larger ecart pushes the current remainder into the reducer pool first,
  // which is what makes the local division terminate.
  VPoly mora_nf(VPoly h) const {
    std::deque<VPoly> extra;  // stable storage for intermediate reducers
    std::vector<std::pair<const VPoly*, int>> T;  // reducer with cached ecart
    T.reserve(G.size() + 16);
    auto ecart = [](const VPoly& f) { return max_degree(f) - f.front().m.degree(); };
    for (const auto& g : G) T.push_back({&g, ecart(g)});
    while (!h.empty()) {
      drop_high_order(h);
      if (h.empty()) break;
      make_primitive(h, k);  // weak normal forms are only defined up to a unit
      const VPoly* best = nullptr;
      int best_ecart = 0;
      for (const auto& [g, e] : T) {
        if (!g->front().m.divides(h.front().m)) continue;
        if (best == nullptr || e < best_ecart) {
          best = g;
          best_ecart = e;
        }
      }
      if (best == nullptr) break;
      int h_ecart = ecart(h);
      if (best_ecart > h_ecart) {
        extra.push_back(h);
        T.push_back({&extra.back(), h_ecart});
      }
      Coef q = k.div(h.front().c, best->front().c);
      h = axpy(h, q, h.front().m.quotient(best->front().m), *best, k, ord);
    }
    return h;
  }

  VPoly nf(VPoly h) const { return ord.local() ? mora_nf(std::move(h)) : global_nf(std::move(h)); }

  VPoly spoly(const VPoly& a, const VPoly& b) const {
    Monomial l = Monomial::lcm(a.front().m, b.front().m);
    VPoly s = axpy({}, k.neg(b.front().c), l.quotient(a.front().m), a, k, ord);
    return axpy(s, a.front().c, l.quotient(b.front().m), b, k, ord);
  }

  void complete() {
    // Pair queue keyed by (lcm degree, lcm, i, j); treated pairs feed the
    // chain criterion.
    struct Pair {
      Monomial l;
      size_t i, j;
    };
    auto cmp = [this](const Pair& a, const Pair& b) {
      int da = a.l.degree(), db = b.l.degree();
      if (da != db) return da < db;
      int c = lex_cmp(a.l, b.l);
      if (c != 0) return c < 0;
      return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    };
    refresh_trunc();
    std::set<std::pair<size_t, size_t>> treated;
    std::vector<Pair> q;
    auto push_pairs = [&](size_t j) {
      for (size_t i = 0; i < j; ++i)
        q.push_back({Monomial::lcm(G[i].front().m, G[j].front().m), i, j});
      std::sort(q.begin(), q.end(), cmp);
    };
    for (size_t j = 1; j < G.size(); ++j)
      for (size_t i = 0; i < j; ++i)
        q.push_back({Monomial::lcm(G[i].front().m, G[j].front().m), i, j});
    std::sort(q.begin(), q.end(), cmp);
    while (!q.empty()) {
      Pair p = q.front();
      q.erase(q.begin());
      treated.insert({p.i, p.j});
      // Every term of the S-polynomial has degree >= the lcm's under a local
      // order, so past the truncation bound it reduces to nothing.
      if (trunc >= 0 && p.l.degree() >= trunc) continue;
      // Product criterion: coprime leading monomials.
      if (p.l == G[p.i].front().m * G[p.j].front().m) continue;
      // Chain criterion: some g_k divides the lcm and both side pairs are done.
      bool chained = false;
      for (size_t t = 0; t < G.size() && !chained; ++t) {
        if (t == p.i || t == p.j) continue;
        if (!G[t].front().m.divides(p.l)) continue;
        auto key = [](size_t a, size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
        if (treated.count(key(p.i, t)) && treated.count(key(p.j, t))) chained = true;
      }
      if (chained) continue;
      VPoly h = nf(spoly(G[p.i], G[p.j]));
      if (h.empty()) continue;
      make_primitive(h, k);
      G.push_back(std::move(h));
      refresh_trunc();
      push_pairs(G.size() - 1);
    }
  }

  void minimalize() {
    // Keep generators whose leading monomial no other kept one divides.
    std::vector<size_t> idx(G.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [this](size_t a, size_t b) {
      const Monomial &ma = G[a].front().m, &mb = G[b].front().m;
      if (!(ma == mb)) return ord.greater(mb, ma);
      return a < b;
    });
    std::vector<VPoly> kept;
    for (size_t i : idx) {
      bool divisible = false;
      for (const auto& g : kept)
        if (g.front().m.divides(G[i].front().m)) {
          divisible = true;
          break;
        }
      if (!divisible) kept.push_back(G[i]);
    }
    G = std::move(kept);
    if (!ord.local()) {
      // Tail-reduce to the unique reduced basis.
      for (size_t i = 0; i < G.size(); ++i) {
        VPoly lead = {G[i].front()};
        VPoly tail(G[i].begin() + 1, G[i].end());
        std::vector<VPoly> others;
        others.reserve(G.size() - 1);
        for (size_t j = 0; j < G.size(); ++j)
          if (j != i) others.push_back(G[j]);
        std::swap(G, others);
        VPoly r = global_nf(std::move(tail));
        std::swap(G, others);
        lead.insert(lead.end(), r.begin(), r.end());
        G[i] = std::move(lead);
      }
    }
    for (auto& g : G) make_monic(g, k);
  }
};

Engine make_engine(const std::vector<Poly>& gens, const TermOrder& order) {
  if (gens.empty()) throw MathError("gbasis: at least one generator required");
  Ctx ctx = gens.front().ctx();
  if (!order.weights.empty()) {
    if (order.local()) throw MathError("gbasis: weighted local orders not supported");
    if (order.weights.size() != static_cast<size_t>(ctx->size()))
      throw MathError("gbasis: weight vector length mismatch");
    for (const auto& w : order.weights)
      if (w <= 0) throw MathError("gbasis: weights must be positive");
  }
  Engine eng(ctx, order);
  for (const auto& f : gens) {
    if (!f.ctx()->same(*ctx)) throw MathError("gbasis: generators from different contexts");
    if (f.is_zero()) continue;
    VPoly v = to_vpoly(f, order);
    make_primitive(v, ctx->field());
    eng.G.push_back(std::move(v));
  }
  return eng;
}

bool contains_unit(const GBasis& b) {
  for (const auto& g : b.gens)
    if (!g.is_zero() && g.is_constant()) return true;
  return false;
}

}  // namespace

Monomial leading_monomial(const Poly& f, const TermOrder& order) {
  if (f.is_zero()) throw MathError("leading_monomial of zero");
  const Monomial* best = nullptr;
  for (const auto& [m, c] : f.terms())
    if (best == nullptr || order.greater(m, *best)) best = &m;
  return *best;
}

GBasis gbasis(const std::vector<Poly>& gens, const TermOrder& order) {
  Engine eng = make_engine(gens, order);
  eng.complete();
  eng.minimalize();
  GBasis out{eng.ctx, order, {}, !order.local()};
  out.gens.reserve(eng.G.size());
  for (const auto& g : eng.G) out.gens.push_back(to_poly(g, eng.ctx));
  return out;
}

Poly normal_form(const Poly& f, const GBasis& basis) {
  if (!f.ctx()->same(*basis.ctx)) throw MathError("normal_form: context mismatch");
  Engine eng(basis.ctx, basis.order);
  for (const auto& g : basis.gens) eng.G.push_back(to_vpoly(g, basis.order));
  return to_poly(eng.nf(to_vpoly(f, basis.order)), basis.ctx);
}

bool ideal_membership(const Poly& f, const GBasis& basis) {
  return normal_form(f, basis).is_zero();
}

std::vector<Poly> ideal_product(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  std::vector<Poly> out;
  out.reserve(a.size() * b.size());
  for (const auto& f : a)
    for (const auto& g : b) out.push_back(f * g);
  return out;
}

bool has_torus_zero(const std::vector<Poly>& gens, const std::vector<int>& nonvanishing) {
  if (gens.empty()) throw MathError("has_torus_zero: at least one polynomial required");
  Ctx ctx = gens.front().ctx();
  int n = static_cast<int>(ctx->size());
  for (int i : nonvanishing)
    if (i < 0 || i >= n) throw MathError("has_torus_zero: variable index out of range");
  std::string tname = ctx->fresh_name("t");
  Ctx big = extend(ctx, {tname});
  std::set<int> keep(nonvanishing.begin(), nonvanishing.end());
  std::map<int, Poly> kill;
  for (int i = 0; i < n; ++i)
    if (!keep.count(i)) kill.emplace(i, Poly::zero(big));
  std::vector<Poly> sys;
  for (const auto& f : gens) {
    Poly g = f.substitute(big, kill);
    if (!g.is_zero()) sys.push_back(g);
  }
  Poly prod = Poly::variable(big, big->index_of(tname));
  for (int i : keep) prod = prod * Poly::variable(big, big->index_of(ctx->name(i)));
  sys.push_back(prod - Poly::from_long(big, 1));
  return !contains_unit(gbasis(sys, TermOrder::deglex()));
}

namespace {

// Monomials outside the staircase generated by `lms` in variables 0..k-1
// (coordinates >= k already sliced away). Callers guarantee finiteness.
long count_rec(const std::vector<std::vector<int>>& lms, int nars) {
  for (const auto& g : lms) {
    bool constant = true;
    for (int i = 0; i < nars; ++i)
      if (g[i] != 0) constant = false;
    if (constant) return 0;
  }
  if (nars == 0) return 1;
  long total = 0;
  int v = nars - 1;
  for (int e = 0;; ++e) {
    std::vector<std::vector<int>> slice;
    for (const auto& g : lms)
      if (g[v] <= e) slice.push_back(g);
    long c = count_rec(slice, nars - 1);
    if (c == 0) break;
    total += c;
  }
  return total;
}

}  // namespace

std::optional<long> quotient_dim(const GBasis& basis) {
  int n = basis.ctx->size();
  std::vector<std::vector<int>> lms;
  for (const auto& g : basis.gens) {
    if (g.is_zero()) continue;
    Monomial m = leading_monomial(g, basis.order);
    if (m.is_constant()) return 0;
    lms.push_back(m.e);
  }
  for (int i = 0; i < n; ++i) {
    bool pure = false;
    for (const auto& g : lms) {
      bool only_i = true;
      for (int j = 0; j < n; ++j)
        if (j != i && g[j] != 0) only_i = false;
      if (only_i && g[i] > 0) pure = true;
    }
    if (!pure) return std::nullopt;
  }
  return count_rec(lms, n);
}

std::optional<long> local_colength(const std::vector<Poly>& gens) {
  bool all_zero = true;
  for (const auto& f : gens)
    if (!f.is_zero()) all_zero = false;
  if (gens.empty() || all_zero) return std::nullopt;
  return quotient_dim(gbasis(gens, TermOrder::local_deglex()));
}

SamuelResult samuel_multiplicity(const std::vector<Poly>& gens, unsigned seed, int trials) {
  if (gens.empty()) throw MathError("samuel_multiplicity: at least one generator required");
  if (trials < 1) throw MathError("samuel_multiplicity: trials must be positive");
  Ctx ctx = gens.front().ctx();
  const Field& k = ctx->field();
  if (!local_colength(gens).has_value())
    throw MathError("samuel_multiplicity: ideal does not have finite colength");
  int n = ctx->size();
  std::mt19937 rng(seed);
  auto coef = [&]() -> long {
    if (k.characteristic() == 0) return 1 + static_cast<long>(rng() % 101);
    return static_cast<long>(rng() % static_cast<unsigned long>(k.characteristic()));
  };
  std::optional<long> best;
  int hits = 0, run = 0;
  int budget = trials;
  while (run < budget) {
    std::vector<Poly> combo;
    combo.reserve(n);
    for (int i = 0; i < n; ++i) {
      Poly g = Poly::zero(ctx);
      for (const auto& f : gens) g = g + f.scaled(k.from_long(coef()));
      combo.push_back(std::move(g));
    }
    ++run;
    auto len = local_colength(combo);
    if (!len.has_value()) continue;
    if (!best.has_value() || *len < *best) {
      best = len;
      hits = 1;
    } else if (*len == *best) {
      ++hits;
    }
    // A minimum seen only once at the end of the budget gets one more round
    // of confirmation trials.
    if (run == budget && hits < 2 && budget == trials) budget += trials;
  }
  if (!best.has_value())
    throw MathError("samuel_multiplicity: no trial produced a finite colength");
  return {*best, run, hits};
}

}  // namespace newt
