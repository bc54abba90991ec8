#include "newt/stabilize.hpp"

#include <algorithm>

namespace newt {

namespace {

Poly lift(const Poly& p, const Ctx& target) { return p.rename_into(target); }

// Exact division by the variable with index i; every term must contain it.
Poly divide_by_variable(const Poly& p, int i) {
  Poly out(p.ctx());
  for (const auto& [m, c] : p.terms()) {
    if (m.e[i] < 1) throw MathError("term not divisible by the certificate variable");
    Monomial q = m;
    q.e[i] -= 1;
    out.add_term(q, c);
  }
  return out;
}

}  // namespace

// One application of the trick to cur = g + m*phi^k, introducing a fresh
// pair named after the given bases.
StabStep trick_step(const Poly& cur, const Decomposition& d, const std::string& ubase,
                    const std::string& vbase) {
  if (!d.g.ctx()->same(*cur.ctx()) || !d.m.ctx()->same(*cur.ctx()) ||
      !d.phi.ctx()->same(*cur.ctx()))
    throw MathError("decomposition parts live in a different context than the input");
  if (d.k < 1) throw MathError("the trick needs k >= 1");
  if (cur != d.g + d.m * d.phi.pow(d.k))
    throw MathError("decomposition does not recompose the input");
  std::string un = cur.ctx()->fresh_name(ubase);
  std::string vn = cur.ctx()->fresh_name(vbase);
  Ctx ext = extend(cur.ctx(), {un, vn});
  int iu = ext->index_of(un), iv = ext->index_of(vn);
  Poly U = Poly::variable(ext, iu), V = Poly::variable(ext, iv);
  Poly m = lift(d.m, ext), phi = lift(d.phi, ext), g = lift(d.g, ext);
  Poly out = -(U * V) + U * phi + m * V.pow(d.k) + g;
  return StabStep{StepRule::BasicTrick, cur, out, {iu, iv}, m, phi, d.k, iu, iv, {}};
}

namespace {

// Lexicographic exponent comparison, earlier variable wins.
bool lex_greater(const Monomial& a, const Monomial& b) {
  for (size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
  return false;
}

void require_linear(const Poly& l, const char* what) {
  if (l.is_zero() || l.total_degree() != 1 || l.order() != 1)
    throw MathError(std::string(what) + " must be a homogeneous linear form");
}

void require_quadratic(const Poly& q, const char* what) {
  if (q.is_zero() || q.total_degree() != 2 || q.order() != 2)
    throw MathError(std::string(what) + " must be a homogeneous quadratic form");
}

void require_three_vars(const Poly& p) {
  if (p.nvars() != 3) throw MathError("curve builders expect three base variables");
}

// A coordinate change is accepted as visibly invertible when it is a shear
// (each substituted variable maps to c*x_i + h with c != 0 and h free of
// every substituted variable) or when all images are homogeneous linear and
// the full variable matrix is nonsingular.
bool invertible_subst(const Ctx& cc, const std::map<int, Poly>& subst) {
  const Field& k = cc->field();
  bool shear = true;
  for (const auto& [i, p] : subst) {
    Monomial xi(cc->size());
    xi.e[i] = 1;
    Coef c = p.coef(xi);
    if (Field::is_zero(c)) {
      shear = false;
      break;
    }
    Poly h = p - Poly::term(cc, xi, c);
    for (const auto& [m, hc] : h.terms()) {
      (void)hc;
      for (const auto& [j, q] : subst) {
        (void)q;
        if (m.e[j] != 0) shear = false;
      }
    }
    if (!shear) break;
  }
  if (shear) return true;
  size_t n = cc->size();
  std::vector<std::vector<Coef>> M(n, std::vector<Coef>(n, Coef(0)));
  for (size_t i = 0; i < n; ++i) {
    auto it = subst.find(static_cast<int>(i));
    if (it == subst.end()) {
      M[i][i] = 1;
      continue;
    }
    const Poly& p = it->second;
    if (p.is_zero() || p.total_degree() != 1 || p.order() != 1) return false;
    for (const auto& [m, c] : p.terms()) M[i][m.support_vars()[0]] = c;
  }
  size_t row = 0;
  for (size_t col = 0; col < n && row < n; ++col) {
    size_t piv = row;
    while (piv < n && Field::is_zero(M[piv][col])) ++piv;
    if (piv == n) return false;  // square matrix: any skipped column kills invertibility
    std::swap(M[piv], M[row]);
    for (size_t r = row + 1; r < n; ++r) {
      if (Field::is_zero(M[r][col])) continue;
      Coef f = k.div(M[r][col], M[row][col]);
      for (size_t t = col; t < n; ++t) M[r][t] = k.sub(M[r][t], k.mul(f, M[row][t]));
    }
    ++row;
  }
  return row == n;
}

}  // namespace

std::optional<Decomposition> find_decomposition(const Poly& f, const Poly& phi, unsigned k) {
  if (phi.is_zero() || k < 1 || f.is_zero()) return std::nullopt;
  if (!phi.ctx()->same(*f.ctx())) throw MathError("phi lives in a different context than f");
  const Field& fd = f.field();
  Poly P = phi.pow(k);
  const auto& anchor = *P.terms().begin();
  for (const auto& [mt, ct] : f.terms()) {
    if (!anchor.first.divides(mt)) continue;
    Monomial q = mt.quotient(anchor.first);
    Poly m = Poly::term(f.ctx(), q, fd.div(ct, anchor.second));
    Poly prod = m * P;
    bool subsum = true;
    for (const auto& [pm, pc] : prod.terms())
      if (f.coef(pm) != pc) {
        subsum = false;
        break;
      }
    if (subsum) return Decomposition{f - prod, m, phi, k};
  }
  return std::nullopt;
}

std::pair<Poly, StabTrace> basic_trick(const Poly& f, const Decomposition& d) {
  StabStep s = trick_step(f, d, "u", "v");
  Poly out = s.output;
  return {out, StabTrace{f, out, {std::move(s)}}};
}

std::pair<Poly, StabTrace> square_case(const Poly& f, const Poly& g, const Poly& phi) {
  const Field& k = f.field();
  if (k.characteristic() == 2)
    throw MathError("the square case needs 1/4, unavailable in characteristic 2");
  if (!g.ctx()->same(*f.ctx()) || !phi.ctx()->same(*f.ctx()))
    throw MathError("decomposition parts live in a different context than the input");
  if (f != g + phi.pow(2)) throw MathError("decomposition does not recompose the input");
  std::string un = f.ctx()->fresh_name("u");
  Ctx ext = extend(f.ctx(), {un});
  int iu = ext->index_of(un);
  Poly U = Poly::variable(ext, iu);
  Poly quarter = Poly::constant(ext, k.div(k.from_long(-1), k.from_long(4)));
  Poly out = quarter * U.pow(2) + U * lift(phi, ext) + lift(g, ext);
  StabStep s{StepRule::SquareCase, f,  out, {iu}, Poly::zero(ext),
             lift(phi, ext),       2u, iu,  -1,   {}};
  return {out, StabTrace{f, out, {std::move(s)}}};
}

std::pair<Poly, StabTrace> multi_term_trick(const Poly& f, const Poly& phi,
                                            const std::vector<TrickTerm>& terms, const Poly& g) {
  if (terms.empty()) throw MathError("the multi-term trick needs at least one term");
  Poly sum = g;
  for (const auto& t : terms) {
    if (t.k < 1) throw MathError("the trick needs k >= 1");
    sum = sum + t.m * phi.pow(t.k);
  }
  if (f != sum) throw MathError("decomposition does not recompose the input");

  std::vector<TrickTerm> high, low;
  for (const auto& t : terms) (t.k >= 2 ? high : low).push_back(t);
  if (high.empty()) {
    // All exponents are 1: a single combined application suffices.
    Poly m(f.ctx());
    for (const auto& t : low) m = m + t.m;
    return basic_trick(f, Decomposition{f - m * phi, m, phi, 1});
  }

  StabTrace tr{f, f, {}};
  Poly cur = f;
  std::vector<int> us;
  size_t r = high.size();
  for (size_t i = 0; i < r; ++i) {
    std::string ub = r == 1 ? "u" : "u" + std::to_string(i + 1);
    std::string vb = r == 1 ? "v" : "v" + std::to_string(i + 1);
    Poly mi = lift(high[i].m, cur.ctx()), ph = lift(phi, cur.ctx());
    Decomposition d{cur - mi * ph.pow(high[i].k), mi, ph, high[i].k};
    StabStep s = trick_step(cur, d, ub, vb);
    cur = s.output;
    us.push_back(s.u);
    tr.steps.push_back(std::move(s));
  }
  if (r >= 2) {
    // Chain shear: u_i -> u_i - u_{i-1} telescopes sum(u_i)*phi onto u_r.
    Ctx cc = cur.ctx();
    std::map<int, Poly> sh;
    for (size_t i = 1; i < r; ++i)
      sh.emplace(us[i], Poly::variable(cc, us[i]) - Poly::variable(cc, us[i - 1]));
    Poly next = cur.substitute(cc, sh);
    tr.steps.push_back(StabStep{StepRule::MultiTerm, cur, next, {}, Poly::zero(cc), Poly::zero(cc),
                                0u, -1, -1, std::move(sh)});
    cur = next;
  }
  if (!low.empty()) {
    // Exponent-1 terms ride along: u -> u - m_i turns m_i*phi into m_i*v.
    Ctx cc = cur.ctx();
    int carrier = us.back();
    Poly img = Poly::variable(cc, carrier);
    for (const auto& t : low) img = img - lift(t.m, cc);
    std::map<int, Poly> ab{{carrier, img}};
    Poly next = cur.substitute(cc, ab);
    tr.steps.push_back(StabStep{StepRule::MultiTerm, cur, next, {}, Poly::zero(cc), Poly::zero(cc),
                                0u, -1, -1, std::move(ab)});
    cur = next;
  }
  tr.output = cur;
  return {cur, tr};
}

std::pair<Poly, StabTrace> cubic_reduction(const Poly& f) {
  if (!Field::is_zero(f.coef(Monomial(f.nvars()))))
    throw MathError("germ must vanish at the origin");
  StabTrace tr{f, f, {}};
  Poly cur = f;
  int pair_no = 0;
  for (;;) {
    const Monomial* pick = nullptr;
    for (const auto& [m, c] : cur.terms()) {
      (void)c;
      if (m.degree() < 4) continue;
      if (pick == nullptr || lex_greater(m, *pick)) pick = &m;
    }
    if (pick == nullptr) break;
    Monomial alpha = *pick;
    Coef c = cur.coef(alpha);
    // Split alpha = beta + gamma with |beta| = floor(|alpha|/2), filling beta
    // from the earliest variables. Replacing c*x^beta * x^gamma by the k = 1
    // trick yields summands of degrees 2, |gamma|+1 and |beta|+1, all < |alpha|.
    int rem = alpha.degree() / 2;
    Monomial beta(cur.nvars());
    for (size_t i = 0; i < alpha.e.size() && rem > 0; ++i) {
      int take = std::min(alpha.e[i], rem);
      beta.e[i] = take;
      rem -= take;
    }
    Monomial gamma = alpha.quotient(beta);
    Poly m = Poly::term(cur.ctx(), beta, c);
    Poly phi = Poly::term(cur.ctx(), gamma, Coef(1));
    ++pair_no;
    Decomposition d{cur - m * phi, m, phi, 1};
    StabStep s = trick_step(cur, d, "u" + std::to_string(pair_no),
                                 "v" + std::to_string(pair_no));
    cur = s.output;
    tr.steps.push_back(std::move(s));
  }
  tr.output = cur;
  return {cur, tr};
}

VerifyReport verify_stable_equiv(const StabTrace& tr) {
  auto fail = [](int i, std::string why) {
    return VerifyReport{false, i, std::move(why)};
  };
  if (tr.steps.empty()) {
    if (tr.input == tr.output) return {};
    return fail(-1, "empty trace with different endpoints");
  }
  if (tr.input != tr.steps.front().input) return fail(0, "trace input differs from first step");
  if (tr.output != tr.steps.back().output)
    return fail(static_cast<int>(tr.steps.size()) - 1, "trace output differs from last step");
  for (size_t i = 0; i + 1 < tr.steps.size(); ++i)
    if (tr.steps[i].output != tr.steps[i + 1].input)
      return fail(static_cast<int>(i) + 1, "consecutive steps do not chain");
  for (size_t i = 0; i < tr.steps.size(); ++i) {
    const StabStep& s = tr.steps[i];
    const int idx = static_cast<int>(i);
    try {
      const Ctx& oc = s.output.ctx();
      switch (s.rule) {
        case StepRule::BasicTrick: {
          if (s.u < 0 || s.v < 0 || s.k < 1) return fail(idx, "malformed certificate payload");
          if (s.input.ctx()->index_of(oc->name(s.u)) >= 0 ||
              s.input.ctx()->index_of(oc->name(s.v)) >= 0)
            return fail(idx, "fresh variable collides with the input context");
          Poly U = Poly::variable(oc, s.u), V = Poly::variable(oc, s.v);
          Poly vp = V + s.phi;
          Poly q = divide_by_variable(vp.pow(s.k) - s.phi.pow(s.k), s.v);
          Poly R = s.output.substitute(oc, {{s.v, vp}});
          R = R.substitute(oc, {{s.u, U + s.m * q}});
          if (R != -(U * V) + lift(s.input, oc))
            return fail(idx, "certificate does not replay to -u*v plus the step input");
          break;
        }
        case StepRule::SquareCase: {
          if (s.u < 0) return fail(idx, "malformed certificate payload");
          if (s.input.ctx()->index_of(oc->name(s.u)) >= 0)
            return fail(idx, "fresh variable collides with the input context");
          const Field& k = oc->field();
          Poly U = Poly::variable(oc, s.u);
          Poly R = s.output.substitute(oc, {{s.u, U + Poly::from_long(oc, 2) * s.phi}});
          Poly quarter = Poly::constant(oc, k.div(k.from_long(-1), k.from_long(4)));
          if (R != quarter * U.pow(2) + lift(s.input, oc))
            return fail(idx, "certificate does not replay to -1/4*u^2 plus the step input");
          break;
        }
        case StepRule::Rename:
        case StepRule::MultiTerm: {
          if (!s.input.ctx()->same(*oc))
            return fail(idx, "coordinate change must stay in one context");
          if (!invertible_subst(oc, s.subst))
            return fail(idx, "coordinate change is not visibly invertible");
          if (s.input.substitute(oc, s.subst) != s.output)
            return fail(idx, "coordinate change does not map the step input to its output");
          break;
        }
      }
    } catch (const MathError& e) {
      return fail(idx, e.what());
    }
  }
  return {};
}

int quadratic_rank(const Poly& f) {
  const Field& k = f.field();
  if (k.characteristic() == 2)
    throw MathError("quadratic rank needs characteristic other than 2");
  size_t n = f.nvars();
  std::vector<std::vector<Coef>> M(n, std::vector<Coef>(n, Coef(0)));
  for (const auto& [m, c] : f.terms()) {
    if (m.degree() != 2) continue;
    auto sup = m.support_vars();
    if (sup.size() == 1) {
      M[sup[0]][sup[0]] = c;
    } else {
      Coef half = k.div(c, k.from_long(2));
      M[sup[0]][sup[1]] = half;
      M[sup[1]][sup[0]] = half;
    }
  }
  size_t row = 0;
  for (size_t col = 0; col < n && row < n; ++col) {
    size_t piv = row;
    while (piv < n && Field::is_zero(M[piv][col])) ++piv;
    if (piv == n) continue;
    std::swap(M[piv], M[row]);
    for (size_t r = row + 1; r < n; ++r) {
      if (Field::is_zero(M[r][col])) continue;
      Coef f2 = k.div(M[r][col], M[row][col]);
      for (size_t t = col; t < n; ++t) M[r][t] = k.sub(M[r][t], k.mul(f2, M[row][t]));
    }
    ++row;
  }
  return static_cast<int>(row);
}

StabExample cubic_one_node(const Poly& l1, const Poly& l2, const Poly& m1, const Poly& m2) {
  require_three_vars(l1);
  require_linear(l1, "l1");
  require_linear(l2, "l2");
  require_linear(m1, "m1");
  require_linear(m2, "m2");
  Poly f = l1 * m1.pow(2) + l2 * m2.pow(2);
  StabTrace tr{f, f, {}};
  Poly cur = f;
  {
    Decomposition d{cur - l1 * m1.pow(2), l1, m1, 2};
    StabStep s = trick_step(cur, d, "u1", "v1");
    cur = s.output;
    tr.steps.push_back(std::move(s));
  }
  {
    Poly l2l = lift(l2, cur.ctx()), m2l = lift(m2, cur.ctx());
    Decomposition d{cur - l2l * m2l.pow(2), l2l, m2l, 2};
    StabStep s = trick_step(cur, d, "u2", "v2");
    cur = s.output;
    tr.steps.push_back(std::move(s));
  }
  tr.output = cur;
  return {f, cur, tr};
}

StabExample cubic_three_nodes(const Poly& l1, const Poly& l2, const Poly& l3) {
  require_three_vars(l1);
  require_linear(l1, "l1");
  require_linear(l2, "l2");
  require_linear(l3, "l3");
  Poly f = l1 * l2 * l3;
  StabTrace tr{f, f, {}};
  Poly cur = f;
  {
    Decomposition d{Poly::zero(f.ctx()), l2 * l3, l1, 1};
    StabStep s = trick_step(cur, d, "u1", "v1");
    cur = s.output;
    tr.steps.push_back(std::move(s));
  }
  {
    Ctx cc = cur.ctx();
    Poly m = lift(l3, cc) * Poly::variable(cc, cc->index_of("v1"));
    Poly ph = lift(l2, cc);
    Decomposition d{cur - m * ph, m, ph, 1};
    StabStep s = trick_step(cur, d, "u2", "v2");
    cur = s.output;
    tr.steps.push_back(std::move(s));
  }
  tr.output = cur;
  return {f, cur, tr};
}

StabExample quartic_four_nodes(const Poly& q1, const Poly& q2) {
  require_three_vars(q1);
  require_quadratic(q1, "q1");
  require_quadratic(q2, "q2");
  Poly f = q1 * q2;
  auto [out, tr] = basic_trick(f, Decomposition{Poly::zero(f.ctx()), q2, q1, 1});
  return {f, out, tr};
}

StabExample quintic_four_nodes(const Poly& l1, const Poly& l2, const Poly& l3, const Poly& q1,
                               const Poly& q2) {
  require_three_vars(l1);
  require_linear(l1, "l1");
  require_linear(l2, "l2");
  require_linear(l3, "l3");
  require_quadratic(q1, "q1");
  require_quadratic(q2, "q2");
  Poly f = l1 * q1.pow(2) + l2 * (q1 + q2).pow(2) + l3 * q2.pow(2);
  StabTrace tr{f, f, {}};
  Poly cur = f;
  const Poly phis[3] = {q1, q1 + q2, q2};
  const Poly ms[3] = {l1, l2, l3};
  std::vector<int> us;
  for (int i = 0; i < 3; ++i) {
    Poly mi = lift(ms[i], cur.ctx()), ph = lift(phis[i], cur.ctx());
    Decomposition d{cur - mi * ph.pow(2), mi, ph, 2};
    StabStep s = trick_step(cur, d, "u" + std::to_string(i + 1), "v" + std::to_string(i + 1));
    cur = s.output;
    us.push_back(s.u);
    tr.steps.push_back(std::move(s));
  }
  // The middle phi is the sum of the outer two, so shearing the outer u's by
  // the middle one leaves only u1*q1 + u3*q2.
  Ctx cc = cur.ctx();
  std::map<int, Poly> sh;
  sh.emplace(us[0], Poly::variable(cc, us[0]) - Poly::variable(cc, us[1]));
  sh.emplace(us[2], Poly::variable(cc, us[2]) - Poly::variable(cc, us[1]));
  Poly next = cur.substitute(cc, sh);
  tr.steps.push_back(StabStep{StepRule::Rename, cur, next, {}, Poly::zero(cc), Poly::zero(cc), 0u,
                              -1, -1, std::move(sh)});
  cur = next;
  tr.output = cur;
  return {f, cur, tr};
}

StabExample le_yomdin(const Poly& fd_stabilized, const Poly& l, unsigned k) {
  require_linear(l, "l");
  if (k < 1) throw MathError("the trick needs k >= 1");
  Poly f = fd_stabilized + l.pow(k);
  auto [out, tr] =
      basic_trick(f, Decomposition{fd_stabilized, Poly::constant(f.ctx(), Coef(1)), l, k});
  return {f, out, tr};
}

}  // namespace newt
