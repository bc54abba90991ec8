#include "newt/milnor.hpp"

#include <algorithm>
#include <map>

namespace newt {

namespace {

void check_germ(const Poly& f) {
  if (f.is_zero()) throw MathError("the zero germ has no Milnor number");
  if (f.coef(Monomial(f.nvars())) != 0) throw MathError("germ must vanish at the origin");
}

std::vector<Poly> jacobian(const Poly& f) {
  std::vector<Poly> out;
  for (size_t i = 0; i < f.nvars(); ++i) out.push_back(f.partial(static_cast<int>(i)));
  return out;
}

// Monomials of total degree <= cap, in storage order.
std::vector<Monomial> monomials_below(const Ctx& c, int cap) {
  std::vector<Monomial> out;
  Monomial m(c->size());
  auto rec = [&](auto&& self, size_t var, int left) -> void {
    if (var == c->size()) {
      out.push_back(m);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      m.e[var] = e;
      self(self, var + 1, left - e);
    }
    m.e[var] = 0;
  };
  rec(rec, 0, cap);
  std::sort(out.begin(), out.end(), deglex_less);
  return out;
}

}  // namespace

MuResult milnor_number(const Poly& f) {
  check_germ(f);
  std::vector<Poly> gens = jacobian(f);
  bool any = false;
  for (const Poly& g : gens) any = any || !g.is_zero();
  if (!any) return {std::nullopt, {}};
  GBasis gb = gbasis(gens, TermOrder::local_deglex());
  MuResult r;
  r.mu = quotient_dim(gb);
  for (const Poly& g : gb.gens) r.staircase.push_back(leading_monomial(g, gb.order));
  return r;
}

std::optional<long> truncation_oracle_mu(const Poly& f, int start_order, int cap) {
  check_germ(f);
  const Field& k = f.field();
  std::vector<Poly> gens;
  for (const Poly& g : jacobian(f))
    if (!g.is_zero()) gens.push_back(g);
  if (gens.empty()) return std::nullopt;

  for (int N = std::max(start_order, 1); N <= cap; ++N) {
    // Columns: monomials of degree <= N; the row space is the image of the
    // jacobian ideal in the quotient by the (N+1)-st power of the maximal
    // ideal. Rows are kept sparse — a product monomial*partial touches only
    // a handful of columns — and over Q the content is stripped after every
    // merge so entries grow additively.
    std::vector<Monomial> cols = monomials_below(f.ctx(), N);
    std::map<std::vector<int>, int> col_of;
    for (size_t i = 0; i < cols.size(); ++i) col_of[cols[i].e] = static_cast<int>(i);

    using SRow = std::vector<std::pair<int, Coef>>;  // sorted by column
    std::vector<SRow> rows;                          // primitivized pivot rows
    std::vector<int> pivot_of_col(cols.size(), -1);

    auto strip_content = [&](SRow& row) {
      if (k.characteristic() != 0 || row.empty()) return;
      mpz_class den = 1;
      for (const auto& e : row) den = lcm(den, e.second.get_den());
      mpz_class num = 0;
      for (const auto& e : row) num = gcd(num, e.second.get_num() * (den / e.second.get_den()));
      if (num == 0) return;
      mpq_class scale(den, num < 0 ? mpz_class(-num) : num);
      scale.canonicalize();
      for (auto& e : row) {
        e.second *= scale;
        e.second.canonicalize();
      }
    };

    // row -= (lead coef ratio) * piv, cancelling the shared leading column.
    auto merge_against = [&](SRow& row, const SRow& piv) {
      Coef s = k.div(row.front().second, piv.front().second);
      SRow out;
      out.reserve(row.size() + piv.size());
      size_t i = 0, j = 0;
      while (i < row.size() && j < piv.size()) {
        if (row[i].first == piv[j].first) {
          Coef c = k.sub(row[i].second, k.mul(s, piv[j].second));
          if (!Field::is_zero(c)) out.emplace_back(row[i].first, std::move(c));
          ++i, ++j;
        } else if (row[i].first < piv[j].first) {
          out.push_back(std::move(row[i]));
          ++i;
        } else {
          out.emplace_back(piv[j].first, k.neg(k.mul(s, piv[j].second)));
          ++j;
        }
      }
      for (; i < row.size(); ++i) out.push_back(std::move(row[i]));
      for (; j < piv.size(); ++j) out.emplace_back(piv[j].first, k.neg(k.mul(s, piv[j].second)));
      row = std::move(out);
    };

    // Returns true when the row lies in the current row space; otherwise
    // installs it as a new pivot when asked to.
    auto reduces_to_zero = [&](SRow row, bool install) -> bool {
      while (!row.empty()) {
        int r = pivot_of_col[row.front().first];
        if (r < 0) {
          if (install) {
            strip_content(row);
            pivot_of_col[row.front().first] = static_cast<int>(rows.size());
            rows.push_back(std::move(row));
          }
          return false;
        }
        merge_against(row, rows[r]);
        strip_content(row);
      }
      return true;
    };

    for (const Poly& g : gens) {
      int ord = g.order();
      for (const Monomial& a : monomials_below(f.ctx(), N - ord)) {
        SRow row;
        for (const auto& [m, c] : g.terms()) {
          Monomial prod = a * m;
          if (prod.degree() > N) continue;
          row.emplace_back(col_of.at(prod.e), c);
        }
        std::sort(row.begin(), row.end(),
                  [](const auto& a2, const auto& b2) { return a2.first < b2.first; });
        reduces_to_zero(std::move(row), true);
      }
    }

    bool certified = true;
    for (const Monomial& m : cols) {
      if (m.degree() != N) continue;
      SRow unit{{col_of.at(m.e), Coef(1)}};
      certified = reduces_to_zero(std::move(unit), false);
      if (!certified) break;
    }
    if (certified) return static_cast<long>(cols.size()) - static_cast<long>(rows.size());
  }
  return std::nullopt;
}

MuNuReport mu_nu_report(const Poly& f) {
  MuResult m = milnor_number(f);
  NuReport nr = newton_number(newton_diagram(f));
  NdegReport nd = is_nondegenerate(f);
  MuNuReport rep;
  rep.mu = m.mu;
  rep.nu = nr.nu;
  rep.convenient = nr.convenient;
  rep.nondegenerate = nd.verdict;
  rep.consistent = true;
  if (rep.convenient && m.mu) {
    rep.consistent = mpq_class(*m.mu) >= nr.nu;
    if (nd.verdict) rep.consistent = rep.consistent && mpq_class(*m.mu) == nr.nu;
  }
  rep.equal_but_degenerate =
      rep.convenient && m.mu && mpq_class(*m.mu) == nr.nu && !nd.verdict;
  return rep;
}

}  // namespace newt
