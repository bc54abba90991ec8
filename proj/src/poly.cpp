#include "newt/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace newt {

int Monomial::degree() const { return std::accumulate(e.begin(), e.end(), 0); }

bool Monomial::divides(const Monomial& m) const {
  if (e.size() != m.e.size()) return false;
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i] > m.e[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& m) const {
  Monomial r(*this);
  for (size_t i = 0; i < e.size(); ++i) r.e[i] += m.e[i];
  return r;
}

Monomial Monomial::quotient(const Monomial& m) const {
  Monomial r(*this);
  for (size_t i = 0; i < e.size(); ++i) {
    r.e[i] -= m.e[i];
    if (r.e[i] < 0) throw MathError("monomial quotient is not a monomial");
  }
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a);
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::max(a.e[i], b.e[i]);
  return r;
}

std::vector<int> Monomial::support_vars() const {
  std::vector<int> s;
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i] > 0) s.push_back(static_cast<int>(i));
  return s;
}

bool deglex_less(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.e < b.e;
}

Context::Context(std::vector<std::string> names, Field field)
    : names_(std::move(names)), field_(field) {}

Ctx Context::make(std::vector<std::string> names, Field field) {
  for (const auto& n : names) {
    if (n.empty()) throw MathError("empty variable name");
    if (!(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_'))
      throw MathError("invalid variable name: " + n);
    for (char c : n)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw MathError("invalid variable name: " + n);
  }
  auto sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw MathError("duplicate variable name in context");
  return Ctx(new Context(std::move(names), field));
}

int Context::index_of(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

std::string Context::fresh_name(const std::string& base) const {
  if (index_of(base) < 0) return base;
  for (int k = 2;; ++k) {
    std::string cand = base + "_" + std::to_string(k);
    if (index_of(cand) < 0) return cand;
  }
}

Ctx extend(const Ctx& c, const std::vector<std::string>& extra) {
  auto names = c->names();
  for (const auto& n : extra) {
    if (c->index_of(n) >= 0)
      throw MathError("context extension collides with existing variable " + n);
    names.push_back(n);
  }
  return Context::make(std::move(names), c->field());
}

Poly Poly::constant(const Ctx& c, const Coef& v) {
  Poly p(c);
  p.add_term(Monomial(c->size()), v);
  return p;
}

Poly Poly::from_long(const Ctx& c, long v) { return constant(c, c->field().from_long(v)); }

Poly Poly::variable(const Ctx& c, int i) {
  if (i < 0 || static_cast<size_t>(i) >= c->size()) throw MathError("variable index out of range");
  Monomial m(c->size());
  m.e[i] = 1;
  return term(c, m, Coef(1));
}

Poly Poly::term(const Ctx& c, const Monomial& m, const Coef& v) {
  Poly p(c);
  p.add_term(m, v);
  return p;
}

Coef Poly::coef(const Monomial& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Coef(0) : it->second;
}

bool Poly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_constant());
}

int Poly::total_degree() const {
  if (t_.empty()) return -1;
  return t_.rbegin()->first.degree();  // storage order is deglex ascending
}

int Poly::order() const {
  if (t_.empty()) return -1;
  return t_.begin()->first.degree();
}

std::vector<Monomial> Poly::support() const {
  std::vector<Monomial> s;
  s.reserve(t_.size());
  for (const auto& [m, c] : t_) s.push_back(m);
  return s;
}

void Poly::check_same_ctx(const Poly& g) const {
  if (!ctx_->same(*g.ctx_)) throw MathError("operands live in different contexts");
}

void Poly::add_term(const Monomial& m, const Coef& c) {
  if (m.e.size() != ctx_->size()) throw MathError("monomial arity mismatch");
  for (int x : m.e)
    if (x < 0) throw MathError("negative exponent");
  Coef v = ctx_->field().normalize(c);
  if (Field::is_zero(v)) return;
  auto [it, inserted] = t_.try_emplace(m, v);
  if (!inserted) {
    it->second = ctx_->field().add(it->second, v);
    if (Field::is_zero(it->second)) t_.erase(it);
  }
}

Poly Poly::operator+(const Poly& g) const {
  check_same_ctx(g);
  Poly r(*this);
  for (const auto& [m, c] : g.t_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& g) const {
  check_same_ctx(g);
  Poly r(*this);
  for (const auto& [m, c] : g.t_) r.add_term(m, ctx_->field().neg(c));
  return r;
}

Poly Poly::operator-() const {
  Poly r(ctx_);
  for (const auto& [m, c] : t_) r.t_.emplace(m, ctx_->field().neg(c));
  return r;
}

Poly Poly::scaled(const Coef& c) const {
  Poly r(ctx_);
  Coef v = ctx_->field().normalize(c);
  if (Field::is_zero(v)) return r;
  for (const auto& [m, a] : t_) {
    Coef p = ctx_->field().mul(a, v);
    if (!Field::is_zero(p)) r.t_.emplace(m, p);
  }
  return r;
}

Poly Poly::operator*(const Poly& g) const {
  check_same_ctx(g);
  Poly r(ctx_);
  for (const auto& [ma, ca] : t_)
    for (const auto& [mb, cb] : g.t_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly base(*this);
  Poly r = Poly::constant(ctx_, Coef(1));
  while (k > 0) {
    if (k & 1u) r = r * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return r;
}

Poly Poly::partial(int var) const {
  if (var < 0 || static_cast<size_t>(var) >= ctx_->size())
    throw MathError("variable index out of range");
  Poly r(ctx_);
  for (const auto& [m, c] : t_) {
    if (m.e[var] == 0) continue;
    Monomial d(m);
    d.e[var] -= 1;
    r.add_term(d, c * m.e[var]);  // exponent may vanish mod p; add_term normalizes
  }
  return r;
}

bool Poly::operator==(const Poly& g) const {
  return ctx_->same(*g.ctx_) && t_ == g.t_;
}

Poly Poly::substitute(const Ctx& target, const std::map<int, Poly>& images) const {
  std::vector<Poly> image_of;
  image_of.reserve(ctx_->size());
  for (size_t i = 0; i < ctx_->size(); ++i) {
    auto it = images.find(static_cast<int>(i));
    if (it != images.end()) {
      if (!it->second.ctx()->same(*target))
        throw MathError("substitution image lives outside the target context");
      image_of.push_back(it->second);
    } else {
      int j = target->index_of(ctx_->name(i));
      if (j < 0)
        throw MathError("variable " + ctx_->name(i) + " has no image in the target context");
      image_of.push_back(Poly::variable(target, j));
    }
  }
  // Per-variable power caches keep repeated exponents cheap.
  std::vector<std::vector<Poly>> powers(ctx_->size());
  auto power = [&](size_t i, int k) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Poly::constant(target, Coef(1)));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * image_of[i]);
    return cache[k];
  };
  Poly r(target);
  for (const auto& [m, c] : t_) {
    Poly termval = Poly::constant(target, c);
    for (size_t i = 0; i < ctx_->size(); ++i)
      if (m.e[i] > 0) termval = termval * power(i, m.e[i]);
    r = r + termval;
  }
  return r;
}

Poly Poly::substitute_names(const Ctx& target, const std::map<std::string, Poly>& images) const {
  std::map<int, Poly> byindex;
  for (const auto& [name, img] : images) {
    int i = ctx_->index_of(name);
    if (i < 0) throw MathError("substituted variable " + name + " not in context");
    byindex.emplace(i, img);
  }
  return substitute(target, byindex);
}

Poly Poly::rename_into(const Ctx& target) const {
  std::vector<int> where(ctx_->size(), -1);
  for (size_t i = 0; i < ctx_->size(); ++i) where[i] = target->index_of(ctx_->name(i));
  if (ctx_->field() != target->field()) throw MathError("field mismatch in context change");
  Poly r(target);
  for (const auto& [m, c] : t_) {
    Monomial mm(target->size());
    for (size_t i = 0; i < ctx_->size(); ++i) {
      if (m.e[i] == 0) continue;
      if (where[i] < 0)
        throw MathError("variable " + ctx_->name(i) + " not present in the target context");
      mm.e[where[i]] = m.e[i];
    }
    r.add_term(mm, c);
  }
  return r;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Print leading terms first.
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const Monomial& m = it->first;
    Coef c = it->second;
    bool negative = sgn(c) < 0;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    Coef a = negative ? Coef(-c) : c;
    std::string mono;
    for (size_t i = 0; i < m.e.size(); ++i) {
      if (m.e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ctx_->name(i);
      if (m.e[i] > 1) mono += "^" + std::to_string(m.e[i]);
    }
    if (mono.empty()) {
      out << coef_to_string(a);
    } else if (a == 1) {
      out << mono;
    } else {
      out << coef_to_string(a) << "*" << mono;
    }
  }
  return out.str();
}

WeightedDegreeData weighted_degree_data(const Poly& f, const std::vector<mpq_class>& w) {
  if (f.is_zero()) throw MathError("weighted degree of the zero polynomial");
  if (w.size() != f.nvars()) throw MathError("weight vector arity mismatch");
  for (const auto& wi : w)
    if (sgn(wi) <= 0) throw MathError("weights must be strictly positive");
  WeightedDegreeData out;
  bool have = false;
  for (const auto& [m, c] : f.terms()) {
    mpq_class v = 0;
    for (size_t i = 0; i < w.size(); ++i) v += w[i] * m.e[i];
    if (!have || v < out.min_value) {
      out.min_value = v;
      out.argmin.clear();
      have = true;
    }
    if (v == out.min_value) out.argmin.push_back(m);
  }
  out.quasi_homogeneous = out.argmin.size() == f.term_count();
  return out;
}

}  // namespace newt
