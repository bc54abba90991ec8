#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "newt/field.hpp"

namespace newt {

// Exponent vector relative to a fixed variable context. Entries are >= 0.
struct Monomial {
  std::vector<int> e;

  Monomial() = default;
  explicit Monomial(size_t n) : e(n, 0) {}
  explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}

  int degree() const;
  bool is_constant() const { return degree() == 0; }
  bool divides(const Monomial& m) const;
  Monomial operator*(const Monomial& m) const;
  Monomial quotient(const Monomial& m) const;  // this / m, requires m.divides(*this)
  static Monomial lcm(const Monomial& a, const Monomial& b);
  // Variable indices with nonzero exponent.
  std::vector<int> support_vars() const;

  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator!=(const Monomial& o) const { return e != o.e; }
};

// Degree first, ties by lexicographic comparison of exponent vectors
// (earlier variable wins). Also the storage order of Poly.
bool deglex_less(const Monomial& a, const Monomial& b);

struct DegLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return deglex_less(a, b); }
};

class Context;
using Ctx = std::shared_ptr<const Context>;

// Immutable variable list plus coefficient field. Polynomials interoperate
// only when their contexts agree (same names, same order, same field).
class Context {
 public:
  static Ctx make(std::vector<std::string> names, Field field);

  const std::vector<std::string>& names() const { return names_; }
  const Field& field() const { return field_; }
  size_t size() const { return names_.size(); }
  const std::string& name(int i) const { return names_[i]; }
  int index_of(const std::string& name) const;  // -1 when absent
  bool same(const Context& o) const { return names_ == o.names_ && field_ == o.field_; }
  // base if unused, otherwise base_2, base_3, ...
  std::string fresh_name(const std::string& base) const;

 private:
  Context(std::vector<std::string> names, Field field);
  std::vector<std::string> names_;
  Field field_;
};

// Append new distinct names to a context.
Ctx extend(const Ctx& c, const std::vector<std::string>& extra);

using TermMap = std::map<Monomial, Coef, DegLexLess>;

class Poly {
 public:
  explicit Poly(Ctx c) : ctx_(std::move(c)) {}

  static Poly zero(const Ctx& c) { return Poly(c); }
  static Poly constant(const Ctx& c, const Coef& v);
  static Poly from_long(const Ctx& c, long v);
  static Poly variable(const Ctx& c, int i);
  static Poly term(const Ctx& c, const Monomial& m, const Coef& v);

  const Ctx& ctx() const { return ctx_; }
  const Field& field() const { return ctx_->field(); }
  size_t nvars() const { return ctx_->size(); }
  bool is_zero() const { return t_.empty(); }
  size_t term_count() const { return t_.size(); }
  const TermMap& terms() const { return t_; }

  Coef coef(const Monomial& m) const;
  bool is_constant() const;
  int total_degree() const;  // -1 for the zero polynomial
  int order() const;         // minimal total degree in the support, -1 for zero
  std::vector<Monomial> support() const;

  Poly operator+(const Poly& g) const;
  Poly operator-(const Poly& g) const;
  Poly operator*(const Poly& g) const;
  Poly operator-() const;
  Poly scaled(const Coef& c) const;
  Poly pow(unsigned k) const;
  Poly partial(int var) const;

  bool operator==(const Poly& g) const;
  bool operator!=(const Poly& g) const { return !(*this == g); }

  // Simultaneous substitution. Result lives in `target`; variables without an
  // image map to the variable of the same name in `target`.
  Poly substitute(const Ctx& target, const std::map<int, Poly>& images) const;
  Poly substitute_names(const Ctx& target, const std::map<std::string, Poly>& images) const;
  // Pure context change by name (used for lifting into an extension).
  Poly rename_into(const Ctx& target) const;

  // Builder; folds into an existing term and drops zeros.
  void add_term(const Monomial& m, const Coef& c);

  std::string str() const;

 private:
  void check_same_ctx(const Poly& g) const;
  Ctx ctx_;
  TermMap t_;
};

struct WeightedDegreeData {
  mpq_class min_value;            // minimal weighted degree over the support
  std::vector<Monomial> argmin;   // support points attaining it
  bool quasi_homogeneous = false; // every support point attains it
};

// Weights must be strictly positive rationals, one per variable; f nonzero.
WeightedDegreeData weighted_degree_data(const Poly& f, const std::vector<mpq_class>& w);

}  // namespace newt
