#pragma once

#include <optional>

#include "newt/poly.hpp"

namespace newt {

// DegLex/Lex are global orders (1 smallest); LocalDegLex prefers smaller
// degree, so 1 is the largest monomial and leading terms pick out the tangent
// cone. Optional strictly positive weights replace total degree.
struct TermOrder {
  enum class Kind { DegLex, Lex, LocalDegLex };
  Kind kind = Kind::DegLex;
  std::vector<mpq_class> weights;

  bool local() const { return kind == Kind::LocalDegLex; }
  bool greater(const Monomial& a, const Monomial& b) const;

  static TermOrder deglex() { return {}; }
  static TermOrder lex() { return {Kind::Lex, {}}; }
  static TermOrder local_deglex() { return {Kind::LocalDegLex, {}}; }
};

// Monic generators with pairwise non-divisible leading monomials. For global
// orders the basis is fully tail-reduced (unique); for local orders it is a
// minimal standard basis computed by Mora normal form. Empty gens = zero ideal.
struct GBasis {
  Ctx ctx;
  TermOrder order;
  std::vector<Poly> gens;
  bool reduced = false;
};

GBasis gbasis(const std::vector<Poly>& gens, const TermOrder& order);

Monomial leading_monomial(const Poly& f, const TermOrder& order);

// Global orders: the unique remainder. Local orders: Mora weak normal form
// (zero iff f lies in the ideal within the local ring).
Poly normal_form(const Poly& f, const GBasis& basis);

bool ideal_membership(const Poly& f, const GBasis& basis);

std::vector<Poly> ideal_product(const std::vector<Poly>& a, const std::vector<Poly>& b);

// Decides whether gens = 0, x_i != 0 for i in `nonvanishing`, x_j = 0 for the
// rest has a solution over the algebraic closure. Adds t * prod(x_i) - 1 and
// tests by weak Nullstellensatz whether the basis reaches 1.
bool has_torus_zero(const std::vector<Poly>& gens, const std::vector<int>& nonvanishing);

// Number of monomials outside the leading ideal; nullopt when infinite.
std::optional<long> quotient_dim(const GBasis& basis);

// Local colength dim k[[x]]/(gens); nullopt when infinite.
std::optional<long> local_colength(const std::vector<Poly>& gens);

struct SamuelResult {
  long multiplicity = 0;
  int trials = 0;      // random generator combinations evaluated
  int at_minimum = 0;  // trials achieving the reported value
};

// Samuel multiplicity of an m-primary ideal: minimum colength over `trials`
// random n-tuples of generator combinations (deterministic in seed). The
// trial count doubles once if only a single trial attains the minimum.
SamuelResult samuel_multiplicity(const std::vector<Poly>& gens, unsigned seed, int trials = 6);

}  // namespace newt
