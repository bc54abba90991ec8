#pragma once

#include "newt/poly.hpp"
#include "newt/stabilize.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace newt {

// Value semigroup of an irreducible plane curve germ: the generators together
// with their gcd chain e, the quotients n, and the expansion of each
// n[i]*gens[i] over the earlier generators.
struct Semigroup {
  std::vector<long> gens;           // strictly increasing, overall gcd 1
  std::vector<long> e;              // e[i] = gcd(gens[0..i]); e.back() == 1
  std::vector<long> n;              // n[i] = e[i-1]/e[i] >= 2 for i >= 1; n[0] = 0
  std::vector<std::vector<long>> L; // L[i][j], j < i: n[i]*gens[i] = sum L[i][j]*gens[j]
  int genus() const { return static_cast<int>(gens.size()) - 1; }
};

// Either a semigroup or the reason the generators fail to come from a plane
// branch. Rejections are values, not errors.
struct SemigroupCheck {
  std::optional<Semigroup> value;
  std::string rejection;
  explicit operator bool() const { return value.has_value(); }
};

// Decide whether gens generate the value semigroup of a plane branch: gcd
// chain ends at 1, every quotient n[i] is at least 2, n[i]*gens[i] lies in
// the span of the earlier generators and below the next one. On success the
// expansion matrix L is solved with the normalization 0 <= L[i][j] < n[j]
// for j >= 1 (the remainder goes to column 0) and checked to be unique.
SemigroupCheck validate_semigroup(const std::vector<long>& gens);

// Membership of v in the monoid of nonnegative integer combinations of gens.
bool semigroup_member(long v, const std::vector<long>& gens);

// Characteristic exponents (beta_0; beta_1, ..., beta_g) and the pairs
// (m_i, n_i) with beta_i = m_i * e_i.
struct PuiseuxData {
  std::vector<long> characteristic;
  std::vector<std::pair<long, long>> pairs;
};

// beta_0 = gens[0], beta_1 = gens[1], and then
// beta_i = beta_{i-1} + gens[i] - n[i-1]*gens[i-1]. The result is checked to
// be strictly increasing with gcd(m_i, n_i) = 1.
PuiseuxData puiseux_characteristic(const Semigroup& S);

// Equations of the monomial curve t -> (t^gens[0], ..., t^gens[g]) in
// variables u0..ug: the i-th equation is u_i^{n_i} - prod_j u_j^{L[i][j]}.
std::vector<Poly> monomial_curve_equations(const Semigroup& S);

// Plane curve cut out by deforming each monomial-curve equation by the next
// variable and eliminating u2..ug. The eliminated variables are sign-flipped
// so that each back-substitution is u_{i+1} = f_i; this normalization makes
// the result exactly the nested form
//   (...((u1^{n_1} - u0^{L[1][0]})^{n_2} - ...)^{n_g}) - ...
// independent of the parities of the n[i]. Needs genus >= 1.
Poly plane_curve_from_semigroup(const Semigroup& S);

// Milnor number of the plane curve predicted by the conductor:
// sum_i (n[i]-1)*gens[i] - gens[0] + 1.
long conductor_milnor(const Semigroup& S);

// Copy of S with the expansion matrix replaced by explicit rows of the same
// shape. Rows must be nonnegative and satisfy the weighted sums; the
// normalization bound is deliberately not required, so pipelines for general
// expansions can be exercised.
Semigroup with_expansion_rows(const Semigroup& S,
                              const std::vector<std::vector<long>>& rows);

// Append one generator to a semigroup whose expansion rows only touch the
// first two columns: the old generators are scaled by n_new and beta_new is
// appended. Requires gcd(n_new, beta_new) = 1, beta_new above
// n_old*n_new*(last old generator), and beta_new in the span of the first
// two old generators; the result keeps the restricted expansion shape.
SemigroupCheck extend_semigroup(const Semigroup& S, long n_new, long beta_new);

// Suspend the nested plane curve into a form that is linear in the innermost
// nest, one rewriting step per nesting level, with fresh pairs v_i, w_i.
// Only for expansion rows touching the first two columns; genus 1 returns
// the plane curve unchanged. The trace joins the plane curve to the output.
std::pair<Poly, StabTrace> stabilize_nested_curve(const Semigroup& S);

// Genus-4 pipeline for arbitrary expansion rows: one rewriting step on the
// outer power, one per power of the middle nest followed by a shear, then
// one per power of the innermost nest followed by a shear.
std::pair<Poly, StabTrace> stabilize_curve_g4(const Semigroup& S);

}  // namespace newt
