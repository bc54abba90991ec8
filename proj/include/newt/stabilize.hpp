#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "newt/poly.hpp"

namespace newt {

// A splitting f = g + m * phi^k that the rewriting below consumes.
struct Decomposition {
  Poly g;
  Poly m;
  Poly phi;
  unsigned k = 1;
};

// Search for a one-term m such that m * phi^k is literally a subsum of f
// (every product term present with exact coefficient); g is the rest.
// Candidates are scanned in the canonical term order of f; nullopt when no
// term of f yields such an m.
std::optional<Decomposition> find_decomposition(const Poly& f, const Poly& phi, unsigned k);

enum class StepRule { BasicTrick, MultiTerm, SquareCase, Rename };

// One rewriting step. `input` lives in the step's starting context, `output`
// in the (possibly extended) ending context; consecutive steps of a trace
// chain exactly. The payload depends on the rule:
//   BasicTrick   m, phi, k and the fresh pair (u, v):
//                  output = -uv + u*phi + m*v^k + (input - m*phi^k)
//   SquareCase   phi and the fresh u (m, k, v unused):
//                  output = -1/4*u^2 + u*phi + (input - phi^2)
//   Rename /     subst, an invertible change of coordinates applied to
//   MultiTerm      input; no fresh variables.
struct StabStep {
  StepRule rule;
  Poly input;
  Poly output;
  std::vector<int> fresh;  // indices (output context) introduced by the step
  Poly m;
  Poly phi;
  unsigned k = 0;
  int u = -1;
  int v = -1;
  std::map<int, Poly> subst;
};

struct StabTrace {
  Poly input;
  Poly output;
  std::vector<StabStep> steps;
};

struct VerifyReport {
  bool ok = true;
  int failed_step = -1;  // index of the first failing step when !ok
  std::string reason;
};

// Rewrite f = g + m*phi^k as -u*v + u*phi + m*v^k + g in a context extended
// by a fresh pair u, v, together with the replayable certificate: the
// substitution v -> v + phi followed by u -> u + m*((v+phi)^k - phi^k)/v
// carries the output back to -u*v + f exactly.
std::pair<Poly, StabTrace> basic_trick(const Poly& f, const Decomposition& d);

// Single rewriting step with caller-chosen names for the fresh pair (the
// names are uniquified against the context if taken). Building block for
// pipelines that chain many tricks and need stable variable names.
StabStep trick_step(const Poly& cur, const Decomposition& d, const std::string& ubase,
                    const std::string& vbase);

// The m = 1, k = 2 shortcut: f = g + phi^2 becomes -1/4*u^2 + u*phi + g with
// a single fresh u (certificate: u -> u + 2*phi carries it back to
// -1/4*u^2 + f). Refused in characteristic 2, where 1/4 does not exist.
std::pair<Poly, StabTrace> square_case(const Poly& f, const Poly& g, const Poly& phi);

struct TrickTerm {
  Poly m;
  unsigned k = 1;
};

// Rewrite f = g + sum_i m_i * phi^{k_i} (one shared phi). Each k >= 2 term
// gets its own fresh pair; a chain of shears then concentrates the phi
// coefficient in the last u, and k = 1 terms are absorbed into that u by
// u -> u - m_i. For two k >= 2 terms the output is
//   -u1*v1 + u1*v2 - u2*v2 + u2*phi + m1*v1^k1 + m2*v2^k2 + g.
std::pair<Poly, StabTrace> multi_term_trick(const Poly& f, const Poly& phi,
                                            const std::vector<TrickTerm>& terms, const Poly& g);

// Repeatedly split the lexicographically largest monomial of total degree
// >= 4 as m * phi with deg m = floor(deg / 2) and apply the k = 1 trick,
// until the whole polynomial has degree <= 3. Requires f(0) = 0.
std::pair<Poly, StabTrace> cubic_reduction(const Poly& f);

// Replay every certificate in the trace symbolically and check the chaining;
// never throws, reports the first failing step instead.
VerifyReport verify_stable_equiv(const StabTrace& trace);

// Exact rank of the degree-2 homogeneous part, via the symmetric Gram
// matrix. Needs characteristic != 2 to halve the cross terms.
int quadratic_rank(const Poly& f);

// Displayed stable forms for the small catalogue of projective plane curves
// with double points, plus the linear-section construction. Each returns the
// assembled input equation, its rewritten form, and the trace joining them.
struct StabExample {
  Poly input;
  Poly output;
  StabTrace trace;
};

// l1*m1^2 + l2*m2^2 -> -u1v1 - u2v2 + u1*m1 + u2*m2 + v1^2*l1 + v2^2*l2.
StabExample cubic_one_node(const Poly& l1, const Poly& l2, const Poly& m1, const Poly& m2);
// l1*l2*l3 -> -u1v1 - u2v2 + u1*l1 + u2*l2 + v1*v2*l3 (two tricks).
StabExample cubic_three_nodes(const Poly& l1, const Poly& l2, const Poly& l3);
// q1*q2 -> -uv + u*q1 + v*q2.
StabExample quartic_four_nodes(const Poly& q1, const Poly& q2);
// l1*q1^2 + l2*(q1+q2)^2 + l3*q2^2 -> the chained nine-term form after the
// shears u1 -> u1 - u2, u3 -> u3 - u2.
StabExample quintic_four_nodes(const Poly& l1, const Poly& l2, const Poly& l3, const Poly& q1,
                               const Poly& q2);
// fd_stabilized + l^k -> fd_stabilized - uv + u*l + v^k.
StabExample le_yomdin(const Poly& fd_stabilized, const Poly& l, unsigned k);

}  // namespace newt
