#pragma once

#include <optional>
#include <vector>

#include "newt/diagram.hpp"
#include "newt/groebner.hpp"
#include "newt/ndeg.hpp"

namespace newt {

// Milnor number: the dimension of the local quotient by the partials.
// nullopt means infinite. The staircase lists the leading monomials of the
// standard basis of the jacobian ideal, which certify the count.
struct MuResult {
  std::optional<long> mu;
  std::vector<Monomial> staircase;
};
MuResult milnor_number(const Poly& f);

// Independent cross-check by exact linear algebra: the dimension of the
// quotient by the partials truncated at order N, accepted once every
// monomial of degree N lies in the ideal plus the next power of the maximal
// ideal (which pins the dimension exactly). nullopt when no such certificate
// appears up to the cap.
std::optional<long> truncation_oracle_mu(const Poly& f, int start_order = 2, int cap = 40);

struct MuNuReport {
  std::optional<long> mu;  // nullopt = infinite
  mpq_class nu;
  bool convenient;
  bool nondegenerate;
  bool consistent;  // mu >= nu when convenient, with equality when also non-degenerate
  bool equal_but_degenerate;  // mu == nu yet degenerate: equality is no converse
};
MuNuReport mu_nu_report(const Poly& f);

}  // namespace newt
