#pragma once

#include <vector>

#include "newt/diagram.hpp"
#include "newt/groebner.hpp"

namespace newt {

enum class NdegMode { Kouchnirenko, Weak, Inner };

// One zero-search performed during a non-degeneracy decision: the face whose
// face polynomial was probed, and the set of variables required nonzero.
struct FaceCheck {
  int face;                       // index into the diagram's face list
  std::vector<int> pts;           // support points of that face
  int dim;
  std::vector<int> nonvanishing;  // stratum probed
  bool passed;                    // no common zero on that stratum
};

struct NdegReport {
  NdegMode mode;
  bool verdict;  // conjunction of the per-face passes
  std::vector<FaceCheck> per_face;
};

// Every closed face of the Newton diagram, vertices included: the functions
// x_i * d(f_face)/dx_i must have no common zero with all coordinates nonzero.
NdegReport is_nondegenerate(const Poly& f);

// Only the maximal faces of the diagram, and the zero search runs over the
// full system {f_face} plus its plain partial derivatives.
NdegReport is_weakly_nondegenerate(const Poly& f);

// For every face of the covector diagram not contained in a coordinate
// hyperplane, and every coordinate subspace the face meets: the plain
// partials of the face polynomial must have no zero that is nonzero exactly
// on that subspace's coordinates. The support of f must lie inside the
// diagram's region.
NdegReport is_inner_nondegenerate(const Poly& f, const CDiagram& gamma);

// Multiplicity criterion: f is non-degenerate exactly when the Samuel
// multiplicity of (x_1 df/dx_1, ..., x_n df/dx_n) equals n! times the
// n-dimensional volume under the diagram. Requires that ideal to have finite
// colength (which forces f convenient).
struct BiviaResult {
  bool verdict;
  long multiplicity;
  mpq_class volume_term;  // n! * V_n
  SamuelResult detail;
};
BiviaResult bivia_test(const Poly& f, unsigned seed = 1, int trials = 6);

// A polynomial supported exactly on the diagram's lattice points.
// Ones: all coefficients 1. Counting: 1, 2, 3, ... in storage order (cycling
// through 1..p-1 over F_p so no term drops). SeededRandom: reproducible
// nonzero coefficients drawn from the seed.
enum class CoefScheme { Ones, Counting, SeededRandom };
Poly generic_for_diagram(const NewtonDiagram& d, CoefScheme scheme, unsigned seed = 1);

}  // namespace newt
