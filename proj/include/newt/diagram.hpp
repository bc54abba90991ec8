#pragma once

#include "newt/poly.hpp"

namespace newt {

using QVec = std::vector<mpq_class>;

// Diagram given by covectors: the region {x >= 0 : w.x >= 1 for all w}, each
// w strictly positive. Every such region is the Newton polyhedron of its
// (rational) vertex set.
struct CDiagram {
  Ctx ctx;
  std::vector<QVec> covectors;
};

// Facet of the Newton polyhedron {x : normal.x >= c}, inward normal >= 0.
// Compact exactly when the normal is strictly positive.
struct Facet {
  QVec normal;
  mpq_class c;
  bool compact = false;
  std::vector<int> pts_on;  // indices of generating points on the facet
};

// Compact face of the Newton polyhedron, identified by the generating points
// on it (a compact face is the convex hull of those points).
struct DFace {
  std::vector<int> pts;          // sorted indices into NewtonDiagram::pts
  int dim = 0;                   // affine dimension
  QVec witness;                  // strictly positive covector attaining its
                                 // minimum over the polyhedron exactly here
  std::vector<int> vanishing;    // coordinates i with face inside {x_i = 0}
  bool inner = false;            // vanishing is empty
  std::vector<int> vertex_pts;   // subset of pts that are vertices
};

// The boundary complex of a Newton polyhedron: all facets plus the lattice of
// compact faces (the Newton diagram), built from exact rational data.
struct NewtonDiagram {
  Ctx ctx;
  std::vector<QVec> pts;           // generating points
  std::vector<Monomial> support;   // parallel to pts when built from a polynomial
  std::vector<Facet> facets;
  std::vector<DFace> faces;        // sorted by (dim, pts)
  std::vector<int> vertices;       // indices of pts that are vertices
  bool convenient = false;         // diagram meets every coordinate axis
  bool from_polynomial = false;

  const DFace* face_by_pts(const std::vector<int>& pts) const;
};

// f must be nonzero. Points with a zero coordinate sum (a constant term) are
// allowed geometrically; invariants that need a singular germ reject them.
NewtonDiagram newton_diagram(const Poly& f);

NewtonDiagram newton_diagram(const CDiagram& cd);

// Covectors of the compact facets, normalized to {w.x >= 1}. Requires a
// convenient f vanishing at the origin.
CDiagram natural_cdiagram(const Poly& f);

// Terms of f supported on the given face. Works for any polynomial whose
// support lies inside the diagram's region (throws otherwise), so f need not
// be the polynomial the diagram was built from.
Poly face_poly(const Poly& f, const NewtonDiagram& d, const DFace& face);

// Newton number data: V[k] sums the volumes under the diagram over all
// k-dimensional coordinate subspaces, and
//   nu = sum_{k=0..n} (-1)^(n-k) k! V[k]   with V[0] = 1.
// The alternating sum is evaluated for any diagram; it carries its usual
// meaning (and is an integer) for convenient polynomial input.
struct NuReport {
  bool convenient = false;
  std::vector<mpq_class> V;
  struct Sub {
    std::vector<int> I;  // coordinate subspace, ascending
    mpq_class vol;
  };
  std::vector<Sub> subspaces;  // subspaces with nonzero volume
  mpq_class nu;
  bool integral = false;
};

NuReport newton_number(const NewtonDiagram& d);

}  // namespace newt
