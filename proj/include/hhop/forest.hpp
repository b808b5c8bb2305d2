#pragma once

#include "hhop/graph.hpp"

namespace hhop {

// The k-ary corolla in degree k-2, inputs 1..k left to right, output below,
// with the left-right top-down orientation h1 ^ ... ^ hk ^ v ^ h0.
Morphism mk(int k);

// The unit generator: a single valence-1 black vertex whose root is the
// output.  Degree 0; composition rewrites it eagerly.
Morphism unit_morphism();

// One white vertex with n labeled spokes, start half-edge at spoke 1,
// orientation s1 ^ ... ^ sn ^ w.  Degree n-1.
OrientedGraph l_gen(int n);

// differential of a morphism: all blow-ups, termwise
Morphism differential(const Morphism& f);

// One signed term of the blow-up differential of l_n: the graph where the
// spokes i, i+1, ..., i+n-k (mod n, 1-based) are gathered onto a black
// vertex attached to the remaining white vertex of valence k.
struct FTerm {
  Morphism forest;   // n -> k, a single corolla among strands, coeff +-1
  long long coeff;
  int position;      // i
};

// f_{n,k}: the arity-lowering part of the Hochschild differential,
// extracted from the blow-ups of l_n whose white vertex has valence k.
Morphism f_nk(int n, int k);
std::vector<FTerm> f_nk_terms(int n, int k);

// Check d(m3) = m2(m2 + id) - m2(id + m2) with exact signs.
struct M3Report {
  bool ok;
  std::string detail;
};
M3Report verify_m3_identity();

// All planar forests with n inputs distributed in order over m trees
// (each tree takes a consecutive block of >= 1 inputs; every vertex of a
// tree has >= 2 children).  Used by the d^2 = 0 suites.
std::vector<Morphism> enumerate_forests(int n, int m);

}  // namespace hhop
