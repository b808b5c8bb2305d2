#pragma once

#include "hhop/hochschild.hpp"

namespace hhop {

// Element of the truncated complex of formal operations on one-circle
// inputs and outputs: a family of graded linear maps A^{(x)j} -> A^{(x)k},
// 1 <= j <= J (quotient direction), 1 <= k <= K (subcomplex direction).
// Every (j,k) component is homogeneous in the internal grading.
struct NatElement {
  // (j,k) -> ((in word, out word) -> coefficient)
  std::map<std::pair<int, int>,
           std::map<std::pair<std::vector<int>, std::vector<int>>, Int>>
      comp;

  bool is_zero() const;
  void add(int j, int k, const std::vector<int>& in, const std::vector<int>& out,
           const Int& c);
  void add(const NatElement& other, const Int& c = 1);
  friend bool operator==(const NatElement&, const NatElement&) = default;
};

struct NatTruncation {
  const FrobeniusAlgebra* algebra;
  int J = 6;
  int K = 6;
};

// The three-part differential: internal Hom differential, cyclic
// post-composition with multiplications on the output side, and cyclic
// pre-composition on the input side, with the global alternating sign.
NatElement nat_differential(const NatTruncation& t, const NatElement& g);

// The cap-product embedding: component j is a |-> a cap D for words of
// length j (zero for j <= q).
NatElement embed_cochain(const NatTruncation& t, const Cochain& d);

struct CappropReport {
  bool ok = true;
  std::string detail;
};

// For every basis cochain of arity <= q_max: the image of the cochain
// differential under the embedding equals the differential of the embedded
// element, componentwise within the truncation.
CappropReport verify_capprop(const FrobeniusAlgebra& a, int q_max, int J,
                             int K);

// d^2 = 0 within truncation semantics on seeded random elements.
CappropReport verify_nat_d_squared(const FrobeniusAlgebra& a, int J, int K,
                                   int samples, unsigned seed);

}  // namespace hhop
