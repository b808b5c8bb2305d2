#pragma once

#include "hhop/algebra.hpp"
#include "hhop/chain_complex.hpp"
#include "hhop/forest.hpp"

namespace hhop {

struct HochschildOptions {
  int n_max = 8;
  bool reduced = false;
  int extra_factors = 0;  // frozen tensor factors appended to each word
};

// Words are encoded as comma-separated basis indices.
std::string word_key(const std::vector<int>& w);
std::vector<int> word_from_key(const std::string& key);

// Integer combination of tensor words of varying lengths.
using ChainVector = std::map<std::vector<int>, Int>;

void chain_add(ChainVector& v, const std::vector<int>& w, const Int& c);
void chain_add(ChainVector& v, const ChainVector& other, const Int& c = 1);
void chain_add(ChainVector& v, const TensorElement& other, const Int& c = 1);

// degree of a word as a Hochschild chain: (cyclic length - 1) + internal
int hochschild_degree(const FrobeniusAlgebra& a, const std::vector<int>& w,
                      int extra_factors);

// The boundary of a single tensor word: internal differential plus the
// arity-lowering sum, with sign (-1)^{internal degree} on the second part.
// In reduced mode, words with a unit in cyclic positions 2..n are dropped.
ChainVector hochschild_boundary(const FrobeniusAlgebra& a,
                                const std::vector<int>& w, bool reduced,
                                int extra_factors);

bool word_is_reduced(const FrobeniusAlgebra& a, const std::vector<int>& w,
                     int extra_factors);

FreeChainComplex build_hochschild(const FrobeniusAlgebra& a,
                                  const HochschildOptions& opt);

// ---- cochains and the cap product ----

// Homogeneous Hochschild cochain: a linear map A^{(x)q} -> A.
struct Cochain {
  int q = 0;
  std::map<std::pair<std::vector<int>, int>, Int> terms;  // (in word, out) -> c

  void add(const std::vector<int>& w, int out, const Int& c);
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const Cochain&, const Cochain&) = default;
};

// All basis cochains of arity q (matrix units).
std::vector<Cochain> cochain_basis(const FrobeniusAlgebra& a, int q);

int cochain_internal_degree(const FrobeniusAlgebra& a, const Cochain& d);

// a cap D with the sign (-1)^{(|a|-|a0|)|D|}; zero when the word is shorter
// than q+1.
TensorElement cap(const FrobeniusAlgebra& a, const TensorElement& chain,
                  const Cochain& d);

// The cochain differential, defined as the unique map satisfying
//   a cap (dD) = d(a cap D) - (da) cap D
// read off at words with unit first entry.
Cochain cochain_differential(const FrobeniusAlgebra& a, const Cochain& d);

// cohomologically graded complex of cochains, C^q in complex degree -q
FreeChainComplex build_cochain(const FrobeniusAlgebra& a, int q_max);

// ---- unit homotopy verifications ----

struct HomotopyReport {
  bool ok = true;
  std::string detail;
};

// The acyclic quotient piece of the normalization argument: level n holds
// words of length n-1, with the shifted differential, contracted by
// inserting a unit in position r.
HomotopyReport verify_ar_homotopy(const FrobeniusAlgebra& a, int r, int n_max);

// The dual piece: level n holds maps A^{(x)(n-1)} -> A killed by unit
// insertions below r, contracted by precomposing with the unit insertion.
HomotopyReport verify_br_homotopy(const FrobeniusAlgebra& a, int r, int n_max);

}  // namespace hhop
