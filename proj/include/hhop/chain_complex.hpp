#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hhop {

using Int = mpz_class;

// Sparse integer matrix; no zero entries stored, no duplicate positions.
class SparseIntMatrix {
 public:
  SparseIntMatrix() = default;
  SparseIntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void set(int r, int c, const Int& v);
  void add(int r, int c, const Int& v);
  Int get(int r, int c) const;
  bool is_zero() const { return entries_.empty(); }
  size_t nnz() const { return entries_.size(); }

  const std::map<std::pair<int, int>, Int>& entries() const { return entries_; }

  SparseIntMatrix transpose() const;
  friend SparseIntMatrix operator*(const SparseIntMatrix& a,
                                   const SparseIntMatrix& b);
  friend SparseIntMatrix operator-(const SparseIntMatrix& a,
                                   const SparseIntMatrix& b);
  friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b);

  std::vector<Int> apply(const std::vector<Int>& v) const;  // matrix * column

 private:
  int rows_ = 0, cols_ = 0;
  std::map<std::pair<int, int>, Int> entries_;
};

// S * m * T = diag(d1, ..., dr) with d1 | d2 | ... and S, T unimodular.
struct SmithResult {
  std::vector<Int> diagonal;  // nonzero entries only
  SparseIntMatrix S, T;       // square unimodular
  int rank() const { return static_cast<int>(diagonal.size()); }
};

SmithResult smith_normal_form(const SparseIntMatrix& m);

// H = Z^betti + sum Z/t_i, torsion entries > 1 in divisibility order.
struct HomologyGroup {
  long betti = 0;
  std::vector<Int> torsion;
  bool operator==(const HomologyGroup&) const = default;
  std::string to_string() const;
};

struct AssemblyError {
  std::string basis_key;   // offending element
  int degree = 0;
  std::string detail;
};

// Free Z-chain complex with ordered bases keyed by strings.
class FreeChainComplex {
 public:
  void set_basis(int degree, std::vector<std::string> keys);
  const std::vector<std::string>& basis(int degree) const;
  int dim(int degree) const;
  bool has_degree(int degree) const { return basis_.count(degree) > 0; }
  int min_degree() const;
  int max_degree() const;

  // boundary matrix from degree d to degree d-1 (rows: d-1 basis, cols: d)
  void set_boundary(int degree, SparseIntMatrix m);
  SparseIntMatrix boundary(int degree) const;

  // verifies shapes and d^2 = 0; returns the first witness on failure
  std::optional<AssemblyError> verify() const;

  HomologyGroup homology(int degree) const;
  long q_rank_homology(int degree) const;  // dim over Q

  int index_of(int degree, const std::string& key) const;

 private:
  std::map<int, std::vector<std::string>> basis_;
  std::map<int, std::map<std::string, int>> index_;
  std::map<int, SparseIntMatrix> boundary_;
};

// Assemble from a basis and a boundary function given as coefficient lists.
using BoundaryFn = std::function<std::vector<std::pair<std::string, Int>>(
    int degree, const std::string& key)>;
FreeChainComplex assemble(const std::map<int, std::vector<std::string>>& basis,
                          const BoundaryFn& boundary);

struct ChainMapReport {
  bool ok = true;
  int failed_degree = 0;
  std::string detail;
};

// checks boundary_target * f = (-1)^shift * f * boundary_source in all
// degrees where both sides are defined
ChainMapReport verify_chain_map(const std::map<int, SparseIntMatrix>& f,
                                const FreeChainComplex& source,
                                const FreeChainComplex& target, int shift);

// checks s*d + d*s = f - g degreewise (s of degree +1, f, g degree 0)
ChainMapReport verify_homotopy(const std::map<int, SparseIntMatrix>& s,
                               const std::map<int, SparseIntMatrix>& f,
                               const std::map<int, SparseIntMatrix>& g,
                               const FreeChainComplex& source,
                               const FreeChainComplex& target);

// Is v in the integer column span of m?  (exact, via Smith form)
bool in_integer_image(const SparseIntMatrix& m, const std::vector<Int>& v);
// Is v in the rational column span of m?
bool in_rational_image(const SparseIntMatrix& m, const std::vector<Int>& v);

}  // namespace hhop
