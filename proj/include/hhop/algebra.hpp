#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hhop/chain_complex.hpp"
#include "hhop/graph.hpp"

namespace hhop {

// Formal integer combination of basis tensor words of a fixed length.
// All words in one element share the same total internal degree.
class TensorElement {
 public:
  TensorElement() = default;
  explicit TensorElement(int length) : length_(length) {}
  static TensorElement word(const std::vector<int>& w, const Int& c = 1);

  int length() const { return length_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const std::vector<int>& w, const Int& c);
  void add(const TensorElement& other, const Int& c = 1);
  Int coeff(const std::vector<int>& w) const;
  const std::map<std::vector<int>, Int>& terms() const { return terms_; }
  TensorElement scaled(const Int& c) const;

  friend bool operator==(const TensorElement& a, const TensorElement& b);

 private:
  int length_ = 0;
  std::map<std::vector<int>, Int> terms_;
};

// Finite graded symmetric Frobenius algebra given by structure constants.
struct FrobeniusAlgebra {
  std::string name;
  std::vector<std::string> basis;
  std::vector<int> degree;                      // homological degrees
  std::vector<Int> unit;                        // coordinates of 1
  // product[i][j] = coordinates of e_i * e_j
  std::vector<std::vector<std::vector<Int>>> product;
  std::vector<Int> counit;
  // coproduct[i] = list of (j, k, c): nu(e_i) contains c * e_j (x) e_k
  std::vector<std::vector<std::tuple<int, int, Int>>> coproduct;
  // internal differential rows d(e_i); empty means zero
  std::vector<std::vector<Int>> internal_diff;

  int dim() const { return static_cast<int>(basis.size()); }
  int unit_index() const;  // unit must be a basis vector; -1 otherwise
  bool has_zero_differential() const;

  TensorElement multiply(int i, int j) const;              // length 1
  TensorElement coproduct_of(int i) const;                 // length 2
  TensorElement copairing() const;                         // length 2
  std::vector<Int> pairing_row(int i) const;               // eps(e_i e_j)
  int word_degree(const std::vector<int>& w) const;
  TensorElement differential_word(const std::vector<int>& w) const;  // Leibniz
};

struct FrobeniusReport {
  bool ok = true;
  std::vector<std::string> failures;
};

FrobeniusReport verify_frobenius(const FrobeniusAlgebra& a);

FrobeniusAlgebra builtin_dual_numbers();
FrobeniusAlgebra builtin_sphere_cohomology(int n);
// resolve "dual" / "sphere:N" names
std::optional<FrobeniusAlgebra> builtin_algebra(const std::string& name);

// Koszul sign of reordering (a_1,...,a_n) to (a_{perm[0]+1},...): product of
// (-1)^{|a||b|} over inverted pairs.  perm is 0-based.
int koszul_sign(const std::vector<int>& perm, const std::vector<int>& degrees);

// Right action of a forest morphism on a tensor word, with Koszul signs
// from moving operations past elements.  Higher corollas evaluate to zero
// on strict algebras.  Unital corollas insert the unit.
TensorElement apply_forest(const FrobeniusAlgebra& a, const Morphism& f,
                           const TensorElement& x);

std::string algebra_to_json(const FrobeniusAlgebra& a);
FrobeniusAlgebra algebra_from_json(const std::string& text);

}  // namespace hhop
