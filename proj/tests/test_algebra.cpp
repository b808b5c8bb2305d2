#include <random>

#include "doctest.h"
#include "hhop/algebra.hpp"
#include "hhop/forest.hpp"

using namespace hhop;

namespace {

int parity_by_transpositions(std::vector<int> perm,
                             const std::vector<int>& degs) {
  // decompose into adjacent transpositions and multiply Koszul factors
  int sign = 1;
  std::vector<int> cur = perm;
  // selection sort with adjacent swaps
  for (size_t i = 0; i < cur.size(); ++i) {
    for (size_t j = i; j < cur.size(); ++j) {
      if (cur[j] != static_cast<int>(i)) continue;
      for (size_t k = j; k > i; --k) {
        if ((degs[cur[k]] * degs[cur[k - 1]]) % 2 != 0) sign = -sign;
        std::swap(cur[k], cur[k - 1]);
      }
      break;
    }
  }
  return sign;
}

}  // namespace

TEST_CASE("builtin dual numbers") {
  FrobeniusAlgebra a = builtin_dual_numbers();
  CHECK(verify_frobenius(a).ok);
  // x * x = 0
  CHECK(a.multiply(1, 1).is_zero());
  // eps(1 * x) = 1
  CHECK(a.pairing_row(0)[1] == 1);
  // inverse pairing = 1 (x) x + x (x) 1
  TensorElement cop(2);
  cop.add({0, 1}, 1);
  cop.add({1, 0}, 1);
  CHECK(a.copairing() == cop);
}

TEST_CASE("builtin sphere cohomology") {
  for (int n : {2, 3}) {
    FrobeniusAlgebra a = builtin_sphere_cohomology(n);
    CHECK(verify_frobenius(a).ok);
    // x.x = 0 (forced by graded commutativity in odd dimensions)
    CHECK(a.multiply(1, 1).is_zero());
    CHECK(a.degree[1] == -n);
  }
  CHECK_THROWS(builtin_sphere_cohomology(1));
}

TEST_CASE("koszul sign") {
  CHECK(koszul_sign({0, 1, 2}, {1, 1, 1}) == 1);
  // swap of two odd-degree elements
  CHECK(koszul_sign({1, 0}, {1, 1}) == -1);
  // swap where one is even
  CHECK(koszul_sign({1, 0}, {2, 1}) == 1);
  std::mt19937 rng(505);
  for (int iter = 0; iter < 100; ++iter) {
    int n = 2 + rng() % 5;
    std::vector<int> perm(n), degs(n);
    for (int i = 0; i < n; ++i) {
      perm[i] = i;
      degs[i] = rng() % 4;
    }
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(koszul_sign(perm, degs) == parity_by_transpositions(perm, degs));
  }
}

TEST_CASE("apply_forest on dual numbers") {
  FrobeniusAlgebra a = builtin_dual_numbers();
  Morphism m2 = mk(2);
  SUBCASE("m2 on x (x) x is zero") {
    CHECK(apply_forest(a, m2, TensorElement::word({1, 1})).is_zero());
  }
  SUBCASE("associativity through composition") {
    Morphism left = compose(tensor(m2, identity_morphism(1)), m2);
    Morphism right = compose(tensor(identity_morphism(1), m2), m2);
    TensorElement in = TensorElement::word({0, 1, 1});
    CHECK(apply_forest(a, left, in) == apply_forest(a, right, in));
    CHECK(apply_forest(a, left, in).is_zero());  // 1*x then *x
    TensorElement in2 = TensorElement::word({0, 0, 1});
    TensorElement expect = TensorElement::word({1});
    CHECK(apply_forest(a, left, in2) == expect);
  }
  SUBCASE("m3 acts as zero on a strict algebra") {
    Morphism m3 = mk(3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          CHECK(apply_forest(a, m3, TensorElement::word({i, j, k})).is_zero());
  }
  SUBCASE("right action: composition order") {
    std::mt19937 rng(99);
    auto pool_a = enumerate_forests(3, 2);
    auto pool_b = enumerate_forests(2, 1);
    for (int iter = 0; iter < 20; ++iter) {
      const Morphism& f = pool_a[rng() % pool_a.size()];
      const Morphism& g = pool_b[rng() % pool_b.size()];
      std::vector<int> w{static_cast<int>(rng() % 2),
                         static_cast<int>(rng() % 2),
                         static_cast<int>(rng() % 2)};
      TensorElement x = TensorElement::word(w);
      CHECK(apply_forest(a, compose(f, g), x) ==
            apply_forest(a, g, apply_forest(a, f, x)));
    }
  }
}

TEST_CASE("apply_forest respects composition on graded algebras") {
  FrobeniusAlgebra a = builtin_sphere_cohomology(3);
  std::mt19937 rng(321);
  auto pool_a = enumerate_forests(3, 2);
  auto pool_b = enumerate_forests(2, 1);
  for (int iter = 0; iter < 20; ++iter) {
    const Morphism& f = pool_a[rng() % pool_a.size()];
    const Morphism& g = pool_b[rng() % pool_b.size()];
    std::vector<int> w{static_cast<int>(rng() % 2), static_cast<int>(rng() % 2),
                       static_cast<int>(rng() % 2)};
    TensorElement x = TensorElement::word(w);
    CHECK(apply_forest(a, compose(f, g), x) ==
          apply_forest(a, g, apply_forest(a, f, x)));
  }
}

TEST_CASE("algebra json round trip") {
  FrobeniusAlgebra a = builtin_sphere_cohomology(2);
  FrobeniusAlgebra b = algebra_from_json(algebra_to_json(a));
  CHECK(b.basis == a.basis);
  CHECK(b.degree == a.degree);
  CHECK(verify_frobenius(b).ok);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(a.multiply(i, j) == b.multiply(i, j));
}
