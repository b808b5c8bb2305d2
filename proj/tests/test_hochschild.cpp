#include <random>

#include "doctest.h"
#include "hhop/hochschild.hpp"

using namespace hhop;

TEST_CASE("hochschild boundary of dual-number words") {
  FrobeniusAlgebra a = builtin_dual_numbers();
  SUBCASE("d(1 (x) x) = 0: the two unit multiplications cancel") {
    CHECK(hochschild_boundary(a, {0, 1}, false, 0).empty());
  }
  SUBCASE("d(1 (x) x (x) x) = 2 x(x)x") {
    ChainVector d = hochschild_boundary(a, {0, 1, 1}, false, 0);
    ChainVector expect;
    chain_add(expect, std::vector<int>{1, 1}, 2);
    CHECK(d == expect);
  }
  SUBCASE("d(x (x) x) = 0 and d(x (x) x (x) x) = 0") {
    CHECK(hochschild_boundary(a, {1, 1}, false, 0).empty());
    CHECK(hochschild_boundary(a, {1, 1, 1}, false, 0).empty());
  }
}

TEST_CASE("reduced dual-number complex") {
  FrobeniusAlgebra a = builtin_dual_numbers();
  FreeChainComplex c = build_hochschild(a, {8, true, 0});
  CHECK(!c.verify().has_value());
  SUBCASE("two generators in each degree") {
    for (int d = 0; d <= 6; ++d) {
      REQUIRE(c.dim(d) == 2);
      // the basis is 1 (x) x^d and x^(d+1)
      std::vector<int> w1{0};
      std::vector<int> w2{1};
      for (int i = 0; i < d; ++i) w1.push_back(1);
      for (int i = 0; i < d; ++i) w2.push_back(1);
      CHECK(c.index_of(d, word_key(w1)) >= 0);
      CHECK(c.index_of(d, word_key(w2)) >= 0);
    }
  }
  SUBCASE("homology per the multiplication-by-two pattern") {
    CHECK(c.homology(0) == HomologyGroup{2, {}});
    CHECK(c.homology(1) == HomologyGroup{1, {2}});
    CHECK(c.homology(2) == HomologyGroup{1, {}});
    CHECK(c.homology(3) == HomologyGroup{1, {2}});
    CHECK(c.homology(4) == HomologyGroup{1, {}});
    CHECK(c.homology(5) == HomologyGroup{1, {2}});
  }
  SUBCASE("stability when the truncation grows") {
    // degrees up to n_max - 2 see the full incoming differential
    FreeChainComplex c2 = build_hochschild(a, {9, true, 0});
    for (int d = 0; d <= 6; ++d) CHECK(c.homology(d) == c2.homology(d));
  }
}

TEST_CASE("unreduced complexes have d^2 = 0") {
  for (const char* name : {"dual", "sphere:2", "sphere:3"}) {
    FrobeniusAlgebra a = *builtin_algebra(name);
    FreeChainComplex c = build_hochschild(a, {6, false, 0});
    CHECK(!c.verify().has_value());
    FreeChainComplex cr = build_hochschild(a, {6, true, 0});
    CHECK(!cr.verify().has_value());
  }
}

TEST_CASE("quotient to the reduced complex is a chain map") {
  FrobeniusAlgebra a = builtin_dual_numbers();
  FreeChainComplex full = build_hochschild(a, {6, false, 0});
  FreeChainComplex red = build_hochschild(a, {6, true, 0});
  std::map<int, SparseIntMatrix> proj;
  for (int d = full.min_degree(); d <= full.max_degree(); ++d) {
    SparseIntMatrix m(red.dim(d), full.dim(d));
    for (int j = 0; j < full.dim(d); ++j) {
      int i = red.index_of(d, full.basis(d)[j]);
      if (i >= 0) m.set(i, j, 1);
    }
    proj[d] = std::move(m);
  }
  CHECK(verify_chain_map(proj, full, red, 0).ok);
}

TEST_CASE("sphere cohomology reduced differentials") {
  SUBCASE("odd spheres have vanishing reduced differential") {
    FrobeniusAlgebra a = builtin_sphere_cohomology(3);
    FreeChainComplex c = build_hochschild(a, {7, true, 0});
    for (int d = c.min_degree(); d <= c.max_degree(); ++d)
      CHECK(c.boundary(d).is_zero());
  }
  SUBCASE("even spheres: multiplication by 2 out of degrees -2i(n-1)") {
    int n = 2;
    FrobeniusAlgebra a = builtin_sphere_cohomology(n);
    FreeChainComplex c = build_hochschild(a, {7, true, 0});
    for (int d = c.min_degree(); d <= c.max_degree(); ++d) {
      SparseIntMatrix b = c.boundary(d);
      bool expect_nonzero = false;
      // source degree -2i(n-1) for i >= 1 holds 1 (x) x^{2i}
      for (int i = 1; 2 * i <= 6; ++i)
        if (d == -2 * i * (n - 1)) expect_nonzero = true;
      if (expect_nonzero) {
        CHECK(!b.is_zero());
        for (const auto& [rc, v] : b.entries()) CHECK(abs(v) == 2);
      } else {
        CHECK(b.is_zero());
      }
    }
  }
}

TEST_CASE("cap product") {
  FrobeniusAlgebra a = builtin_dual_numbers();
  SUBCASE("1 (x) x (x) x cap (x -> 1) = 1 (x) x") {
    Cochain d;
    d.q = 1;
    d.add({1}, 0, 1);
    TensorElement chain = TensorElement::word({0, 1, 1});
    TensorElement expect(2);
    expect.add({0, 1}, 1);
    CHECK(cap(a, chain, d) == expect);
  }
  SUBCASE("arity-zero cochains multiply the head") {
    Cochain d;
    d.q = 0;
    d.add({}, 1, 1);  // the element x
    TensorElement chain = TensorElement::word({0, 1});
    TensorElement expect(2);
    expect.add({1, 1}, 1);
    CHECK(cap(a, chain, d) == expect);
  }
  SUBCASE("short chains cap to zero") {
    Cochain d;
    d.q = 2;
    d.add({1, 1}, 0, 1);
    CHECK(cap(a, TensorElement::word({0, 1}), d).is_zero());
  }
}

TEST_CASE("cap identity pins the cochain differential") {
  // dD cap a = d(a cap D) - D cap da, with the structural signs restored:
  // the left side gains (-1)^{p+|a|} and the da-term carries (-1)^{|D|}.
  for (const char* name : {"dual", "sphere:3", "sphere:2"}) {
    FrobeniusAlgebra a = *builtin_algebra(name);
    for (int q = 0; q <= 3; ++q) {
      for (const Cochain& d : cochain_basis(a, q)) {
        Cochain dd = cochain_differential(a, d);
        int ddeg = cochain_internal_degree(a, d);
        for (int p = 0; p <= 4; ++p) {
          std::vector<int> w(p + 1, 0);
          std::function<bool(int)> gen = [&](int at) -> bool {
            if (at == p + 1) {
              TensorElement chain = TensorElement::word(w);
              int s = (p + a.word_degree(w)) % 2 == 0 ? 1 : -1;
              int sd = (ddeg % 2 == 0) ? 1 : -1;
              ChainVector lhs;
              chain_add(lhs, cap(a, chain, dd), s);
              ChainVector rhs;
              TensorElement capd = cap(a, chain, d);
              for (const auto& [cw, cc] : capd.terms())
                chain_add(rhs, hochschild_boundary(a, cw, false, 0), cc);
              ChainVector dchain = hochschild_boundary(a, w, false, 0);
              for (const auto& [cw, cc] : dchain) {
                TensorElement t = cap(a, TensorElement::word(cw), d);
                chain_add(rhs, t, -cc * sd);
              }
              return lhs == rhs;
            }
            for (int i = 0; i < a.dim(); ++i) {
              w[at] = i;
              if (!gen(at + 1)) return false;
            }
            return true;
          };
          CHECK(gen(0));
        }
      }
    }
  }
}

TEST_CASE("cochain complex") {
  FrobeniusAlgebra a = builtin_dual_numbers();
  FreeChainComplex c = build_cochain(a, 5);
  SUBCASE("dimensions") {
    for (int q = 0; q <= 5; ++q) CHECK(c.dim(-q) == 1 << (q + 1));
  }
  SUBCASE("d^2 = 0 through arity 4") {
    CHECK(!c.verify().has_value());
  }
  SUBCASE("arity-zero cochains differentiate to commutators") {
    // d(z)(a) = +-(az - za), which vanishes for a commutative algebra
    for (const Cochain& z : cochain_basis(a, 0))
      CHECK(cochain_differential(a, z).is_zero());
  }
}

TEST_CASE("unit homotopies") {
  FrobeniusAlgebra a = builtin_dual_numbers();
  for (int r = 2; r <= 4; ++r) {
    CAPTURE(r);
    CHECK(verify_ar_homotopy(a, r, 6).ok);
    CHECK(verify_br_homotopy(a, r, 6).ok);
  }
  SUBCASE("the window at r = n_max is vacuous") {
    CHECK(verify_ar_homotopy(a, 6, 6).ok);
  }
}
