#include "doctest.h"
#include "hhop/cosimplicial.hpp"

using namespace hhop;

TEST_CASE("configuration counts") {
  CHECK(configuration_components(3, {1, 0}).size() == 2);  // (q-1)! cyclic
  CHECK(configuration_components(2, {0, 1}).size() == 2);  // q! linear
  for (int circles = 0; circles <= 2; ++circles)
    for (int intervals = 0; intervals <= 2; ++intervals) {
      if (circles + intervals == 0) continue;
      CHECK(configuration_components(1, {circles, intervals}).size() ==
            static_cast<size_t>(circles + intervals));
    }
  CHECK(configuration_components(4, {1, 0}).size() == 6);
}

TEST_CASE("cofaces and codegeneracies") {
  SUBCASE("one point on a circle: both doublings agree") {
    TruncatedCosimplicialSet t = configuration_cosimplicial({1, 0}, 3, false);
    REQUIRE(t.levels[0].size() == 1);
    CHECK(t.coface[0][0][0] == t.coface[0][1][0]);
  }
  SUBCASE("one point on an interval: doublings differ") {
    TruncatedCosimplicialSet t = configuration_cosimplicial({0, 1}, 3, false);
    REQUIRE(t.levels[0].size() == 1);
    CHECK(t.coface[0][0][0] != t.coface[0][1][0]);
  }
  SUBCASE("s0 d0 = id on level zero") {
    for (OneManifold x : {OneManifold{1, 0}, OneManifold{1, 1}}) {
      TruncatedCosimplicialSet t = configuration_cosimplicial(x, 3, false);
      for (size_t i = 0; i < t.levels[0].size(); ++i)
        CHECK(t.codegeneracy[1][0][t.coface[0][0][i]] == static_cast<int>(i));
    }
  }
  SUBCASE("all five identities for small manifolds") {
    for (OneManifold x :
         {OneManifold{1, 0}, OneManifold{0, 1}, OneManifold{2, 0},
          OneManifold{1, 1}, OneManifold{2, 1}}) {
      CHECK_NOTHROW(configuration_cosimplicial(x, 4, false));
    }
  }
}

TEST_CASE("homology of configuration complexes") {
  SUBCASE("complete part of one circle: a single class in degree zero") {
    TruncatedCosimplicialSet t = configuration_cosimplicial({1, 0}, 5, true);
    FreeChainComplex c = cosimplicial_chain_complex(t);
    CHECK(c.homology(0) == HomologyGroup{1, {}});
    for (int q = 1; q <= 4; ++q)
      CHECK(c.homology(-q) == HomologyGroup{0, {}});
    CHECK(count_degree_zero_classes(t) == 1);
  }
  SUBCASE("one interval: no homology at all in interior degrees") {
    TruncatedCosimplicialSet t = configuration_cosimplicial({0, 1}, 5, false);
    FreeChainComplex c = cosimplicial_chain_complex(t);
    for (int q = 0; q <= 4; ++q)
      CHECK(c.homology(-q) == HomologyGroup{0, {}});
    CHECK(count_degree_zero_classes(t) == 0);
  }
  SUBCASE("complete configurations on several components") {
    for (OneManifold x :
         {OneManifold{2, 0}, OneManifold{1, 1}, OneManifold{2, 1},
          OneManifold{3, 0}, OneManifold{1, 2}}) {
      CAPTURE(x.circles);
      CAPTURE(x.intervals);
      TruncatedCosimplicialSet t = configuration_cosimplicial(x, 5, true);
      FreeChainComplex c = cosimplicial_chain_complex(t);
      int expect = count_degree_zero_classes(t);
      CHECK(c.homology(0) == HomologyGroup{expect, {}});
      for (int q = 1; q <= 4; ++q)
        CHECK(c.homology(-q) == HomologyGroup{0, {}});
    }
  }
  SUBCASE("the complete part splits off") {
    // d_K of a complete configuration stays complete; of an incomplete one
    // stays incomplete (when nonzero)
    TruncatedCosimplicialSet t = configuration_cosimplicial({2, 0}, 4, false);
    for (int q = 0; q + 1 <= 4; ++q) {
      for (size_t x = 0; x < t.levels[q].size(); ++x) {
        bool src_complete =
            t.levels[q][x].find("c()") == std::string::npos;
        for (int i = 0; i <= q + 1; ++i) {
          int img = t.coface[q][i][x];
          bool img_complete =
              t.levels[q + 1][img].find("c()") == std::string::npos;
          CHECK(src_complete == img_complete);
        }
      }
    }
  }
}

TEST_CASE("inj complexes contract") {
  for (int r = 0; r <= 2; ++r) {
    CAPTURE(r);
    InjComplex inj = inj_complex(r, 6);
    // no homology in interior degrees
    for (int q = r; q <= 5; ++q)
      CHECK(inj.complex.homology(-q) == HomologyGroup{0, {}});
    // sd + ds = id in degrees where the truncation is complete
    std::map<int, SparseIntMatrix> f, zero, s;
    for (int q = r; q <= 5; ++q) {
      f[-q] = inj.identity.at(-q);
      zero[-q] = SparseIntMatrix(inj.complex.dim(-q), inj.complex.dim(-q));
      s[-q] = inj.homotopy.at(-q);
    }
    if (inj.complex.dim(-6) > 0)
      s[-6] = inj.homotopy.at(-6);
    CHECK(verify_homotopy(s, f, zero, inj.complex, inj.complex).ok);
  }
  SUBCASE("r equal to the truncation level leaves one generator") {
    InjComplex inj = inj_complex(4, 4);
    CHECK(inj.complex.dim(-4) == 1);
  }
}

TEST_CASE("simplex classification") {
  for (OneManifold x : {OneManifold{1, 0}, OneManifold{1, 1}, OneManifold{0, 2}}) {
    CAPTURE(x.circles);
    CAPTURE(x.intervals);
    TruncatedCosimplicialSet t = configuration_cosimplicial(x, 4, false);
    for (int q = 0; q <= 4; ++q) {
      std::map<int, int> seen_per_level;
      for (size_t xi = 0; xi < t.levels[q].size(); ++xi) {
        SimplexClass got = classify_simplex(t, q, static_cast<int>(xi));
        SimplexClass oracle = classify_simplex_oracle(t, q, static_cast<int>(xi));
        CHECK(got.level == oracle.level);
        CHECK(got.index == oracle.index);
        CHECK(got.unique_injection == oracle.unique_injection);
        if (got.unique_injection) CHECK(got.injection == oracle.injection);
        seen_per_level[got.level]++;
      }
      // every simplex is classified: the classes partition the level
      int total = 0;
      for (auto& [lvl, n] : seen_per_level) total += n;
      CHECK(total == static_cast<int>(t.levels[q].size()));
    }
  }
  SUBCASE("a non-coface classifies as itself") {
    TruncatedCosimplicialSet t = configuration_cosimplicial({0, 1}, 3, false);
    SimplexClass c = classify_simplex(t, 0, 0);
    CHECK(c.level == 0);
    CHECK(c.index == 0);
    CHECK(c.injection == std::vector<int>{0});
  }
}
