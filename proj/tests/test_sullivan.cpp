#include <random>

#include "doctest.h"
#include "hhop/forest.hpp"
#include "hhop/sullivan.hpp"

using namespace hhop;

namespace {

// random trivalent-black diagram: circles with random singleton/leaf sites
// and chords, assembled from a random site encoding
SullivanDiagram random_diagram(std::mt19937& rng, int circles, int max_spokes) {
  while (true) {
    SiteEncoding e;
    int leaf = 1, chord = 1;
    std::vector<int> open_chords;
    int total = 0;
    e.circles.resize(circles);
    for (int c = 0; c < circles; ++c) {
      int spokes = 1 + static_cast<int>(rng() % max_spokes);
      total += spokes;
      for (int s = 0; s < spokes; ++s) {
        std::vector<SiteEntry> block;
        int len = 1 + static_cast<int>(rng() % 2);
        for (int b = 0; b < len; ++b) {
          bool make_chord = (rng() % 2 == 0);
          if (make_chord && !open_chords.empty() && rng() % 2 == 0) {
            block.push_back({false, open_chords.back()});
            open_chords.pop_back();
          } else if (make_chord) {
            block.push_back({false, chord});
            open_chords.push_back(chord);
            ++chord;
          } else {
            block.push_back({true, leaf++});
          }
        }
        e.circles[c].push_back(std::move(block));
      }
    }
    if (!open_chords.empty()) {
      // close leftovers pairwise or drop the attempt
      if (open_chords.size() % 2 != 0) continue;
      for (size_t i = 0; i + 1 < open_chords.size(); i += 2) {
        e.circles[0].push_back({{false, open_chords[i]}});
        e.circles[0].push_back({{false, open_chords[i + 1]}});
      }
    }
    try {
      SullivanDiagram d = decode_sites(e, leaf - 1);
      return d;
    } catch (const GraphError&) {
      continue;
    }
  }
}

}  // namespace

TEST_CASE("generator degrees and shapes") {
  for (int g = 1; g <= 4; ++g) {
    SullivanDiagram mu = mu_g(g);
    SullivanDiagram tg = t_g(g);
    REQUIRE(!mu.zero);
    REQUIRE(!tg.zero);
    CHECK(mu.rep.degree() == 2 * g + 1);
    CHECK(tg.rep.degree() == 2 * g + 1);
    CHECK(mu.rep.num_leaves() == g + 1);
    CHECK(tg.rep.num_leaves() == 1);
    // incoming markers: every leaf is the sole leaf of its boundary cycle
    for (const SullivanDiagram* d : {&mu, &tg}) {
      auto cycles = boundary_cycles(d->rep);
      for (const auto& cyc : cycles) {
        int leaves = 0;
        std::vector<char> seen(d->rep.num_half_edges(), 0);
        for (int h : cyc) {
          if (!seen[h] && d->rep.is_leaf(h)) ++leaves;
          seen[h] = 1;
        }
        CHECK(leaves <= 1);
      }
    }
  }
}

TEST_CASE("surface types of the generators") {
  for (int g = 1; g <= 3; ++g) {
    SurfaceTopology mu = surface_topology(mu_g(g).rep);
    CHECK(mu.genus == 0);
    CHECK(mu.boundary_components == g + 2);
    SurfaceTopology tg = surface_topology(t_g(g).rep);
    CHECK(tg.genus == g);
    CHECK(tg.boundary_components == 2);
  }
}

TEST_CASE("the generators are cycles") {
  for (int g = 1; g <= 4; ++g) {
    CHECK(is_cycle(mu_g(g)));
    CHECK(is_cycle(t_g(g)));
  }
}

TEST_CASE("faces cancel in even-odd pairs") {
  for (int g = 1; g <= 4; ++g) {
    for (const SullivanDiagram& d : {mu_g(g), t_g(g)}) {
      auto faces = sd_faces(d);
      REQUIRE(faces.size() % 2 == 0);
      CHECK(faces.size() == static_cast<size_t>(2 * g + 2));
      for (size_t i = 0; i + 1 < faces.size(); i += 2) {
        SDSum pair;
        if (!faces[i].value.zero) pair.add(faces[i].value, faces[i].coeff);
        if (!faces[i + 1].value.zero)
          pair.add(faces[i + 1].value, faces[i + 1].coeff);
        CHECK(pair.is_zero());
      }
    }
  }
}

TEST_CASE("l_n viewed as a diagram is not a cycle") {
  SullivanDiagram l3 = from_bw(l_gen(3));
  CHECK(!is_cycle(l3));
  CHECK(sd_differential(l3).size() == 3);
}

TEST_CASE("the two resolutions of a 4-valent vertex sum to zero") {
  // one circle with a single site holding (leaf 1, leaf 2), plus leaf 3:
  // its representative has one trivalent black vertex; sliding across any
  // inner edge gives the other resolution with the opposite residual sign
  SiteEncoding e;
  e.circles = {{{{true, 1}, {true, 2}}, {{true, 3}}}};
  SullivanDiagram d = decode_sites(e, 3);
  REQUIRE(!d.zero);
  bool found_move = false;
  for (int h = 0; h < d.rep.num_half_edges() && !found_move; ++h) {
    auto moved = slide_move(d, h);
    if (!moved) continue;
    found_move = true;
    SDSum sum;
    sum.add(d, 1);
    sum.add(*moved, -1);
    // the move expresses d in terms of the other representative: as
    // classes they are equal, so the difference vanishes
    CHECK(sum.is_zero());
  }
  // bigger example with an honest internal edge: sites (1,2,3) on one
  // circle position expand to a two-vertex tree; the slide relates its two
  // combings with a sign
  SiteEncoding e2;
  e2.circles = {{{{true, 1}, {true, 2}, {true, 3}}, {{true, 4}}}};
  SullivanDiagram d2 = decode_sites(e2, 4);
  REQUIRE(!d2.zero);
  int inner = -1;
  for (int h = 0; h < d2.rep.num_half_edges(); ++h) {
    int p = d2.rep.partner[h];
    if (p == h) continue;
    if (d2.rep.color[d2.rep.source[h]] == Color::black &&
        d2.rep.source[p] >= 0 &&
        d2.rep.color[d2.rep.source[p]] == Color::black)
      inner = h;
  }
  REQUIRE(inner >= 0);
  auto moved = slide_move(d2, inner);
  REQUIRE(moved.has_value());
  CHECK(moved->cert == d2.cert);   // same orbit representative
  CHECK(moved->sign == d2.sign);   // slide transport is consistent
}

TEST_CASE("normal form is slide invariant") {
  std::mt19937 rng(90210);
  int checked = 0;
  for (int iter = 0; iter < 25; ++iter) {
    SullivanDiagram d = random_diagram(rng, 1 + iter % 2, 4);
    if (d.zero) continue;
    SullivanDiagram cur = d;
    for (int step = 0; step < 6; ++step) {
      std::vector<int> candidates;
      for (int h = 0; h < cur.rep.num_half_edges(); ++h) {
        int p = cur.rep.partner[h];
        if (p == h || cur.rep.source[h] < 0 || cur.rep.source[p] < 0) continue;
        if (cur.rep.source[h] == cur.rep.source[p]) continue;
        if (cur.rep.color[cur.rep.source[h]] == Color::black &&
            cur.rep.color[cur.rep.source[p]] == Color::black)
          candidates.push_back(h);
      }
      if (candidates.empty()) break;
      auto moved = slide_move(cur, candidates[rng() % candidates.size()]);
      if (!moved) break;
      cur = *moved;
      ++checked;
    }
    CHECK(cur.cert == d.cert);
    CHECK(cur.sign == d.sign);
  }
  CHECK(checked > 0);
}

TEST_CASE("degree is representative independent") {
  std::mt19937 rng(777);
  for (int iter = 0; iter < 20; ++iter) {
    SullivanDiagram d = random_diagram(rng, 1, 5);
    if (d.zero) continue;
    int deg = d.rep.degree();
    for (int h = 0; h < d.rep.num_half_edges(); ++h) {
      auto moved = slide_move(d, h);
      if (moved && !moved->zero) CHECK(moved->rep.degree() == deg);
    }
  }
}

TEST_CASE("differential squares to zero on random diagrams") {
  std::mt19937 rng(515151);
  for (int iter = 0; iter < 12; ++iter) {
    SullivanDiagram d = random_diagram(rng, 1 + iter % 2, 4);
    if (d.zero) continue;
    if (d.rep.num_half_edges() > 16) continue;
    SDSum first = sd_differential(d);
    SDSum second;
    for (const auto& t : first.terms()) {
      SullivanDiagram s{false, *t.rep, *t.cert, 1};
      second.add_sum(sd_differential(s), t.coeff);
    }
    CHECK(second.is_zero());
  }
}

TEST_CASE("site encoding round trip") {
  for (int g = 1; g <= 3; ++g) {
    for (const SullivanDiagram& d : {mu_g(g), t_g(g)}) {
      SiteEncoding e = encode_sites(d);
      int leaves = d.rep.num_leaves();
      SullivanDiagram back = decode_sites(e, leaves);
      CHECK(back.cert == d.cert);
    }
  }
  SUBCASE("l_n gives singleton sites") {
    SiteEncoding e = encode_sites(from_bw(l_gen(4)));
    REQUIRE(e.circles.size() == 1);
    CHECK(e.circles[0].size() == 4);
    for (const auto& site : e.circles[0]) CHECK(site.size() == 1);
  }
}

TEST_CASE("planar retreeings of the generators normalize identically") {
  // mu_2's tree has a single shape; re-encode and expand with the comb on
  // the opposite side by rotating the encoding: representative unchanged
  for (int g = 2; g <= 3; ++g) {
    SullivanDiagram mu = mu_g(g);
    SiteEncoding e = encode_sites(mu);
    SullivanDiagram back = decode_sites(e, g + 1);
    CHECK(back.cert == mu.cert);
    CHECK(std::abs(back.sign) == 1);
  }
}
