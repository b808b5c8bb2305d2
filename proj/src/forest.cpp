#include "hhop/forest.hpp"

#include <algorithm>
#include <sstream>

namespace hhop {

Morphism mk(int k) {
  if (k < 2) throw GraphError("corolla arity must be at least 2");
  BWGraph g;
  // half-edges: 0 = root, 1..k = inputs
  g.source.assign(k + 1, 0);
  g.partner.resize(k + 1);
  g.next_he.resize(k + 1);
  g.leaf_label.assign(k + 1, 0);
  g.second_label.assign(k + 1, 0);
  for (int h = 0; h <= k; ++h) {
    g.partner[h] = h;
    g.next_he[h] = (h + 1) % (k + 1);
  }
  for (int i = 1; i <= k; ++i) g.leaf_label[i] = i;
  g.leaf_label[0] = k + 1;  // output
  g.color.assign(1, Color::black);
  g.white_label.assign(1, 0);
  g.start_he.assign(1, -1);
  Orientation o;
  for (int i = 1; i <= k; ++i) o.order.push_back({false, i});
  o.order.push_back({true, 0});
  o.order.push_back({false, 0});
  Morphism m{k, 1, {}};
  m.sum.add(OrientedGraph::canonical(g, o), 1);
  return m;
}

Morphism unit_morphism() {
  BWGraph g;
  g.source.assign(1, 0);
  g.partner.assign(1, 0);
  g.next_he.assign(1, 0);
  g.leaf_label.assign(1, 1);  // output label (n_in = 0)
  g.second_label.assign(1, 0);
  g.color.assign(1, Color::black);
  g.white_label.assign(1, 0);
  g.start_he.assign(1, -1);
  g.allow_low_valence = true;
  Morphism m{0, 1, {}};
  m.sum.add(OrientedGraph::canonical_default(g), 1);
  return m;
}

OrientedGraph l_gen(int n) {
  if (n < 1) throw GraphError("l_n needs n >= 1");
  BWGraph g;
  g.source.assign(n, 0);
  g.partner.resize(n);
  g.next_he.resize(n);
  g.leaf_label.resize(n);
  g.second_label.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    g.partner[i] = i;
    g.next_he[i] = (i + 1) % n;
    g.leaf_label[i] = i + 1;
  }
  g.color.assign(1, Color::white);
  g.white_label.assign(1, 1);
  g.start_he.assign(1, 0);
  Orientation o;
  for (int i = 0; i < n; ++i) o.order.push_back({false, i});
  o.order.push_back({true, 0});
  return OrientedGraph::canonical(g, o);
}

Morphism differential(const Morphism& f) {
  Morphism out{f.n_in, f.n_out, {}};
  for (const auto& t : f.sum.terms()) {
    OrientedGraph g{*t.graph, *t.cert, 1};
    out.sum.add_sum(blowups(g), t.coeff);
  }
  return out;
}

namespace {

// Split a blow-up term of l_n into (forest, position); the forest gathers
// the black part and strands for the surviving spokes.
FTerm split_l_blowup(const BWGraph& g, long long coeff, int n) {
  // locate the white vertex and its parts
  int w = -1;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.color[v] == Color::white) w = v;
  if (w < 0) throw GraphError("blow-up of l_n lost its white vertex");
  std::vector<int> spokes = g.spokes_from(g.start_he[w]);
  const int k = static_cast<int>(spokes.size());

  // the black vertex hangs off the unique non-leaf spoke
  int attach_pos = -1;
  for (int i = 0; i < k; ++i)
    if (!g.is_leaf(spokes[i])) attach_pos = i;
  if (attach_pos < 0) throw GraphError("no tree attached to the white vertex");
  int black = g.source[g.partner[spokes[attach_pos]]];
  std::vector<int> bspokes = g.spokes_from(g.partner[spokes[attach_pos]]);
  bspokes.erase(bspokes.begin());  // drop the connecting half-edge

  // position label: the first gathered input
  int i_pos = g.leaf_label[bspokes.front()];

  // build the forest: one corolla of arity |bspokes| with the gathered
  // labels, plus strands for the surviving spokes
  const int arity = static_cast<int>(bspokes.size());
  BWGraph f;
  f.source.assign(arity + 1, 0);
  f.partner.resize(arity + 1);
  f.next_he.resize(arity + 1);
  f.leaf_label.assign(arity + 1, 0);
  f.second_label.assign(arity + 1, 0);
  for (int h = 0; h <= arity; ++h) {
    f.partner[h] = h;
    f.next_he[h] = (h + 1) % (arity + 1);
  }
  for (int i = 0; i < arity; ++i)
    f.leaf_label[i + 1] = g.leaf_label[bspokes[i]];
  f.leaf_label[0] = n + 1 + attach_pos;  // output at the attachment position
  f.color.assign(1, Color::black);
  f.white_label.assign(1, 0);
  f.start_he.assign(1, -1);
  // strands for surviving spokes, outputs in white cyclic order from start
  int base_v = 0;
  (void)base_v;
  for (int i = 0; i < k; ++i) {
    if (i == attach_pos) continue;
    int hid = f.num_half_edges();
    f.source.push_back(-1);
    f.partner.push_back(hid);
    f.next_he.push_back(hid);
    f.leaf_label.push_back(g.leaf_label[spokes[i]]);
    f.second_label.push_back(n + 1 + i);
  }
  (void)black;
  FTerm term;
  term.forest = Morphism{n, k, {}};
  term.forest.sum.add(OrientedGraph::canonical_default(f), 1);
  term.coeff = coeff;
  term.position = i_pos;
  return term;
}

}  // namespace

std::vector<FTerm> f_nk_terms(int n, int k) {
  if (k < 1 || k >= n) throw GraphError("f_nk needs 1 <= k < n");
  // The generators l_n carry the orientation s_1 ^ ... ^ s_n ^ w rescaled
  // by (-1)^{floor(n/2)}.  This normalization makes the word complex, the
  // unit homotopies and the formal-operations differential share one sign
  // dictionary; it flips the even-arity rows and fixes nothing the odd
  // ones (in particular the multiplication-by-two differential).
  auto lambda = [](int m) { return (m / 2) % 2 == 0 ? 1 : -1; };
  int twist = lambda(n) * lambda(k);
  OrientedGraph ln = l_gen(n);
  GraphSum d = blowups(ln);
  std::vector<FTerm> terms;
  for (const auto& t : d.terms()) {
    int w = -1;
    for (int v = 0; v < t.graph->num_vertices(); ++v)
      if (t.graph->color[v] == Color::white) w = v;
    if (t.graph->valence(w) != k) continue;
    FTerm ft = split_l_blowup(*t.graph, t.coeff, n);
    // fix the sign: the coefficient is relative to gluing the forest
    // back onto l_k with juxtaposed orientation
    Morphism glued = glue_onto(ft.forest, l_gen(k), k);
    if (glued.sum.size() != 1) throw GraphError("degenerate l_n blow-up term");
    auto gt = glued.sum.terms().front();
    if (*gt.cert != *t.cert)
      throw GraphError("forest reconstruction of the blow-up term failed");
    ft.coeff = t.coeff * gt.coeff * twist;
    terms.push_back(std::move(ft));
  }
  std::sort(terms.begin(), terms.end(),
            [](const FTerm& a, const FTerm& b) { return a.position < b.position; });
  if (static_cast<int>(terms.size()) != n)
    throw GraphError("f_nk expected n terms");
  return terms;
}

Morphism f_nk(int n, int k) {
  Morphism out{n, k, {}};
  for (const FTerm& t : f_nk_terms(n, k)) out.sum.add_sum(t.forest.sum, t.coeff);
  return out;
}

M3Report verify_m3_identity() {
  Morphism m2 = mk(2);
  Morphism m3 = mk(3);
  Morphism d = differential(m3);
  Morphism lhs = compose(tensor(m2, identity_morphism(1)), m2);
  Morphism rhs = compose(tensor(identity_morphism(1), m2), m2);
  Morphism expected{3, 1, {}};
  expected.sum.add_sum(lhs.sum, 1);
  expected.sum.add_sum(rhs.sum, -1);
  if (d == expected) return {true, "d(m3) = m2(m2 + id) - m2(id + m2)"};
  std::ostringstream os;
  os << "d(m3) has " << d.sum.size() << " terms, expected combination has "
     << expected.sum.size();
  return {false, os.str()};
}

namespace {

void compositions(int n, int parts, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    if (n >= 1) {
      cur.push_back(n);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  for (int first = 1; first <= n - (parts - 1); ++first) {
    cur.push_back(first);
    compositions(n - first, parts - 1, cur, out);
    cur.pop_back();
  }
}

// planar trees with n ordered inputs; internal vertices have >= 2 children;
// n == 1 gives the identity strand
std::vector<Morphism> enumerate_trees(int n) {
  std::vector<Morphism> out;
  if (n == 1) {
    out.push_back(identity_morphism(1));
    return out;
  }
  for (int r = 2; r <= n; ++r) {
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    compositions(n, r, cur, comps);
    for (const auto& comp : comps) {
      std::vector<std::vector<Morphism>> subs;
      for (int c : comp) subs.push_back(enumerate_trees(c));
      std::vector<int> pick(r, 0);
      while (true) {
        Morphism row = subs[0][pick[0]];
        for (int i = 1; i < r; ++i) row = tensor(row, subs[i][pick[i]]);
        out.push_back(compose(row, mk(r)));
        int i = r - 1;
        while (i >= 0 && ++pick[i] == static_cast<int>(subs[i].size())) {
          pick[i] = 0;
          --i;
        }
        if (i < 0) break;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Morphism> enumerate_forests(int n, int m) {
  if (m == 1) return enumerate_trees(n);
  std::vector<Morphism> out;
  for (int first = 1; first + (m - 1) <= n; ++first) {
    auto left = enumerate_trees(first);
    auto right = enumerate_forests(n - first, m - 1);
    for (const auto& l : left)
      for (const auto& r : right) out.push_back(tensor(l, r));
  }
  return out;
}

}  // namespace hhop
