#include "hhop/graph.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>
#include <sstream>

namespace hhop {

int BWGraph::valence(int v) const {
  int c = 0;
  for (int h = 0; h < num_half_edges(); ++h)
    if (source[h] == v) ++c;
  return c;
}

int BWGraph::first_spoke(int v) const {
  for (int h = 0; h < num_half_edges(); ++h)
    if (source[h] == v) return h;
  return -1;
}

std::vector<int> BWGraph::spokes_from(int h) const {
  std::vector<int> out;
  int cur = h;
  do {
    out.push_back(cur);
    cur = next_he[cur];
  } while (cur != h);
  return out;
}

std::vector<int> BWGraph::spokes_of(int v) const {
  int h = first_spoke(v);
  if (h < 0) return {};
  return spokes_from(h);
}

int BWGraph::degree() const {
  int d = 0;
  for (int v = 0; v < num_vertices(); ++v) {
    int val = valence(v);
    if (color[v] == Color::white) {
      d += val - 1;
    } else if (val >= 3) {
      d += val - 3;
    }
    // low-valence black vertices (unital corollas) count as degree 0
  }
  return d;
}

int BWGraph::num_internal_edges() const {
  int c = 0;
  for (int h = 0; h < num_half_edges(); ++h)
    if (partner[h] != h && partner[h] > h) ++c;
  return c;
}

int BWGraph::num_leaves() const {
  int c = 0;
  for (int h = 0; h < num_half_edges(); ++h)
    if (partner[h] == h && source[h] >= 0) ++c;
  return c;
}

void BWGraph::check() const {
  const int nh = num_half_edges();
  const int nv = num_vertices();
  if (static_cast<int>(partner.size()) != nh ||
      static_cast<int>(next_he.size()) != nh ||
      static_cast<int>(leaf_label.size()) != nh ||
      static_cast<int>(second_label.size()) != nh)
    throw GraphError("half-edge arrays disagree in length");
  if (static_cast<int>(white_label.size()) != nv ||
      static_cast<int>(start_he.size()) != nv)
    throw GraphError("vertex arrays disagree in length");
  for (int h = 0; h < nh; ++h) {
    int p = partner[h];
    if (p < 0 || p >= nh || partner[p] != h)
      throw GraphError("involution is not self-inverse");
    if (source[h] >= nv) throw GraphError("half-edge source out of range");
    if (source[h] < 0) {
      if (partner[h] != h) throw GraphError("strand paired with another half-edge");
      if (next_he[h] != h) throw GraphError("strand with nontrivial cyclic order");
    } else {
      int n = next_he[h];
      if (n < 0 || n >= nh || source[n] != source[h])
        throw GraphError("cyclic order leaves the vertex");
    }
  }
  for (int v = 0; v < nv; ++v) {
    int val = valence(v);
    if (val == 0) throw GraphError("isolated vertex");
    // cyclic order at v must be one cycle through all spokes
    if (static_cast<int>(spokes_of(v).size()) != val)
      throw GraphError("cyclic order at a vertex is not a single cycle");
    if (color[v] == Color::white) {
      if (val < 1) throw GraphError("white vertex of valence 0");
      int s = start_he[v];
      if (s < 0 || s >= nh || source[s] != v)
        throw GraphError("start half-edge not incident to its white vertex");
      if (white_label[v] <= 0) throw GraphError("white vertex without label");
    } else {
      if (val < 3 && !allow_low_valence)
        throw GraphError("black vertex of valence < 3");
    }
  }
}

Orientation BWGraph::default_orientation() const {
  Orientation o;
  for (int v = 0; v < num_vertices(); ++v) o.order.push_back({true, v});
  for (int h = 0; h < num_half_edges(); ++h) o.order.push_back({false, h});
  o.sign = 1;
  return o;
}

// ---------------------------------------------------------------------------
// permutation parity

namespace {

// parity of the permutation sending position i to rank[i]
int parity_of_ranks(const std::vector<int>& rank) {
  int inv = 0;
  for (size_t i = 0; i < rank.size(); ++i)
    for (size_t j = i + 1; j < rank.size(); ++j)
      if (rank[i] > rank[j]) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

struct GenKey {
  bool is_vertex;
  int id;
  bool operator<(const GenKey& o) const {
    if (is_vertex != o.is_vertex) return is_vertex && !o.is_vertex;
    return id < o.id;
  }
  bool operator==(const GenKey& o) const {
    return is_vertex == o.is_vertex && id == o.id;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// canonical form

namespace {

struct ComponentLabeling {
  std::vector<int> vmap;   // old vertex -> local id (-1 outside component)
  std::vector<int> hmap;   // old half-edge -> local id
  int nv = 0, nh = 0;
};

// Deterministic traversal of the component of half-edge h0, rooted there.
ComponentLabeling traverse(const BWGraph& g, int h0) {
  ComponentLabeling lab;
  lab.vmap.assign(g.num_vertices(), -1);
  lab.hmap.assign(g.num_half_edges(), -1);
  std::deque<std::pair<int, int>> queue;  // (vertex, entry half-edge)
  queue.push_back({g.source[h0], h0});
  lab.vmap[g.source[h0]] = lab.nv++;
  while (!queue.empty()) {
    auto [v, e] = queue.front();
    queue.pop_front();
    for (int h : g.spokes_from(e)) {
      if (lab.hmap[h] < 0) lab.hmap[h] = lab.nh++;
      int p = g.partner[h];
      if (p != h && lab.vmap[g.source[p]] < 0) {
        lab.vmap[g.source[p]] = lab.nv++;
        queue.push_back({g.source[p], p});
      }
    }
    // partner half-edges of already-visited vertices still need ids:
    // they get them when their own vertex is processed.
  }
  return lab;
}

Cert component_cert(const BWGraph& g, const ComponentLabeling& lab) {
  // inverse maps
  std::vector<int> vinv(lab.nv, -1), hinv(lab.nh, -1);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (lab.vmap[v] >= 0) vinv[lab.vmap[v]] = v;
  for (int h = 0; h < g.num_half_edges(); ++h)
    if (lab.hmap[h] >= 0) hinv[lab.hmap[h]] = h;
  Cert c;
  c.push_back(1);
  c.push_back(lab.nv);
  c.push_back(lab.nh);
  for (int v = 0; v < lab.nv; ++v) {
    int ov = vinv[v];
    c.push_back(g.color[ov] == Color::white ? 1 : 0);
    c.push_back(g.white_label[ov]);
    c.push_back(g.start_he[ov] >= 0 ? lab.hmap[g.start_he[ov]] : -1);
  }
  for (int h = 0; h < lab.nh; ++h) {
    int oh = hinv[h];
    c.push_back(lab.vmap[g.source[oh]]);
    c.push_back(lab.hmap[g.partner[oh]]);
    c.push_back(lab.hmap[g.next_he[oh]]);
    c.push_back(g.leaf_label[oh]);
    c.push_back(g.second_label[oh]);
  }
  return c;
}

struct ComponentCanon {
  Cert cert;
  ComponentLabeling lab;  // one labeling achieving the cert
  bool zero = false;      // an automorphism reverses orientation
  std::vector<GenKey> old_gens;  // component generators, old ids sorted
};

// parity of the labeling as a map old_gens(sorted) -> local canonical order
int labeling_parity(const ComponentCanon& comp, const ComponentLabeling& lab) {
  std::vector<int> rank;
  rank.reserve(comp.old_gens.size());
  for (const GenKey& gk : comp.old_gens) {
    if (gk.is_vertex)
      rank.push_back(lab.vmap[gk.id]);
    else
      rank.push_back(lab.nv + lab.hmap[gk.id]);
  }
  return parity_of_ranks(rank);
}

ComponentCanon canon_component(const BWGraph& g, const std::vector<int>& hes) {
  ComponentCanon best;
  bool first = true;
  int best_parity = 1;
  for (int h0 : hes) {
    ComponentLabeling lab = traverse(g, h0);
    Cert c = component_cert(g, lab);
    if (first || c < best.cert) {
      if (first) {
        // record component generator list once (sorted old ids)
        std::set<int> vs;
        for (int h : hes) vs.insert(g.source[h]);
        for (int v : vs) best.old_gens.push_back({true, v});
        for (int h : hes) best.old_gens.push_back({false, h});
      }
      best.cert = std::move(c);
      best.lab = std::move(lab);
      best.zero = false;
      best_parity = labeling_parity(best, best.lab);
      first = false;
    } else if (c == best.cert) {
      if (labeling_parity(best, lab) != best_parity) best.zero = true;
    }
  }
  return best;
}

}  // namespace

CanonResult canonical_form(const BWGraph& g, const Orientation& o) {
  g.check();
  const int nv = g.num_vertices();
  const int nh = g.num_half_edges();
  if (static_cast<int>(o.order.size()) != nv + nh)
    throw GraphError("orientation does not list every generator once");
  {
    std::vector<char> seenv(nv, 0), seenh(nh, 0);
    for (const GenRef& r : o.order) {
      if (r.is_vertex) {
        if (r.id < 0 || r.id >= nv || seenv[r.id]) throw GraphError("bad orientation");
        seenv[r.id] = 1;
      } else {
        if (r.id < 0 || r.id >= nh || seenh[r.id]) throw GraphError("bad orientation");
        seenh[r.id] = 1;
      }
    }
  }

  // split into components
  std::vector<int> comp_of(nh, -1);
  std::vector<std::vector<int>> comp_hes;
  std::vector<char> is_strand_comp;
  for (int h = 0; h < nh; ++h) {
    if (comp_of[h] >= 0) continue;
    if (g.source[h] < 0) {
      comp_of[h] = static_cast<int>(comp_hes.size());
      comp_hes.push_back({h});
      is_strand_comp.push_back(1);
      continue;
    }
    // flood fill via vertices
    std::vector<int> stack{h};
    std::vector<int> members;
    comp_of[h] = static_cast<int>(comp_hes.size());
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      members.push_back(cur);
      for (int nxt : {g.next_he[cur], g.partner[cur]}) {
        if (nxt >= 0 && comp_of[nxt] < 0 && g.source[nxt] >= 0) {
          comp_of[nxt] = comp_of[h];
          stack.push_back(nxt);
        } else if (nxt >= 0 && g.source[nxt] < 0 && comp_of[nxt] < 0) {
          // cannot happen: strands pair with themselves
        }
      }
    }
    std::sort(members.begin(), members.end());
    comp_hes.push_back(members);
    is_strand_comp.push_back(0);
  }

  struct Piece {
    Cert cert;
    int index;  // into comp_hes
    ComponentCanon canon;  // empty for strands
  };
  std::vector<Piece> pieces;
  bool zero = false;
  for (size_t ci = 0; ci < comp_hes.size(); ++ci) {
    Piece p;
    p.index = static_cast<int>(ci);
    if (is_strand_comp[ci]) {
      int h = comp_hes[ci][0];
      p.cert = {0, g.leaf_label[h], g.second_label[h]};
    } else {
      p.canon = canon_component(g, comp_hes[ci]);
      if (p.canon.zero) zero = true;
      p.cert = p.canon.cert;
    }
    pieces.push_back(std::move(p));
  }
  // strand components sort after everything else so that wire generators
  // always sit at the end of the canonical order (composition relies on it)
  std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    bool sa = a.cert[0] == 0, sb = b.cert[0] == 0;
    if (sa != sb) return !sa;
    return a.cert < b.cert;
  });

  // identical adjacent components: the swap is an automorphism
  for (size_t i = 0; i + 1 < pieces.size(); ++i) {
    if (pieces[i].cert == pieces[i + 1].cert) {
      const auto& hs = comp_hes[pieces[i].index];
      int kv = 0;
      if (!is_strand_comp[pieces[i].index]) kv = pieces[i].canon.lab.nv;
      int kgens = kv + static_cast<int>(hs.size());
      if (kgens % 2 == 1) zero = true;
    }
  }

  // assemble the canonical graph
  CanonResult res;
  std::vector<int> vmap(nv, -1), hmap(nh, -1);
  int vofs = 0, hofs = 0;
  for (const Piece& p : pieces) {
    if (is_strand_comp[p.index]) {
      hmap[comp_hes[p.index][0]] = hofs++;
    } else {
      const ComponentLabeling& lab = p.canon.lab;
      for (int v = 0; v < nv; ++v)
        if (lab.vmap[v] >= 0) vmap[v] = vofs + lab.vmap[v];
      for (int h = 0; h < nh; ++h)
        if (lab.hmap[h] >= 0) hmap[h] = hofs + lab.hmap[h];
      vofs += lab.nv;
      hofs += lab.nh;
    }
  }
  BWGraph& out = res.graph;
  out.source.assign(nh, -1);
  out.partner.assign(nh, -1);
  out.next_he.assign(nh, -1);
  out.leaf_label.assign(nh, 0);
  out.second_label.assign(nh, 0);
  out.color.assign(nv, Color::black);
  out.white_label.assign(nv, 0);
  out.start_he.assign(nv, -1);
  for (int h = 0; h < nh; ++h) {
    int nhid = hmap[h];
    out.source[nhid] = g.source[h] >= 0 ? vmap[g.source[h]] : -1;
    out.partner[nhid] = hmap[g.partner[h]];
    out.next_he[nhid] = hmap[g.next_he[h]];
    out.leaf_label[nhid] = g.leaf_label[h];
    out.second_label[nhid] = g.second_label[h];
  }
  for (int v = 0; v < nv; ++v) {
    int nvid = vmap[v];
    out.color[nvid] = g.color[v];
    out.white_label[nvid] = g.white_label[v];
    out.start_he[nvid] = g.start_he[v] >= 0 ? hmap[g.start_he[v]] : -1;
  }
  // the flag is derived so that structurally equal graphs share a certificate
  out.allow_low_valence = false;
  for (int v = 0; v < nv; ++v)
    if (out.color[v] == Color::black && out.valence(v) < 3)
      out.allow_low_valence = true;

  // full certificate
  res.cert.push_back(nv);
  res.cert.push_back(nh);
  for (int v = 0; v < nv; ++v) {
    res.cert.push_back(out.color[v] == Color::white ? 1 : 0);
    res.cert.push_back(out.white_label[v]);
    res.cert.push_back(out.start_he[v]);
  }
  for (int h = 0; h < nh; ++h) {
    res.cert.push_back(out.source[h]);
    res.cert.push_back(out.partner[h]);
    res.cert.push_back(out.next_he[h]);
    res.cert.push_back(out.leaf_label[h]);
    res.cert.push_back(out.second_label[h]);
  }
  res.cert.push_back(out.allow_low_valence ? 1 : 0);

  // orientation sign: parity of old order (as given) against canonical order
  std::vector<int> rank;
  rank.reserve(o.order.size());
  for (const GenRef& r : o.order)
    rank.push_back(r.is_vertex ? vmap[r.id] : nv + hmap[r.id]);
  res.sign = o.sign * parity_of_ranks(rank);
  res.zero = zero;
  return res;
}

OrientedGraph OrientedGraph::canonical(const BWGraph& g, const Orientation& o) {
  CanonResult c = canonical_form(g, o);
  if (c.zero)
    throw GraphError("graph has an orientation-reversing automorphism");
  return OrientedGraph{std::move(c.graph), std::move(c.cert), c.sign};
}

OrientedGraph OrientedGraph::canonical_default(const BWGraph& g) {
  return canonical(g, g.default_orientation());
}

// ---------------------------------------------------------------------------
// GraphSum

void GraphSum::add(const OrientedGraph& g, long long coeff) {
  if (coeff == 0) return;
  auto it = terms_.find(g.cert);
  if (it == terms_.end()) {
    terms_.emplace(g.cert, std::make_pair(g.graph, coeff * g.sign));
  } else {
    it->second.second += coeff * g.sign;
    if (it->second.second == 0) terms_.erase(it);
  }
}

void GraphSum::add(const CanonResult& c, long long coeff) {
  if (c.zero || coeff == 0) return;
  add(OrientedGraph{c.graph, c.cert, c.sign}, coeff);
}

void GraphSum::add_sum(const GraphSum& other, long long coeff) {
  for (const auto& [cert, gv] : other.terms_) {
    auto it = terms_.find(cert);
    if (it == terms_.end()) {
      if (coeff * gv.second != 0)
        terms_.emplace(cert, std::make_pair(gv.first, coeff * gv.second));
    } else {
      it->second.second += coeff * gv.second;
      if (it->second.second == 0) terms_.erase(it);
    }
  }
}

std::vector<GraphSum::Term> GraphSum::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [cert, gv] : terms_)
    out.push_back({&gv.first, &cert, gv.second});
  return out;
}

bool operator==(const GraphSum& a, const GraphSum& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib)
    if (ia->first != ib->first || ia->second.second != ib->second.second)
      return false;
  return true;
}

bool operator==(const Morphism& a, const Morphism& b) {
  return a.n_in == b.n_in && a.n_out == b.n_out && a.sum == b.sum;
}

// ---------------------------------------------------------------------------
// boundary cycles

std::vector<std::vector<int>> boundary_cycles(const BWGraph& g) {
  const int nh = g.num_half_edges();
  // darts: 2h = departing along h, 2h+1 = arriving along h
  std::vector<int> succ(2 * nh, -1);
  for (int h = 0; h < nh; ++h) {
    if (g.source[h] < 0) {  // strand: its own little cycle
      succ[2 * h] = 2 * h + 1;
      succ[2 * h + 1] = 2 * h;
      continue;
    }
    succ[2 * h] = 2 * g.partner[h] + 1;
    if (g.color[g.source[h]] == Color::white)
      succ[2 * h + 1] = 2 * h;  // white vertex blocks the traversal
    else
      succ[2 * h + 1] = 2 * g.next_he[h];
  }
  std::vector<char> seen(2 * nh, 0);
  std::vector<std::vector<int>> cycles;
  for (int d0 = 0; d0 < 2 * nh; ++d0) {
    if (seen[d0]) continue;
    std::vector<int> cyc;
    int d = d0;
    do {
      seen[d] = 1;
      cyc.push_back(d / 2);
      d = succ[d];
    } while (d != d0);
    if (g.source[cyc.front()] < 0) cyc.resize(1);  // exceptional graph
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

int surface_cycle_count(const BWGraph& g) {
  const int nh = g.num_half_edges();
  std::vector<int> succ(2 * nh, -1);
  for (int h = 0; h < nh; ++h) {
    if (g.source[h] < 0) throw GraphError("surface of a graph with strands");
    succ[2 * h] = 2 * g.partner[h] + 1;
    succ[2 * h + 1] = 2 * g.next_he[h];
  }
  std::vector<char> seen(2 * nh, 0);
  int count = 0;
  for (int d0 = 0; d0 < 2 * nh; ++d0) {
    if (seen[d0]) continue;
    int d = d0;
    do {
      seen[d] = 1;
      d = succ[d];
    } while (d != d0);
    ++count;
  }
  return count;
}

SurfaceTopology surface_topology(const BWGraph& g) {
  int whites = 0, blacks = 0;
  for (int v = 0; v < g.num_vertices(); ++v)
    (g.color[v] == Color::white ? whites : blacks)++;
  SurfaceTopology t{};
  t.boundary_components = surface_cycle_count(g) + whites;
  // black vertices thicken to disks, white vertices to annuli,
  // internal edges to bands; leaves do not change the count
  t.euler_characteristic = blacks - g.num_internal_edges();
  int twice_genus = 2 - t.boundary_components - t.euler_characteristic;
  if (twice_genus % 2 != 0) throw GraphError("inconsistent surface data");
  t.genus = twice_genus / 2;
  return t;
}

// ---------------------------------------------------------------------------
// collapse

namespace {

// sign of rearranging `order` so that `front` (given old-id generators)
// comes first, in the given order, with the rest keeping relative order
int move_to_front_sign(const std::vector<GenRef>& order,
                       const std::vector<GenRef>& front) {
  std::vector<int> rank;
  rank.reserve(order.size());
  for (const GenRef& r : order) {
    int special = -1;
    for (size_t i = 0; i < front.size(); ++i)
      if (front[i] == r) special = static_cast<int>(i);
    if (special >= 0)
      rank.push_back(special);
    else
      rank.push_back(static_cast<int>(front.size()) + static_cast<int>(&r - order.data()));
  }
  return parity_of_ranks(rank);
}

}  // namespace

std::pair<BWGraph, Orientation> collapse_edge(const BWGraph& g,
                                              const Orientation& o, int h1) {
  int h2 = g.partner[h1];
  if (h2 == h1) throw GraphError("cannot collapse a leaf");
  int v1 = g.source[h1], v2 = g.source[h2];
  if (v1 < 0 || v2 < 0) throw GraphError("cannot collapse a strand");
  if (v1 == v2) throw GraphError("cannot collapse a loop");
  if (g.color[v1] == Color::white && g.color[v2] == Color::white)
    throw GraphError("cannot collapse an edge between two white vertices");

  std::vector<int> a = g.spokes_from(h1);  // starts at h1
  a.erase(a.begin());
  std::vector<int> b = g.spokes_from(h2);
  b.erase(b.begin());
  std::vector<int> merged = a;
  merged.insert(merged.end(), b.begin(), b.end());
  if (merged.empty()) throw GraphError("collapse would produce an isolated vertex");

  bool white = g.color[v1] == Color::white || g.color[v2] == Color::white;
  int wl = 0, start = -1;
  if (white) {
    int wv = g.color[v1] == Color::white ? v1 : v2;
    wl = g.white_label[wv];
    start = g.start_he[wv];
    if (start == h1 || start == h2) {
      // the start half-edge is being removed: the first spoke of the
      // black side takes over
      start = (wv == v2) ? (a.empty() ? b.front() : a.front())
                         : (b.empty() ? a.front() : b.front());
    }
  }

  // id maps: drop v2, h1, h2
  const int nv = g.num_vertices(), nh = g.num_half_edges();
  std::vector<int> vmap(nv, -1), hmap(nh, -1);
  int vc = 0, hc = 0;
  for (int v = 0; v < nv; ++v)
    if (v != v2) vmap[v] = vc++;
  for (int h = 0; h < nh; ++h)
    if (h != h1 && h != h2) hmap[h] = hc++;

  BWGraph out;
  out.allow_low_valence = g.allow_low_valence;
  out.source.assign(hc, -1);
  out.partner.assign(hc, -1);
  out.next_he.assign(hc, -1);
  out.leaf_label.assign(hc, 0);
  out.second_label.assign(hc, 0);
  out.color.assign(vc, Color::black);
  out.white_label.assign(vc, 0);
  out.start_he.assign(vc, -1);
  for (int h = 0; h < nh; ++h) {
    if (hmap[h] < 0) continue;
    int sv = g.source[h];
    if (sv == v2) sv = v1;
    out.source[hmap[h]] = sv >= 0 ? vmap[sv] : -1;
    out.partner[hmap[h]] = hmap[g.partner[h]];
    out.next_he[hmap[h]] = g.source[h] >= 0 ? -1 : hmap[h];
    out.leaf_label[hmap[h]] = g.leaf_label[h];
    out.second_label[hmap[h]] = g.second_label[h];
  }
  for (int v = 0; v < nv; ++v) {
    if (vmap[v] < 0) continue;
    out.color[vmap[v]] = g.color[v];
    out.white_label[vmap[v]] = g.white_label[v];
    out.start_he[vmap[v]] =
        g.start_he[v] >= 0 && hmap[g.start_he[v]] >= 0 ? hmap[g.start_he[v]] : -1;
  }
  out.color[vmap[v1]] = white ? Color::white : Color::black;
  out.white_label[vmap[v1]] = wl;
  out.start_he[vmap[v1]] = white ? hmap[start] : -1;
  // cyclic orders away from the merged vertex
  for (int h = 0; h < nh; ++h) {
    if (hmap[h] < 0 || g.source[h] < 0) continue;
    if (g.source[h] != v1 && g.source[h] != v2)
      out.next_he[hmap[h]] = hmap[g.next_he[h]];
  }
  for (size_t i = 0; i < merged.size(); ++i)
    out.next_he[hmap[merged[i]]] = hmap[merged[(i + 1) % merged.size()]];

  // orientation: move v1, v2, h1, h2 to the front, replace by merged vertex
  int s = move_to_front_sign(o.order, {{true, v1}, {true, v2}, {false, h1}, {false, h2}});
  Orientation no;
  no.sign = o.sign * s;
  no.order.push_back({true, vmap[v1]});
  for (const GenRef& r : o.order) {
    if (r.is_vertex) {
      if (r.id == v1 || r.id == v2) continue;
      no.order.push_back({true, vmap[r.id]});
    } else {
      if (r.id == h1 || r.id == h2) continue;
      no.order.push_back({false, hmap[r.id]});
    }
  }
  return {std::move(out), std::move(no)};
}

OrientedGraph collapse(const OrientedGraph& g, int h) {
  Orientation o = g.graph.default_orientation();
  o.sign = g.sign;
  auto [ng, no] = collapse_edge(g.graph, o, h);
  return OrientedGraph::canonical(ng, no);
}

// ---------------------------------------------------------------------------
// blow-ups

namespace {

// One blow-up of vertex v: the cyclically consecutive `block` of its
// spokes moves to a new vertex joined to v by a fresh edge.
CanonResult blow_up_once(const BWGraph& g, const Orientation& o, int v,
                         const std::vector<int>& spokes, int start_idx,
                         int block_size, bool white_vertex) {
  const int nv = g.num_vertices(), nh = g.num_half_edges();
  const int k = static_cast<int>(spokes.size());
  BWGraph out = g;
  int v2 = nv;
  int e1 = nh, e2 = nh + 1;
  out.color.push_back(Color::black);
  out.white_label.push_back(0);
  out.start_he.push_back(-1);
  out.source.push_back(v);   // e1 stays at v
  out.source.push_back(v2);  // e2 at the new vertex
  out.partner.push_back(e2);
  out.partner.push_back(e1);
  out.next_he.push_back(-1);
  out.next_he.push_back(-1);
  out.leaf_label.push_back(0);
  out.leaf_label.push_back(0);
  out.second_label.push_back(0);
  out.second_label.push_back(0);

  std::vector<int> block, rest;
  for (int i = 0; i < block_size; ++i) block.push_back(spokes[(start_idx + i) % k]);
  for (int i = block_size; i < k; ++i) rest.push_back(spokes[(start_idx + i) % k]);

  for (int h : block) out.source[h] = v2;
  // cyclic order at the new vertex: e2 then the block
  {
    std::vector<int> cyc{e2};
    cyc.insert(cyc.end(), block.begin(), block.end());
    for (size_t i = 0; i < cyc.size(); ++i)
      out.next_he[cyc[i]] = cyc[(i + 1) % cyc.size()];
  }
  // cyclic order at v: the rest, then e1 where the block used to be
  {
    std::vector<int> cyc = rest;
    cyc.push_back(e1);
    for (size_t i = 0; i < cyc.size(); ++i)
      out.next_he[cyc[i]] = cyc[(i + 1) % cyc.size()];
  }
  if (white_vertex) {
    int st = g.start_he[v];
    bool moved = std::find(block.begin(), block.end(), st) != block.end();
    out.start_he[v] = moved ? e1 : st;
  }

  // orientation: v ^ X  ->  v ^ v2 ^ e1 ^ e2 ^ X
  int s = move_to_front_sign(o.order, {{true, v}});
  Orientation no;
  no.sign = o.sign * s;
  no.order.push_back({true, v});
  no.order.push_back({true, v2});
  no.order.push_back({false, e1});
  no.order.push_back({false, e2});
  for (const GenRef& r : o.order)
    if (!(r.is_vertex && r.id == v)) no.order.push_back(r);
  return canonical_form(out, no);
}

}  // namespace

GraphSum blowups_at_vertex(const BWGraph& g, const Orientation& o, int v) {
  GraphSum sum;
  std::vector<int> spokes = g.spokes_of(v);
  const int k = static_cast<int>(spokes.size());
  if (g.color[v] == Color::black) {
    // both new vertices at least trivalent; each unordered split once
    // (blocks avoiding the anchor spoke spokes[0])
    for (int b = 2; b <= k - 2; ++b)
      for (int i = 1; i + b - 1 <= k - 1; ++i)
        sum.add(blow_up_once(g, o, v, spokes, i, b, false), 1);
  } else {
    // white splits into white + black: black side needs >= 2 spokes,
    // the white side keeps the connecting edge so any complement works
    for (int b = 2; b <= k; ++b)
      for (int i = 0; i < k; ++i)
        sum.add(blow_up_once(g, o, v, spokes, i, b, true), 1);
  }
  return sum;
}

GraphSum blowups(const OrientedGraph& g) {
  GraphSum sum;
  Orientation o = g.graph.default_orientation();
  o.sign = g.sign;
  for (int v = 0; v < g.graph.num_vertices(); ++v)
    sum.add_sum(blowups_at_vertex(g.graph, o, v));
  return sum;
}

// ---------------------------------------------------------------------------
// morphism composition

Morphism identity_morphism(int n) {
  BWGraph g;
  g.source.assign(n, -1);
  g.partner.resize(n);
  g.next_he.resize(n);
  g.leaf_label.resize(n);
  g.second_label.resize(n);
  for (int i = 0; i < n; ++i) {
    g.partner[i] = i;
    g.next_he[i] = i;
    g.leaf_label[i] = i + 1;
    g.second_label[i] = n + i + 1;
  }
  Morphism m{n, n, {}};
  m.sum.add(OrientedGraph::canonical_default(g), 1);
  return m;
}

namespace {

int find_input_he(const BWGraph& g, int label) {
  for (int h = 0; h < g.num_half_edges(); ++h)
    if (g.partner[h] == h && g.leaf_label[h] == label) return h;
  return -1;
}

int find_output_he(const BWGraph& g, int label) {
  for (int h = 0; h < g.num_half_edges(); ++h) {
    if (g.partner[h] != h) continue;
    if (g.source[h] < 0 ? g.second_label[h] == label : g.leaf_label[h] == label)
      return h;
  }
  return -1;
}

struct Builder {
  BWGraph g;
  std::vector<GenRef> order;  // current orientation order
  int sign = 1;

  // Consumed wire generators are dropped silently: the merged generator
  // keeps the position of the real leaf it fuses with, so identity laws
  // and the juxtaposition rule for compositions hold on the nose.
  void delete_half_edge_from_order(int h) {
    for (size_t i = 0; i < order.size(); ++i) {
      if (!order[i].is_vertex && order[i].id == h) {
        order.erase(order.begin() + i);
        return;
      }
    }
    throw GraphError("generator not found in orientation");
  }

  void delete_vertex_from_order(int v) {
    for (size_t i = 0; i < order.size(); ++i) {
      if (order[i].is_vertex && order[i].id == v) {
        if (i % 2 == 1) sign = -sign;
        order.erase(order.begin() + i);
        return;
      }
    }
    throw GraphError("generator not found in orientation");
  }

  // compact ids of deleted generators at the very end
  CanonResult finish(const std::vector<char>& he_dead,
                     const std::vector<char>& v_dead) {
    const int nv = g.num_vertices(), nh = g.num_half_edges();
    std::vector<int> vmap(nv, -1), hmap(nh, -1);
    int vc = 0, hc = 0;
    for (int v = 0; v < nv; ++v)
      if (!v_dead[v]) vmap[v] = vc++;
    for (int h = 0; h < nh; ++h)
      if (!he_dead[h]) hmap[h] = hc++;
    BWGraph out;
    out.allow_low_valence = g.allow_low_valence;
    out.color.resize(vc);
    out.white_label.resize(vc);
    out.start_he.resize(vc);
    out.source.resize(hc);
    out.partner.resize(hc);
    out.next_he.resize(hc);
    out.leaf_label.resize(hc);
    out.second_label.resize(hc);
    for (int v = 0; v < nv; ++v) {
      if (vmap[v] < 0) continue;
      out.color[vmap[v]] = g.color[v];
      out.white_label[vmap[v]] = g.white_label[v];
      out.start_he[vmap[v]] = g.start_he[v] >= 0 ? hmap[g.start_he[v]] : -1;
    }
    for (int h = 0; h < nh; ++h) {
      if (hmap[h] < 0) continue;
      out.source[hmap[h]] = g.source[h] >= 0 ? vmap[g.source[h]] : -1;
      out.partner[hmap[h]] = hmap[g.partner[h]];
      out.next_he[hmap[h]] = g.source[h] >= 0 ? hmap[g.next_he[h]] : hmap[h];
      out.leaf_label[hmap[h]] = g.leaf_label[h];
      out.second_label[hmap[h]] = g.second_label[h];
    }
    Orientation o;
    o.sign = sign;
    for (const GenRef& r : order)
      o.order.push_back({r.is_vertex, r.is_vertex ? vmap[r.id] : hmap[r.id]});
    return canonical_form(out, o);
  }
};

// Rewrites glued unital corollas.  Returns false if the term vanishes.
bool rewrite_units(Builder& b, std::vector<char>& he_dead,
                   std::vector<char>& v_dead, int n_in) {
  const int SMOOTH_PARITY = 1;  // calibrated by compose(u+id, m2) == id
  bool changed = true;
  while (changed) {
    changed = false;
    for (int u = 0; u < b.g.num_vertices(); ++u) {
      if (v_dead[u] || b.g.color[u] != Color::black) continue;
      int val = 0, root = -1;
      for (int h = 0; h < b.g.num_half_edges(); ++h)
        if (!he_dead[h] && b.g.source[h] == u) { ++val; root = h; }
      if (val != 1) continue;
      int h = b.g.partner[root];
      if (h == root) continue;  // free-standing unit, keep
      int v = b.g.source[h];
      if (v < 0) throw GraphError("unit glued to a strand");
      if (b.g.color[v] == Color::white)
        throw GraphError("unit glued into a white vertex");
      int vval = 0;
      for (int x = 0; x < b.g.num_half_edges(); ++x)
        if (!he_dead[x] && b.g.source[x] == v) ++vval;
      if (vval != 3) return false;  // m_k (u at some slot) = 0 for k > 2
      // smooth: u --root/h-- v(o, t) becomes a wire partner(o) -- partner(t)
      int spoke_o = b.g.next_he[h];
      int spoke_t = b.g.next_he[spoke_o];
      // delete u, root, h with the edge-collapse parity, then v, o, t
      b.sign *= move_to_front_sign(
          b.order, {{true, v}, {true, u}, {false, h}, {false, root}});
      // rebuild order: v first then the rest (mirrors collapse v1^v2^h1^h2^X -> v^X)
      {
        std::vector<GenRef> no;
        no.push_back({true, v});
        for (const GenRef& r : b.order) {
          if (r.is_vertex && (r.id == v || r.id == u)) continue;
          if (!r.is_vertex && (r.id == h || r.id == root)) continue;
          no.push_back(r);
        }
        b.order = std::move(no);
      }
      he_dead[h] = he_dead[root] = 1;
      v_dead[u] = 1;
      // now remove the 2-valent vertex v with spokes (o, t)
      v_dead[v] = 1;
      int po = b.g.partner[spoke_o], pt = b.g.partner[spoke_t];
      bool o_leaf = po == spoke_o, t_leaf = pt == spoke_t;
      if (o_leaf && t_leaf) {
        // the wire has free ends on both sides: it becomes a strand;
        // spoke_o survives as the strand generator
        b.sign *= SMOOTH_PARITY *
                  move_to_front_sign(b.order, {{true, v}, {false, spoke_t}});
        std::vector<GenRef> no;
        for (const GenRef& r : b.order) {
          if (r.is_vertex && r.id == v) continue;
          if (!r.is_vertex && r.id == spoke_t) continue;
          no.push_back(r);
        }
        b.order = std::move(no);
        he_dead[spoke_t] = 1;
        int li = b.g.leaf_label[spoke_o], ti = b.g.leaf_label[spoke_t];
        b.g.source[spoke_o] = -1;
        b.g.partner[spoke_o] = spoke_o;
        b.g.next_he[spoke_o] = spoke_o;
        // one side carries an input label, the other an output label
        int in_lbl = (li != 0 && li <= n_in) ? li : ti;
        int out_lbl = in_lbl == li ? ti : li;
        b.g.leaf_label[spoke_o] = in_lbl;
        b.g.second_label[spoke_o] = out_lbl;
      } else {
        b.sign *= SMOOTH_PARITY *
                  move_to_front_sign(
                      b.order, {{true, v}, {false, spoke_o}, {false, spoke_t}});
        std::vector<GenRef> no;
        for (const GenRef& r : b.order) {
          if (r.is_vertex && r.id == v) continue;
          if (!r.is_vertex && (r.id == spoke_o || r.id == spoke_t)) continue;
          no.push_back(r);
        }
        b.order = std::move(no);
        he_dead[spoke_o] = he_dead[spoke_t] = 1;
        if (!o_leaf && !t_leaf) {
          if (po == spoke_t) throw GraphError("unit rewrite closed a loop");
          b.g.partner[po] = pt;
          b.g.partner[pt] = po;
        } else {
          int lbl = o_leaf ? b.g.leaf_label[spoke_o] : b.g.leaf_label[spoke_t];
          int lbl2 = o_leaf ? b.g.second_label[spoke_o] : b.g.second_label[spoke_t];
          int keep = o_leaf ? pt : po;
          b.g.partner[keep] = keep;
          b.g.leaf_label[keep] = lbl;
          b.g.second_label[keep] = lbl2;
        }
      }
      changed = true;
      break;
    }
  }
  return true;
}

std::optional<CanonResult> compose_terms(const BWGraph& fa, const BWGraph& fb,
                                         int n_f, int p, int n_b_out_base,
                                         int out_base) {
  // combined graph: fa then fb with offsets
  Builder b;
  const int nva = fa.num_vertices(), nha = fa.num_half_edges();
  const int nvb = fb.num_vertices(), nhb = fb.num_half_edges();
  b.g.allow_low_valence = fa.allow_low_valence || fb.allow_low_valence;
  b.g.color = fa.color;
  b.g.color.insert(b.g.color.end(), fb.color.begin(), fb.color.end());
  b.g.white_label = fa.white_label;
  for (int v = 0; v < nvb; ++v) b.g.white_label.push_back(fb.white_label[v]);
  b.g.start_he = fa.start_he;
  for (int v = 0; v < nvb; ++v)
    b.g.start_he.push_back(fb.start_he[v] >= 0 ? fb.start_he[v] + nha : -1);
  b.g.source = fa.source;
  for (int h = 0; h < nhb; ++h)
    b.g.source.push_back(fb.source[h] >= 0 ? fb.source[h] + nva : -1);
  b.g.partner = fa.partner;
  for (int h = 0; h < nhb; ++h) b.g.partner.push_back(fb.partner[h] + nha);
  b.g.next_he = fa.next_he;
  for (int h = 0; h < nhb; ++h) b.g.next_he.push_back(fb.next_he[h] + nha);
  b.g.leaf_label = fa.leaf_label;
  b.g.leaf_label.insert(b.g.leaf_label.end(), fb.leaf_label.begin(), fb.leaf_label.end());
  b.g.second_label = fa.second_label;
  b.g.second_label.insert(b.g.second_label.end(), fb.second_label.begin(),
                          fb.second_label.end());
  // juxtaposed orientation
  for (int v = 0; v < nva; ++v) b.order.push_back({true, v});
  for (int h = 0; h < nha; ++h) b.order.push_back({false, h});
  for (int v = 0; v < nvb; ++v) b.order.push_back({true, nva + v});
  for (int h = 0; h < nhb; ++h) b.order.push_back({false, nha + h});

  std::vector<char> he_dead(nha + nhb, 0), v_dead(nva + nvb, 0);

  // relabel fb's outputs first; gluing below only touches fb's inputs
  for (int h = 0; h < nhb; ++h) {
    int hh = nha + h;
    if (b.g.source[hh] < 0) {
      if (b.g.second_label[hh] > n_b_out_base)
        b.g.second_label[hh] = out_base + (b.g.second_label[hh] - n_b_out_base);
    } else if (b.g.partner[hh] == hh && b.g.leaf_label[hh] > n_b_out_base) {
      b.g.leaf_label[hh] = out_base + (b.g.leaf_label[hh] - n_b_out_base);
    }
  }

  for (int j = 1; j <= p; ++j) {
    int hf = find_output_he(fa, n_f + j);
    int hb = find_input_he(fb, j);
    if (hf < 0 || hb < 0) throw GraphError("missing leaf label in composition");
    hb += nha;
    bool f_strand = fa.source[hf] < 0;
    bool b_strand = b.g.source[hb] < 0;
    if (!f_strand && !b_strand) {
      b.g.partner[hf] = hb;
      b.g.partner[hb] = hf;
      b.g.leaf_label[hf] = b.g.leaf_label[hb] = 0;
      b.g.second_label[hf] = b.g.second_label[hb] = 0;
    } else if (f_strand && !b_strand) {
      // f's wire: b's input leaf becomes the composite input
      int in_label = fa.leaf_label[hf];
      b.delete_half_edge_from_order(hf);
      he_dead[hf] = 1;
      b.g.leaf_label[hb] = in_label;
      b.g.second_label[hb] = 0;
    } else if (!f_strand && b_strand) {
      // b's wire: f's output leaf becomes a composite output
      int out_label = b.g.second_label[hb];
      b.delete_half_edge_from_order(hb);
      he_dead[hb] = 1;
      b.g.leaf_label[hf] = out_label;
      b.g.second_label[hf] = 0;
    } else {
      // wire composed with wire: the g-side generator survives in place
      // and carries f's input label
      b.delete_half_edge_from_order(hf);
      he_dead[hf] = 1;
      b.g.leaf_label[hb] = fa.leaf_label[hf];
    }
  }
  if (!rewrite_units(b, he_dead, v_dead, n_f)) return std::nullopt;
  return b.finish(he_dead, v_dead);
}

}  // namespace

Morphism compose(const Morphism& f, const Morphism& g) {
  if (f.n_out != g.n_in) throw GraphError("arity mismatch in composition");
  Morphism out{f.n_in, g.n_out, {}};
  for (const auto& tf : f.sum.terms())
    for (const auto& tg : g.sum.terms()) {
      auto r = compose_terms(*tf.graph, *tg.graph, f.n_in, f.n_out, g.n_in,
                             f.n_in);
      if (r) out.sum.add(*r, tf.coeff * tg.coeff);
    }
  return out;
}

Morphism glue_onto(const Morphism& f, const OrientedGraph& target,
                   int target_leaves) {
  if (f.n_out != target_leaves) throw GraphError("arity mismatch in gluing");
  Morphism tgt{target_leaves, 0, {}};
  tgt.sum.add(target, 1);
  return compose(f, tgt);
}

Morphism tensor(const Morphism& f, const Morphism& g) {
  Morphism out{f.n_in + g.n_in, f.n_out + g.n_out, {}};
  for (const auto& tf : f.sum.terms())
    for (const auto& tg : g.sum.terms()) {
      const BWGraph& fa = *tf.graph;
      const BWGraph& fb = *tg.graph;
      const int nva = fa.num_vertices(), nha = fa.num_half_edges();
      BWGraph c;
      c.allow_low_valence = fa.allow_low_valence || fb.allow_low_valence;
      c.color = fa.color;
      c.color.insert(c.color.end(), fb.color.begin(), fb.color.end());
      c.white_label = fa.white_label;
      c.white_label.insert(c.white_label.end(), fb.white_label.begin(),
                           fb.white_label.end());
      c.start_he = fa.start_he;
      for (int v = 0; v < fb.num_vertices(); ++v)
        c.start_he.push_back(fb.start_he[v] >= 0 ? fb.start_he[v] + nha : -1);
      c.source = fa.source;
      for (int h = 0; h < fb.num_half_edges(); ++h)
        c.source.push_back(fb.source[h] >= 0 ? fb.source[h] + nva : -1);
      c.partner = fa.partner;
      for (int h = 0; h < fb.num_half_edges(); ++h)
        c.partner.push_back(fb.partner[h] + nha);
      c.next_he = fa.next_he;
      for (int h = 0; h < fb.num_half_edges(); ++h)
        c.next_he.push_back(fb.next_he[h] + nha);
      c.leaf_label = fa.leaf_label;
      c.second_label = fa.second_label;
      for (int h = 0; h < fb.num_half_edges(); ++h) {
        int l = fb.leaf_label[h], l2 = fb.second_label[h];
        c.leaf_label.push_back(l == 0 ? 0 : (l <= g.n_in ? f.n_in + l
                                                         : f.n_in + f.n_out + l));
        c.second_label.push_back(l2 == 0 ? 0
                                         : f.n_in + f.n_out + (l2 - g.n_in) + g.n_in);
      }
      // f's outputs shift past g's inputs
      for (int h = 0; h < nha; ++h) {
        if (c.leaf_label[h] > f.n_in) c.leaf_label[h] += g.n_in;
        if (c.second_label[h] > f.n_in) c.second_label[h] += g.n_in;
      }
      Orientation o;
      for (int v = 0; v < nva; ++v) o.order.push_back({true, v});
      for (int h = 0; h < nha; ++h) o.order.push_back({false, h});
      for (int v = 0; v < fb.num_vertices(); ++v) o.order.push_back({true, nva + v});
      for (int h = 0; h < fb.num_half_edges(); ++h) o.order.push_back({false, nha + h});
      out.sum.add(canonical_form(c, o), tf.coeff * tg.coeff);
    }
  return out;
}

}  // namespace hhop
