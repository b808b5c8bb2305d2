#include "hhop/sullivan.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace hhop {

namespace {

bool trivalent_black(const BWGraph& g) {
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.color[v] == Color::black && g.valence(v) != 3) return false;
  return true;
}

bool has_white(const BWGraph& g) {
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.color[v] == Color::white) return true;
  return false;
}

// the two trivalent resolutions of the graph obtained by collapsing the
// edge containing h; returned as canonical terms with their signs
GraphSum resolutions_through(const BWGraph& g, int h) {
  Orientation o = g.default_orientation();
  auto [collapsed, co] = collapse_edge(g, o, h);
  CanonResult c = canonical_form(collapsed, co);
  if (c.zero) return {};
  GraphSum all = blowups(OrientedGraph{c.graph, c.cert, 1});
  GraphSum kept;
  for (const auto& t : all.terms())
    if (trivalent_black(*t.graph))
      kept.add(OrientedGraph{*t.graph, *t.cert, 1}, t.coeff);
  return kept;
}

}  // namespace

SullivanDiagram from_bw(const OrientedGraph& g) {
  if (!trivalent_black(g.graph))
    throw GraphError("Sullivan normal form needs trivalent black vertices");
  if (!has_white(g.graph))
    throw GraphError("Sullivan diagrams need at least one circle");
  // slide orbit search: certificates with signs relative to the seed
  std::map<Cert, std::pair<BWGraph, int>> orbit;
  std::deque<Cert> queue;
  orbit.emplace(g.cert, std::make_pair(g.graph, 1));
  queue.push_back(g.cert);
  bool zero = false;
  while (!queue.empty() && !zero) {
    Cert cur = queue.front();
    queue.pop_front();
    auto [graph, sign] = orbit.at(cur);
    for (int h = 0; h < graph.num_half_edges(); ++h) {
      int p = graph.partner[h];
      if (p <= h) continue;  // one direction per edge
      int v1 = graph.source[h], v2 = graph.source[p];
      if (v1 < 0 || v2 < 0 || v1 == v2) continue;
      if (graph.color[v1] != Color::black || graph.color[v2] != Color::black)
        continue;
      GraphSum res = resolutions_through(graph, h);
      // the relation: sum of the kept resolutions vanishes in the quotient
      std::vector<GraphSum::Term> terms = res.terms();
      if (terms.size() == 1 && terms[0].coeff % 2 == 0) {
        // both resolutions give the same class: 2x ~ 0
        if (*terms[0].cert == cur) {
          zero = true;
          break;
        }
        continue;
      }
      if (terms.size() != 2) continue;
      int self = -1;
      for (int i = 0; i < 2; ++i)
        if (*terms[i].cert == cur) self = i;
      if (self < 0) continue;
      const auto& other = terms[1 - self];
      long long rel = -terms[self].coeff * other.coeff;  // cur = rel * other
      int new_sign = sign * static_cast<int>(rel);
      auto it = orbit.find(*other.cert);
      if (it == orbit.end()) {
        orbit.emplace(*other.cert, std::make_pair(*other.graph, new_sign));
        queue.push_back(*other.cert);
      } else if (it->second.second != new_sign) {
        zero = true;
        break;
      }
    }
  }
  SullivanDiagram out;
  if (zero) {
    out.zero = true;
    return out;
  }
  auto best = orbit.begin();  // lexicographically smallest certificate
  out.rep = best->second.first;
  out.cert = best->first;
  out.sign = g.sign * best->second.second;
  return out;
}

std::optional<SullivanDiagram> slide_move(const SullivanDiagram& d, int h) {
  if (d.zero) return std::nullopt;
  const BWGraph& g = d.rep;
  int p = g.partner[h];
  if (p == h) return std::nullopt;
  int v1 = g.source[h], v2 = g.source[p];
  if (v1 < 0 || v2 < 0 || v1 == v2) return std::nullopt;
  if (g.color[v1] != Color::black || g.color[v2] != Color::black)
    return std::nullopt;
  GraphSum res = resolutions_through(g, h);
  auto terms = res.terms();
  if (terms.size() != 2) return std::nullopt;
  int self = -1;
  for (int i = 0; i < 2; ++i)
    if (*terms[i].cert == d.cert) self = i;
  if (self < 0) return std::nullopt;
  const auto& other = terms[1 - self];
  SullivanDiagram out;
  out.rep = *other.graph;
  out.cert = *other.cert;
  out.sign = d.sign * static_cast<int>(-terms[self].coeff * other.coeff);
  return out;
}

void SDSum::add(const SullivanDiagram& d, long long coeff) {
  if (d.zero || coeff == 0) return;
  auto it = terms_.find(d.cert);
  if (it == terms_.end()) {
    terms_.emplace(d.cert, std::make_pair(d.rep, coeff * d.sign));
  } else {
    it->second.second += coeff * d.sign;
    if (it->second.second == 0) terms_.erase(it);
  }
}

void SDSum::add_sum(const SDSum& other, long long coeff) {
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

std::vector<SDSum::Term> SDSum::terms() const {
  std::vector<Term> out;
  for (const auto& [cert, gv] : terms_) out.push_back({&gv.first, &cert, gv.second});
  return out;
}

bool operator==(const SDSum& a, const SDSum& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib)
    if (ia->first != ib->first || ia->second.second != ib->second.second)
      return false;
  return true;
}

SDSum sd_differential(const SullivanDiagram& d) {
  SDSum out;
  if (d.zero) return out;
  GraphSum blown = blowups(OrientedGraph{d.rep, d.cert, d.sign});
  for (const auto& t : blown.terms()) {
    if (!trivalent_black(*t.graph)) continue;
    SullivanDiagram nf = from_bw(OrientedGraph{*t.graph, *t.cert, 1});
    out.add(nf, t.coeff);
  }
  return out;
}

bool is_cycle(const SullivanDiagram& d) { return sd_differential(d).is_zero(); }

std::vector<Face> sd_faces(const SullivanDiagram& d) {
  std::vector<Face> out;
  if (d.zero) return out;
  const BWGraph& g = d.rep;
  Orientation o = g.default_orientation();
  o.sign = d.sign;
  // direct construction: one face per white vertex and cyclic position
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.color[v] != Color::white) continue;
    std::vector<int> spokes = g.spokes_from(g.start_he[v]);
    const int k = static_cast<int>(spokes.size());
    if (k < 2) continue;
    for (int i = 0; i < k; ++i) {
      BWGraph blown = g;
      int v2 = blown.num_vertices();
      int e1 = blown.num_half_edges(), e2 = e1 + 1;
      blown.color.push_back(Color::black);
      blown.white_label.push_back(0);
      blown.start_he.push_back(-1);
      blown.source.push_back(v);
      blown.source.push_back(v2);
      blown.partner.push_back(e2);
      blown.partner.push_back(e1);
      blown.next_he.push_back(-1);
      blown.next_he.push_back(-1);
      blown.leaf_label.push_back(0);
      blown.leaf_label.push_back(0);
      blown.second_label.push_back(0);
      blown.second_label.push_back(0);
      int s1 = spokes[i], s2 = spokes[(i + 1) % k];
      blown.source[s1] = v2;
      blown.source[s2] = v2;
      std::vector<int> at_new{e2, s1, s2};
      for (size_t x = 0; x < at_new.size(); ++x)
        blown.next_he[at_new[x]] = at_new[(x + 1) % at_new.size()];
      std::vector<int> rest;
      for (int x = 2; x < k; ++x) rest.push_back(spokes[(i + x) % k]);
      rest.push_back(e1);
      for (size_t x = 0; x < rest.size(); ++x)
        blown.next_he[rest[x]] = rest[(x + 1) % rest.size()];
      int st = g.start_he[v];
      blown.start_he[v] = (st == s1 || st == s2) ? e1 : st;
      Orientation no;
      no.sign = o.sign * ((v % 2 == 0) ? 1 : -1);
      no.order.push_back({true, v});
      no.order.push_back({true, v2});
      no.order.push_back({false, e1});
      no.order.push_back({false, e2});
      for (const GenRef& r : o.order)
        if (!(r.is_vertex && r.id == v)) no.order.push_back(r);
      CanonResult c = canonical_form(blown, no);
      if (c.zero) {
        out.push_back({g.white_label[v], i, SullivanDiagram{true, {}, {}, 1}, 0});
        continue;
      }
      SullivanDiagram nf = from_bw(OrientedGraph{c.graph, c.cert, 1});
      out.push_back({g.white_label[v], i, nf, c.sign});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// generators

namespace {

// comb tree joining the given leaf half-edges of g (already present as
// unpaired leaves); externals in the given order, the last one may be a
// labeled leaf that stays free
void attach_comb(BWGraph& g, const std::vector<int>& attach, int extra_leaf_label) {
  const int m = static_cast<int>(attach.size()) + (extra_leaf_label > 0 ? 1 : 0);
  if (m < 2) throw GraphError("comb needs at least two externals");
  if (m == 2 && extra_leaf_label == 0) {
    // bare edge
    g.partner[attach[0]] = attach[1];
    g.partner[attach[1]] = attach[0];
    return;
  }
  // externals x_1..x_m: x_i pairs with attach[i-1], the last may be a leaf
  int nverts = m - 2;
  std::vector<int> xs;
  for (int i = 0; i < m; ++i) {
    int he = g.num_half_edges();
    g.source.push_back(-2);  // assigned below
    g.partner.push_back(he);
    g.next_he.push_back(-1);
    g.leaf_label.push_back(0);
    g.second_label.push_back(0);
    xs.push_back(he);
  }
  std::vector<int> ups;
  for (int i = 0; i + 1 < nverts; ++i) {
    int u = g.num_half_edges();
    g.source.push_back(-2);
    g.partner.push_back(u + 1);
    g.next_he.push_back(-1);
    g.leaf_label.push_back(0);
    g.second_label.push_back(0);
    g.source.push_back(-2);
    g.partner.push_back(u);
    g.next_he.push_back(-1);
    g.leaf_label.push_back(0);
    g.second_label.push_back(0);
    ups.push_back(u);
  }
  int vbase = g.num_vertices();
  for (int i = 0; i < nverts; ++i) {
    g.color.push_back(Color::black);
    g.white_label.push_back(0);
    g.start_he.push_back(-1);
  }
  // vertex i (0-based): spokes (down, x_{i+2}, up) except the first vertex
  // has (x_1, x_2, up) and the last ends with x_m; the rotations run
  // opposite to the circle so the tree embeds inside the disk
  for (int i = 0; i < nverts; ++i) {
    std::vector<int> sp;
    if (i == 0) {
      sp.push_back(xs[0]);
      sp.push_back(xs[1]);
    } else {
      sp.push_back(ups[i - 1] + 1);  // down side of the previous up edge
      sp.push_back(xs[i + 1]);
    }
    if (i + 1 < nverts)
      sp.push_back(ups[i]);
    else
      sp.push_back(xs[m - 1]);
    std::reverse(sp.begin(), sp.end());
    for (size_t j = 0; j < sp.size(); ++j) {
      g.source[sp[j]] = vbase + i;
      g.next_he[sp[j]] = sp[(j + 1) % sp.size()];
    }
  }
  // pair the externals with the attachment leaves; the last may be free
  for (int i = 0; i < m; ++i) {
    if (i < static_cast<int>(attach.size())) {
      g.partner[xs[i]] = attach[i];
      g.partner[attach[i]] = xs[i];
      g.leaf_label[attach[i]] = 0;
    } else {
      g.partner[xs[i]] = xs[i];
      g.leaf_label[xs[i]] = extra_leaf_label;
    }
  }
}

BWGraph white_core(int n_spokes) {
  BWGraph g;
  g.source.assign(n_spokes, 0);
  g.partner.resize(n_spokes);
  g.next_he.resize(n_spokes);
  g.leaf_label.assign(n_spokes, 0);
  g.second_label.assign(n_spokes, 0);
  for (int i = 0; i < n_spokes; ++i) {
    g.partner[i] = i;
    g.next_he[i] = (i + 1) % n_spokes;
  }
  g.color.assign(1, Color::white);
  g.white_label.assign(1, 1);
  g.start_he.assign(1, 0);
  return g;
}

}  // namespace

SullivanDiagram mu_g(int g_) {
  if (g_ < 1) throw GraphError("mu_g needs g >= 1");
  BWGraph g = white_core(2 * g_ + 2);
  std::vector<int> odd;
  for (int i = 0; i < 2 * g_ + 2; i += 2) odd.push_back(i);
  int label = 1;
  for (int i = 1; i < 2 * g_ + 2; i += 2) g.leaf_label[i] = label++;
  attach_comb(g, odd, 0);
  g.check();
  return from_bw(OrientedGraph::canonical_default(g));
}

SullivanDiagram t_g(int g_) {
  if (g_ < 1) throw GraphError("t_g needs g >= 1");
  BWGraph g = white_core(2 * g_ + 2);
  std::vector<int> odd, even;
  for (int i = 0; i < 2 * g_ + 2; i += 2) odd.push_back(i);
  for (int i = 1; i < 2 * g_ + 2; i += 2) even.push_back(i);
  attach_comb(g, odd, 0);
  attach_comb(g, even, 1);
  g.check();
  return from_bw(OrientedGraph::canonical_default(g));
}

// ---------------------------------------------------------------------------
// classical encoding

std::string SiteEncoding::to_string() const {
  std::ostringstream os;
  for (size_t c = 0; c < circles.size(); ++c) {
    if (c) os << " ";
    os << "circle" << (c + 1) << "[";
    for (size_t s = 0; s < circles[c].size(); ++s) {
      if (s) os << " ";
      os << "(";
      for (size_t e = 0; e < circles[c][s].size(); ++e) {
        if (e) os << ",";
        const SiteEntry& en = circles[c][s][e];
        os << (en.is_leaf ? "l" : "c") << en.label;
      }
      os << ")";
    }
    os << "]";
  }
  return os.str();
}

namespace {

// flatten the black tree hanging off `he` (a white spoke paired into the
// tree) into the planar list of its far connections
void flatten_tree(const BWGraph& g, int enter, std::vector<int>& out_slots) {
  // enter: a half-edge at a black vertex (the side toward the caller)
  std::vector<int> spokes = g.spokes_from(enter);
  for (size_t i = 1; i < spokes.size(); ++i) {
    int h = spokes[i];
    int p = g.partner[h];
    if (p == h) {
      out_slots.push_back(h);  // leaf on the tree
    } else if (g.color[g.source[p]] == Color::black) {
      flatten_tree(g, p, out_slots);
    } else {
      out_slots.push_back(h);  // chord end toward a circle
    }
  }
}

}  // namespace

SiteEncoding encode_sites(const SullivanDiagram& d) {
  SiteEncoding out;
  if (d.zero) return out;
  const BWGraph& g = d.rep;
  // collect whites by label
  std::vector<int> whites;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.color[v] == Color::white) whites.push_back(v);
  std::sort(whites.begin(), whites.end(),
            [&](int a, int b) { return g.white_label[a] < g.white_label[b]; });
  // chord ids: pair of "slots"; a slot is a half-edge at the white vertex
  // (single chord/leaf) or a tree half-edge
  std::map<int, int> chord_id;  // half-edge -> id
  int next_chord = 1;
  auto slot_entry = [&](int h) -> SiteEntry {
    if (g.partner[h] == h) return {true, g.leaf_label[h]};
    // chord: identify by the unordered pair (h, partner)
    int key = std::min(h, g.partner[h]);
    auto it = chord_id.find(key);
    int id;
    if (it == chord_id.end()) {
      id = next_chord++;
      chord_id.emplace(key, id);
    } else {
      id = it->second;
    }
    return {false, id};
  };
  for (int v : whites) {
    std::vector<std::vector<SiteEntry>> sites;
    for (int h : g.spokes_from(g.start_he[v])) {
      std::vector<SiteEntry> block;
      int p = g.partner[h];
      if (p == h) {
        block.push_back({true, g.leaf_label[h]});
      } else if (g.color[g.source[p]] == Color::white) {
        block.push_back(slot_entry(h));
      } else {
        std::vector<int> slots;
        flatten_tree(g, p, slots);
        for (int s : slots) block.push_back(slot_entry(s));
      }
      sites.push_back(std::move(block));
    }
    out.circles.push_back(std::move(sites));
  }
  return out;
}

SullivanDiagram decode_sites(const SiteEncoding& e, int n_leaves) {
  // rebuild: one white vertex per circle; singleton sites attach directly,
  // larger sites expand to left-comb trees
  BWGraph g;
  struct Slot {
    int he;
  };
  std::map<int, std::vector<int>> chord_ends;  // chord id -> half-edges
  (void)n_leaves;
  for (size_t c = 0; c < e.circles.size(); ++c) {
    int v = g.num_vertices();
    g.color.push_back(Color::white);
    g.white_label.push_back(static_cast<int>(c + 1));
    g.start_he.push_back(-1);
    std::vector<int> spokes;
    std::vector<std::pair<int, const std::vector<SiteEntry>*>> pending;
    for (const auto& site : e.circles[c]) {
      int he = g.num_half_edges();
      g.source.push_back(v);
      g.partner.push_back(he);
      g.next_he.push_back(-1);
      g.leaf_label.push_back(0);
      g.second_label.push_back(0);
      spokes.push_back(he);
      if (site.size() == 1) {
        if (site[0].is_leaf)
          g.leaf_label[he] = site[0].label;
        else
          chord_ends[site[0].label].push_back(he);
      } else {
        pending.push_back({he, &site});
      }
    }
    for (size_t i = 0; i < spokes.size(); ++i)
      g.next_he[spokes[i]] = spokes[(i + 1) % spokes.size()];
    g.start_he[v] = spokes.empty() ? -1 : spokes[0];
    if (spokes.empty()) throw GraphError("empty circle in a site encoding");
    // expand multi-entry sites
    for (auto& [root_he, site] : pending) {
      // comb with externals = the site entries, hanging off root_he
      std::vector<int> ext;
      for (const SiteEntry& en : *site) {
        int he = g.num_half_edges();
        g.source.push_back(-2);
        g.partner.push_back(he);
        g.next_he.push_back(-1);
        g.leaf_label.push_back(en.is_leaf ? en.label : 0);
        g.second_label.push_back(0);
        if (!en.is_leaf) chord_ends[en.label].push_back(he);
        ext.push_back(he);
      }
      // vertices: |site| - 1 trivalent vertices in a comb rooted at root_he
      int m = static_cast<int>(ext.size());
      int nverts = m - 1;
      std::vector<int> downs{root_he};
      for (int i = 0; i + 1 < nverts; ++i) {
        int u = g.num_half_edges();
        g.source.push_back(-2);
        g.partner.push_back(u + 1);
        g.next_he.push_back(-1);
        g.leaf_label.push_back(0);
        g.second_label.push_back(0);
        g.source.push_back(-2);
        g.partner.push_back(u);
        g.next_he.push_back(-1);
        g.leaf_label.push_back(0);
        g.second_label.push_back(0);
      }
      int vbase = g.num_vertices();
      for (int i = 0; i < nverts; ++i) {
        g.color.push_back(Color::black);
        g.white_label.push_back(0);
        g.start_he.push_back(-1);
      }
      // the comb: vertex 0 attaches (down0, ext0, up0), vertex i attaches
      // (down_i = partner(up_{i-1}), ext_i, up_i), last: (down, ext_{m-2}, ext_{m-1})
      int prev_up_partner = -1;
      int root_partner = g.num_half_edges();
      g.source.push_back(vbase);
      g.partner.push_back(root_he);
      g.next_he.push_back(-1);
      g.leaf_label.push_back(0);
      g.second_label.push_back(0);
      g.partner[root_he] = root_partner;
      int up_base = root_partner - 2 * (nverts - 1);
      for (int i = 0; i < nverts; ++i) {
        std::vector<int> sp;
        if (i == 0)
          sp.push_back(root_partner);
        else
          sp.push_back(prev_up_partner);
        sp.push_back(ext[i]);
        if (i + 1 < nverts) {
          int u = up_base + 2 * i;
          sp.push_back(u);
          prev_up_partner = u + 1;
        } else {
          sp.push_back(ext[m - 1]);
        }
        for (size_t j = 0; j < sp.size(); ++j) {
          g.source[sp[j]] = vbase + i;
          g.next_he[sp[j]] = sp[(j + 1) % sp.size()];
        }
      }
    }
  }
  // pair chords
  for (auto& [id, ends] : chord_ends) {
    if (ends.size() != 2) throw GraphError("chord does not have two ends");
    g.partner[ends[0]] = ends[1];
    g.partner[ends[1]] = ends[0];
  }
  g.check();
  return from_bw(OrientedGraph::canonical_default(g));
}

std::string sd_to_json(const SullivanDiagram& d) {
  std::ostringstream os;
  if (d.zero) return "{\"zero\": true}";
  os << "{\"sign\": " << d.sign << ", \"sites\": \""
     << encode_sites(d).to_string() << "\", \"graph\": " << to_json(d.rep, d.sign)
     << "}";
  return os.str();
}

}  // namespace hhop
