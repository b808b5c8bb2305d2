#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhop {

struct GraphError : std::runtime_error {
  explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

enum class Color : uint8_t { black, white };

// A generator of the orientation line: either a vertex or a half-edge.
struct GenRef {
  bool is_vertex;
  int id;
  friend bool operator==(const GenRef&, const GenRef&) = default;
};

// Ordered list of all generators together with a sign.  Two orientations
// agree iff the permutation relating them is even (after matching signs).
struct Orientation {
  std::vector<GenRef> order;
  int sign = 1;
};

// Combinatorial fat graph with black/white vertices, leaf labels, white
// labels and start half-edges.  Vertices are 0..nv-1, half-edges 0..nh-1.
//
// A "strand" is a half-edge with no source vertex (source == -1, fixed by
// the involution).  It models the exceptional one-leaf graph and, inside
// morphisms, an identity wire carrying an input label and an output label.
struct BWGraph {
  std::vector<int> source;        // per half-edge; -1 for strands
  std::vector<int> partner;       // involution; partner[h] == h for leaves
  std::vector<int> next_he;       // cyclic successor at the source vertex
  std::vector<int> leaf_label;    // >0 on labeled leaves/strands, else 0
  std::vector<int> second_label;  // strands only: output label, else 0
  std::vector<Color> color;       // per vertex
  std::vector<int> white_label;   // per vertex; 0 on black vertices
  std::vector<int> start_he;      // per vertex; -1 on black vertices
  bool allow_low_valence = false; // permits black vertices of valence < 3

  int num_vertices() const { return static_cast<int>(color.size()); }
  int num_half_edges() const { return static_cast<int>(source.size()); }
  int num_generators() const { return num_vertices() + num_half_edges(); }

  bool is_leaf(int h) const { return partner[h] == h; }
  bool is_strand(int h) const { return source[h] < 0; }
  int valence(int v) const;
  // spokes of source(h) starting at h, in cyclic order
  std::vector<int> spokes_from(int h) const;
  // some half-edge at v (the smallest id), -1 if none
  int first_spoke(int v) const;
  std::vector<int> spokes_of(int v) const;

  int degree() const;          // sum over black (|v|-3) and white (|v|-1)
  int num_internal_edges() const;
  int num_leaves() const;

  void check() const;          // structural invariants; throws GraphError

  // Default generator order: vertices 0..nv-1 then half-edges 0..nh-1.
  Orientation default_orientation() const;
};

using Cert = std::vector<int64_t>;

struct CanonResult {
  BWGraph graph;    // canonically labeled
  Cert cert;        // serialized form of `graph`; total order on classes
  int sign = 1;     // input orientation relative to canonical order
  bool zero = false;// an automorphism reverses orientation
};

// Deterministic canonical labeling respecting fat structure, colors,
// white labels, start half-edges and leaf labels.  The orientation is
// reduced to a sign against the canonical generator order.
CanonResult canonical_form(const BWGraph& g, const Orientation& o);

// An oriented graph held in canonical form.
struct OrientedGraph {
  BWGraph graph;
  Cert cert;
  int sign = 1;

  static OrientedGraph canonical(const BWGraph& g, const Orientation& o);
  static OrientedGraph canonical_default(const BWGraph& g);
};

// Formal integer combination of canonical oriented graphs.
class GraphSum {
 public:
  void add(const OrientedGraph& g, long long coeff);
  void add(const CanonResult& c, long long coeff);
  void add_sum(const GraphSum& other, long long coeff = 1);
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  struct Term {
    const BWGraph* graph;
    const Cert* cert;
    long long coeff;
  };
  std::vector<Term> terms() const;

  friend bool operator==(const GraphSum& a, const GraphSum& b);

 private:
  std::map<Cert, std::pair<BWGraph, long long>> terms_;
};

// ---- boundary cycles and surface topology ----

// Orbits of the face-traversal permutation on travel slots (half-edge,
// out/in).  A leaf bounces back on itself; a white vertex blocks the
// traversal (it is a boundary circle of its own and is not reported).
// Each orbit is the cyclic sequence of half-edges as visited, so a leaf
// appears twice in its cycle.
std::vector<std::vector<int>> boundary_cycles(const BWGraph& g);

// Boundary components of the thickened surface: orbits of the traversal
// that walks around white corners, plus one circle per white vertex.
struct SurfaceTopology {
  int boundary_components;
  int euler_characteristic;
  int genus;
};
SurfaceTopology surface_topology(const BWGraph& g);

// Number of non-white boundary components of the thickened surface.
int surface_cycle_count(const BWGraph& g);

// ---- collapse / blow-up ----

// Collapse the edge containing half-edge h.  Rejects loops, edges between
// two white vertices, and leaves.  The merged vertex is white if either
// end was white.  Orientation rule: v1 ^ v2 ^ h1 ^ h2 ^ X  ->  v ^ X.
std::pair<BWGraph, Orientation> collapse_edge(const BWGraph& g,
                                              const Orientation& o, int h);

OrientedGraph collapse(const OrientedGraph& g, int h);

// All blow-ups of g with induced orientations: the graph-complex
// differential.  Black vertices split black-black (both ends >= 3-valent),
// white vertices split white-black (black end >= 3-valent, white keeps
// its label, valence >= 1).  Terms are canonicalized and combined.
GraphSum blowups(const OrientedGraph& g);

// Blow-ups at a single vertex of a (not necessarily canonical) graph.
GraphSum blowups_at_vertex(const BWGraph& g, const Orientation& o, int v);

// ---- morphism-level helpers ----

// A formal combination of graphs with n_in input leaves (labels 1..n_in)
// and n_out output leaves (labels n_in+1..n_in+n_out).
struct Morphism {
  int n_in = 0;
  int n_out = 0;
  GraphSum sum;

  friend bool operator==(const Morphism& a, const Morphism& b);
};

// Gluing of output leaves of f to input leaves of g with the same label.
// The orientation of a composite is the juxtaposition of orientations;
// strand generators are deleted from the front with their Koszul parity.
// Unital corollas (valence-1 black vertices) are rewritten eagerly:
// glued into a 3-valent vertex they smooth to a wire, into higher valence
// they kill the term.
Morphism compose(const Morphism& f, const Morphism& g);

// Disjoint union, inputs and outputs renumbered side by side.
Morphism tensor(const Morphism& f, const Morphism& g);

Morphism identity_morphism(int n);

// Glue all outputs of f (labels n_in+1..) to the labeled leaves 1..n of a
// target graph (e.g. the one-white-vertex graph l_n); the result keeps
// f's inputs.  Target leaves count must equal f.n_out.
Morphism glue_onto(const Morphism& f, const OrientedGraph& target,
                   int target_leaves);

// ---- JSON / DOT ----

std::string to_json(const BWGraph& g, int orientation_sign);
std::pair<BWGraph, int> from_json(const std::string& text);
std::string to_dot(const BWGraph& g);

}  // namespace hhop
