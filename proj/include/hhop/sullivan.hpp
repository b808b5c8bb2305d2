#pragma once

#include "hhop/graph.hpp"

namespace hhop {

// A diagram class: trivalent-black graphs modulo the boundaries of graphs
// with one 4-valent black vertex.  Held as the lexicographically smallest
// canonical representative of the slide orbit, with a sign; classes whose
// orbit reaches their own negative are zero.
struct SullivanDiagram {
  bool zero = false;
  BWGraph rep;
  Cert cert;
  int sign = 1;

  friend bool operator==(const SullivanDiagram& a, const SullivanDiagram& b) {
    if (a.zero || b.zero) return a.zero == b.zero;
    return a.cert == b.cert && a.sign == b.sign;
  }
};

// Formal combination keyed by orbit representatives.
class SDSum {
 public:
  void add(const SullivanDiagram& d, long long coeff);
  void add_sum(const SDSum& other, long long coeff = 1);
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  struct Term {
    const BWGraph* rep;
    const Cert* cert;
    long long coeff;
  };
  std::vector<Term> terms() const;
  friend bool operator==(const SDSum& a, const SDSum& b);

 private:
  std::map<Cert, std::pair<BWGraph, long long>> terms_;
};

// normal form of a trivalent-black graph; throws on higher-valence blacks
SullivanDiagram from_bw(const OrientedGraph& g);

// one slide move: the other resolution of the 4-valent graph obtained by
// collapsing the black-black edge containing h, with its relation sign
std::optional<SullivanDiagram> slide_move(const SullivanDiagram& d, int h);

// the induced differential: blow-ups of a representative, keeping the
// trivalent-black terms, normalized and combined
SDSum sd_differential(const SullivanDiagram& d);

bool is_cycle(const SullivanDiagram& d);

// the faces: blow-ups of the white vertices with two-spoke blocks, indexed
// by white label and the cyclic position of the block start; these are the
// only terms surviving in the quotient, listed before cancellation
struct Face {
  int white_label;
  int position;  // 0-based, counted from the start half-edge
  SullivanDiagram value;
  long long coeff;
};
std::vector<Face> sd_faces(const SullivanDiagram& d);

// the two generator families: a white vertex with 2g+2 spokes, the odd
// spokes joined by a comb tree; t_g additionally combs the even spokes
// together with one labeled leaf
SullivanDiagram mu_g(int g);
SullivanDiagram t_g(int g);

// classical encoding: per circle a cyclic sequence of attachment sites,
// each site an ordered block of chord ends and labeled leaves
struct SiteEntry {
  bool is_leaf;
  int label;  // leaf label or chord id
};
struct SiteEncoding {
  // circles in white-label order; each circle: sites in cyclic order from
  // the start half-edge
  std::vector<std::vector<std::vector<SiteEntry>>> circles;
  std::string to_string() const;
};
SiteEncoding encode_sites(const SullivanDiagram& d);

// expand the encoding back to a trivalent-black representative (left-comb
// trees per multi-entry site) and normalize
SullivanDiagram decode_sites(const SiteEncoding& e, int n_leaves);

std::string sd_to_json(const SullivanDiagram& d);

}  // namespace hhop
