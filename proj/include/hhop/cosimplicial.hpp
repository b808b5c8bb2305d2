#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hhop/chain_complex.hpp"

namespace hhop {

// Configurations of labeled points on disjoint circles and open intervals,
// up to isotopy: a linear order per interval, a cyclic order per circle.
struct OneManifold {
  int circles = 0;
  int intervals = 0;
};

// Canonical encoding: per component the label sequence along the
// orientation; circles are rotated so the smallest label comes first.
struct Configuration {
  std::vector<std::vector<int>> on_circle;    // size = circles
  std::vector<std::vector<int>> on_interval;  // size = intervals

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
  std::string key() const;
};

// Finite levels of a cosimplicial set with verified identities.
class TruncatedCosimplicialSet {
 public:
  // levels 0..q_max; level q is an ordered finite set
  std::vector<std::vector<std::string>> levels;
  // coface[q][i] maps level q to level q+1, 0 <= i <= q+1
  std::vector<std::vector<std::vector<int>>> coface;
  // codegeneracy[q][j] maps level q to level q-1, 0 <= j <= q-1
  std::vector<std::vector<std::vector<int>>> codegeneracy;

  int q_max() const { return static_cast<int>(levels.size()) - 1; }
  // throws on a violated cosimplicial identity
  void check_identities() const;
};

// K(q, X): all configurations of labels 1..q on X (labels 0..q-1 inside).
std::vector<Configuration> configuration_components(int q, const OneManifold& x);

// complete configurations: at least one point on each circle
bool is_complete(const Configuration& c);

// The cosimplicial set K(. + 1, X) truncated at level q_max; cofaces double
// a point to its right (the last one doubles the first point to its left),
// codegeneracies forget a point.  Set `complete` to restrict to K_c.
TruncatedCosimplicialSet configuration_cosimplicial(const OneManifold& x,
                                                    int q_max, bool complete);

// Chain complex of a truncated cosimplicial set: Z X^q in degree -q with
// the alternating coface sum.
FreeChainComplex cosimplicial_chain_complex(const TruncatedCosimplicialSet& t);

// number of degree-0 classes predicted for the complete-configuration
// complex: elements of level 0 with d^0 = d^1
int count_degree_zero_classes(const TruncatedCosimplicialSet& t);

// the complex of monotone injections [r] -> [q], q <= q_max, with the
// contracting homotopy s (drop q from the target when unused, sign (-1)^q)
struct InjComplex {
  FreeChainComplex complex;                  // Z Inj(r)^q in degree -q
  std::map<int, SparseIntMatrix> homotopy;   // degree +1 maps
  std::map<int, SparseIntMatrix> identity;
  int r = 0;
  int q_max = 0;
};
InjComplex inj_complex(int r, int q_max);

// classification of a simplex: the unique non-coface y with x = D(y);
// D is recorded by the image of the monotone injection; unique unless
// y lies in level 0 with equal first cofaces.
struct SimplexClass {
  int level = 0;
  int index = 0;                 // y as an index into its level
  std::vector<int> injection;    // image of [p] -> [q], p+1 entries
  bool unique_injection = true;
};
SimplexClass classify_simplex(const TruncatedCosimplicialSet& t, int q, int x);

// brute-force oracle: enumerate all (y, coface word) factorizations
SimplexClass classify_simplex_oracle(const TruncatedCosimplicialSet& t, int q,
                                     int x);

}  // namespace hhop
