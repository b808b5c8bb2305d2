#include "hhop/cosimplicial.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace hhop {

namespace {

std::vector<int> rotate_min_first(const std::vector<int>& cyc) {
  if (cyc.empty()) return cyc;
  auto it = std::min_element(cyc.begin(), cyc.end());
  std::vector<int> out(it, cyc.end());
  out.insert(out.end(), cyc.begin(), it);
  return out;
}

}  // namespace

std::string Configuration::key() const {
  std::ostringstream os;
  for (const auto& c : on_circle) {
    os << "c(";
    for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ")";
  }
  for (const auto& c : on_interval) {
    os << "i(";
    for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ")";
  }
  return os.str();
}

std::vector<Configuration> configuration_components(int q,
                                                    const OneManifold& x) {
  std::vector<Configuration> out;
  Configuration cur;
  cur.on_circle.assign(x.circles, {});
  cur.on_interval.assign(x.intervals, {});
  // place the labels 0..q-1 one at a time, in every possible slot
  std::function<void(int)> place = [&](int label) {
    if (label == q) {
      Configuration c = cur;
      for (auto& cyc : c.on_circle) cyc = rotate_min_first(cyc);
      out.push_back(std::move(c));
      return;
    }
    for (auto& comp : cur.on_circle) {
      for (size_t pos = 0; pos <= comp.size(); ++pos) {
        if (comp.empty() && pos > 0) break;
        comp.insert(comp.begin() + pos, label);
        place(label + 1);
        comp.erase(comp.begin() + pos);
      }
      // on a circle, inserting the first point anywhere is the same slot
      if (comp.empty()) continue;
    }
    for (auto& comp : cur.on_interval) {
      for (size_t pos = 0; pos <= comp.size(); ++pos) {
        comp.insert(comp.begin() + pos, label);
        place(label + 1);
        comp.erase(comp.begin() + pos);
      }
    }
    return;
  };
  // fix the insertion semantics for circles: a point inserted into an
  // empty circle occupies one canonical slot; into a nonempty circle there
  // are size-many distinct gaps (cyclically), realized as positions
  // 1..size with position 0 equivalent to size
  std::function<void(int)> place2 = [&](int label) {
    if (label == q) {
      Configuration c = cur;
      for (auto& cyc : c.on_circle) cyc = rotate_min_first(cyc);
      out.push_back(std::move(c));
      return;
    }
    for (auto& comp : cur.on_circle) {
      size_t slots = comp.empty() ? 1 : comp.size();
      for (size_t pos = 0; pos < slots; ++pos) {
        comp.insert(comp.begin() + pos + (comp.empty() ? 0 : 1), label);
        place2(label + 1);
        comp.erase(std::find(comp.begin(), comp.end(), label));
      }
    }
    for (auto& comp : cur.on_interval) {
      for (size_t pos = 0; pos <= comp.size(); ++pos) {
        comp.insert(comp.begin() + pos, label);
        place2(label + 1);
        comp.erase(comp.begin() + pos);
      }
    }
  };
  (void)place;
  place2(0);
  // canonicalization can merge duplicates only if circles were unordered;
  // components are distinguishable, so just deduplicate identical encodings
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_complete(const Configuration& c) {
  for (const auto& cyc : c.on_circle)
    if (cyc.empty()) return false;
  return true;
}

namespace {

// doubling p_i to its right (or p_0 to its left for i == q+1), then
// relabeling: old labels > i shift up by one; the copy gets label i+1
// (or q+1 for the left copy of p_0)
Configuration coface_config(const Configuration& c, int q1, int i) {
  Configuration out = c;
  auto relabel = [&](std::vector<int>& seq) {
    for (int& v : seq)
      if (v > i) ++v;
  };
  auto relabel_left = [&](std::vector<int>& seq) { (void)seq; };
  (void)relabel_left;
  if (i <= q1 - 1) {
    for (auto& seq : out.on_circle) relabel(seq);
    for (auto& seq : out.on_interval) relabel(seq);
    // insert i+1 right after i
    for (auto& seq : out.on_circle) {
      auto it = std::find(seq.begin(), seq.end(), i);
      if (it != seq.end()) {
        seq.insert(it + 1, i + 1);
        break;
      }
    }
    for (auto& seq : out.on_interval) {
      auto it = std::find(seq.begin(), seq.end(), i);
      if (it != seq.end()) {
        seq.insert(it + 1, i + 1);
        break;
      }
    }
  } else {
    // double p_0 (label 0) to its LEFT with the new top label q1
    for (auto& seq : out.on_circle) {
      auto it = std::find(seq.begin(), seq.end(), 0);
      if (it != seq.end()) {
        seq.insert(it, q1);
        break;
      }
    }
    for (auto& seq : out.on_interval) {
      auto it = std::find(seq.begin(), seq.end(), 0);
      if (it != seq.end()) {
        seq.insert(it, q1);
        break;
      }
    }
  }
  for (auto& cyc : out.on_circle) cyc = rotate_min_first(cyc);
  return out;
}

// forget p_{j+1} (label j+1) and relabel downwards
Configuration codegeneracy_config(const Configuration& c, int j) {
  Configuration out = c;
  auto drop = [&](std::vector<int>& seq) {
    auto it = std::find(seq.begin(), seq.end(), j + 1);
    if (it != seq.end()) seq.erase(it);
    for (int& v : seq)
      if (v > j + 1) --v;
  };
  for (auto& seq : out.on_circle) drop(seq);
  for (auto& seq : out.on_interval) drop(seq);
  for (auto& cyc : out.on_circle) cyc = rotate_min_first(cyc);
  return out;
}

}  // namespace

TruncatedCosimplicialSet configuration_cosimplicial(const OneManifold& x,
                                                    int q_max, bool complete) {
  TruncatedCosimplicialSet t;
  std::vector<std::vector<Configuration>> cfgs(q_max + 1);
  std::vector<std::map<std::string, int>> index(q_max + 1);
  for (int q = 0; q <= q_max; ++q) {
    for (const Configuration& c : configuration_components(q + 1, x)) {
      if (complete && !is_complete(c)) continue;
      index[q][c.key()] = static_cast<int>(cfgs[q].size());
      cfgs[q].push_back(c);
    }
    std::vector<std::string> names;
    for (const Configuration& c : cfgs[q]) names.push_back(c.key());
    t.levels.push_back(std::move(names));
  }
  t.coface.resize(q_max + 1);
  t.codegeneracy.resize(q_max + 1);
  for (int q = 0; q <= q_max; ++q) {
    if (q + 1 <= q_max) {
      t.coface[q].resize(q + 2);
      for (int i = 0; i <= q + 1; ++i) {
        auto& row = t.coface[q][i];
        for (const Configuration& c : cfgs[q]) {
          Configuration img = coface_config(c, q + 1, i);
          auto it = index[q + 1].find(img.key());
          if (it == index[q + 1].end())
            throw std::logic_error("coface image missing from the level");
          row.push_back(it->second);
        }
      }
    }
    if (q >= 1 && !complete) {
      t.codegeneracy[q].resize(q);
      for (int j = 0; j <= q - 1; ++j) {
        auto& row = t.codegeneracy[q][j];
        for (const Configuration& c : cfgs[q]) {
          Configuration img = codegeneracy_config(c, j);
          auto it = index[q - 1].find(img.key());
          if (it == index[q - 1].end())
            throw std::logic_error(complete
                                       ? "codegeneracy left the complete part"
                                       : "codegeneracy image missing");
          row.push_back(it->second);
        }
      }
    }
  }
  if (!complete) t.check_identities();
  return t;
}

void TruncatedCosimplicialSet::check_identities() const {
  const int qm = q_max();
  auto d = [&](int q, int i, int x) { return coface[q][i][x]; };
  auto s = [&](int q, int j, int x) { return codegeneracy[q][j][x]; };
  for (int q = 0; q <= qm; ++q) {
    int n = static_cast<int>(levels[q].size());
    for (int x = 0; x < n; ++x) {
      // d^j d^i = d^i d^{j-1} for i < j
      if (q + 2 <= qm)
        for (int i = 0; i <= q + 1; ++i)
          for (int j = i + 1; j <= q + 2; ++j)
            if (d(q + 1, j, d(q, i, x)) != d(q + 1, i, d(q, j - 1, x)))
              throw std::logic_error("cosimplicial identity d d failed");
      if (q + 1 <= qm) {
        for (int i = 0; i <= q + 1; ++i) {
          for (int j = 0; j <= q; ++j) {
            int lhs = s(q + 1, j, d(q, i, x));
            // s^j d^i = d^i s^{j-1} (i < j), 1 (i = j, j+1), d^{i-1} s^j (i > j+1)
            int rhs;
            if (i < j)
              rhs = q >= 1 ? d(q - 1, i, s(q, j - 1, x)) : -1;
            else if (i == j || i == j + 1)
              rhs = x;
            else
              rhs = q >= 1 ? d(q - 1, i - 1, s(q, j, x)) : -1;
            if (i < j && q < 1) continue;
            if (i > j + 1 && q < 1) continue;
            if (lhs != rhs)
              throw std::logic_error("cosimplicial identity s d failed");
          }
        }
      }
      // s^j s^i = s^i s^{j+1} for i <= j
      if (q >= 2)
        for (int j = 0; j <= q - 2; ++j)
          for (int i = 0; i <= j; ++i)
            if (s(q - 1, j, s(q, i, x)) != s(q - 1, i, s(q, j + 1, x)))
              throw std::logic_error("cosimplicial identity s s failed");
    }
  }
}

FreeChainComplex cosimplicial_chain_complex(const TruncatedCosimplicialSet& t) {
  std::map<int, std::vector<std::string>> basis;
  for (int q = 0; q <= t.q_max(); ++q) {
    std::vector<std::string> keys;
    for (size_t i = 0; i < t.levels[q].size(); ++i) keys.push_back(t.levels[q][i]);
    basis[-q] = std::move(keys);
  }
  FreeChainComplex c;
  for (const auto& [d, keys] : basis) c.set_basis(d, keys);
  // boundary from degree -q to degree -q-1 is the alternating coface sum
  for (int q = 0; q + 1 <= t.q_max(); ++q) {
    SparseIntMatrix m(c.dim(-q - 1), c.dim(-q));
    for (int x = 0; x < c.dim(-q); ++x)
      for (int i = 0; i <= q + 1; ++i)
        m.add(t.coface[q][i][x], x, i % 2 == 0 ? 1 : -1);
    c.set_boundary(-q, std::move(m));
  }
  auto err = c.verify();
  if (err) throw std::logic_error("cosimplicial complex: " + err->detail);
  return c;
}

int count_degree_zero_classes(const TruncatedCosimplicialSet& t) {
  if (t.levels.empty() || t.q_max() < 1) return 0;
  int count = 0;
  for (size_t x = 0; x < t.levels[0].size(); ++x)
    if (t.coface[0][0][x] == t.coface[0][1][x]) ++count;
  return count;
}

InjComplex inj_complex(int r, int q_max) {
  if (r > q_max) throw std::invalid_argument("inj_complex needs r <= q_max");
  InjComplex out;
  out.r = r;
  out.q_max = q_max;
  // basis: monotone injections [r] -> [q] as their image sets
  std::vector<std::vector<std::vector<int>>> maps(q_max + 1);
  auto name = [](const std::vector<int>& img) {
    std::ostringstream os;
    for (size_t i = 0; i < img.size(); ++i) os << (i ? "," : "") << img[i];
    return os.str();
  };
  std::map<int, std::vector<std::string>> basis;
  for (int q = r; q <= q_max; ++q) {
    std::vector<int> img;
    std::function<void(int, int)> gen = [&](int from, int depth) {
      if (depth == r + 1) {
        maps[q].push_back(img);
        return;
      }
      for (int v = from; v <= q - (r - depth); ++v) {
        img.push_back(v);
        gen(v + 1, depth + 1);
        img.pop_back();
      }
    };
    gen(0, 0);
    std::vector<std::string> keys;
    for (const auto& m : maps[q]) keys.push_back(name(m));
    basis[-q] = keys;
  }
  FreeChainComplex c;
  for (const auto& [d, keys] : basis) c.set_basis(d, keys);
  // d = sum of cofaces d_i . x, i = 0..q+1 (the post-composition misses i)
  for (int q = r; q + 1 <= q_max; ++q) {
    SparseIntMatrix m(c.dim(-q - 1), c.dim(-q));
    for (size_t xi = 0; xi < maps[q].size(); ++xi) {
      for (int i = 0; i <= q + 1; ++i) {
        std::vector<int> img;
        for (int v : maps[q][xi]) img.push_back(v >= i ? v + 1 : v);
        int row = c.index_of(-q - 1, name(img));
        m.add(row, static_cast<int>(xi), i % 2 == 0 ? 1 : -1);
      }
    }
    c.set_boundary(-q, std::move(m));
  }
  auto err = c.verify();
  if (err) throw std::logic_error("inj complex: " + err->detail);
  // homotopy s: drop q if unused, sign (-1)^q; identity maps
  for (int q = r; q <= q_max; ++q) {
    SparseIntMatrix s(q - 1 >= r ? c.dim(-q + 1) : 0, c.dim(-q));
    if (q - 1 >= r) {
      for (size_t xi = 0; xi < maps[q].size(); ++xi) {
        const auto& img = maps[q][xi];
        if (std::find(img.begin(), img.end(), q) != img.end()) continue;
        int row = c.index_of(-q + 1, name(img));
        s.add(row, static_cast<int>(xi), q % 2 == 0 ? 1 : -1);
      }
    }
    out.homotopy[-q] = std::move(s);
    SparseIntMatrix id(c.dim(-q), c.dim(-q));
    for (int i = 0; i < c.dim(-q); ++i) id.set(i, i, 1);
    out.identity[-q] = std::move(id);
  }
  out.complex = std::move(c);
  return out;
}

SimplexClass classify_simplex(const TruncatedCosimplicialSet& t, int q, int x) {
  // greedy descent: while x is a coface, pull back
  SimplexClass out;
  int level = q, cur = x;
  std::vector<int> word;  // cofaces applied, outermost first
  while (level > 0) {
    bool found = false;
    for (int i = 0; i <= level && !found; ++i) {
      const auto& row = t.coface[level - 1][i];
      for (size_t y = 0; y < row.size(); ++y) {
        if (row[y] == cur) {
          word.push_back(i);
          cur = static_cast<int>(y);
          --level;
          found = true;
          break;
        }
      }
    }
    if (!found) break;
  }
  out.level = level;
  out.index = cur;
  // injection image: start with identity on [level], apply cofaces back
  std::vector<int> img(level + 1);
  for (int i = 0; i <= level; ++i) img[i] = i;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    for (int& v : img)
      if (v >= *it) ++v;
  }
  out.injection = img;
  out.unique_injection =
      !(level == 0 && q > 0 && t.coface[0][0][cur] == t.coface[0][1][cur]);
  return out;
}

SimplexClass classify_simplex_oracle(const TruncatedCosimplicialSet& t, int q,
                                     int x) {
  // enumerate all factorizations x = d^{i_1} ... d^{i_m} y over all y
  struct Fact {
    int level, index;
    std::vector<int> injection;
  };
  std::vector<Fact> facts;
  std::function<void(int, int, std::vector<int>&)> descend =
      [&](int level, int cur, std::vector<int>& word) {
        // record if y = cur is not itself a coface
        bool is_coface = false;
        if (level > 0) {
          for (int i = 0; i <= level && !is_coface; ++i)
            for (int v : t.coface[level - 1][i])
              if (v == cur) {
                is_coface = true;
                break;
              }
        }
        if (!is_coface) {
          std::vector<int> img(level + 1);
          for (int i = 0; i <= level; ++i) img[i] = i;
          for (auto it = word.rbegin(); it != word.rend(); ++it)
            for (int& v : img)
              if (v >= *it) ++v;
          facts.push_back({level, cur, img});
        }
        if (level == 0) return;
        for (int i = 0; i <= level; ++i) {
          const auto& row = t.coface[level - 1][i];
          for (size_t y = 0; y < row.size(); ++y)
            if (row[y] == cur) {
              word.push_back(i);
              descend(level - 1, static_cast<int>(y), word);
              word.pop_back();
            }
        }
      };
  std::vector<int> word;
  descend(q, x, word);
  if (facts.empty()) throw std::logic_error("no factorization found");
  // the minimal y is unique; injections may differ only in the degenerate
  // level-0 case
  SimplexClass out;
  out.level = facts.front().level;
  out.index = facts.front().index;
  out.injection = facts.front().injection;
  bool inj_unique = true;
  for (const Fact& f : facts) {
    if (f.level < out.level) {
      out.level = f.level;
      out.index = f.index;
      out.injection = f.injection;
    }
  }
  for (const Fact& f : facts)
    if (f.level == out.level && f.injection != out.injection) inj_unique = false;
  for (const Fact& f : facts)
    if (f.level == out.level && f.index != out.index)
      throw std::logic_error("minimal simplex is not unique");
  out.unique_injection = inj_unique;
  return out;
}

}  // namespace hhop
