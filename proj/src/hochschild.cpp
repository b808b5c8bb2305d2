#include "hhop/hochschild.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace hhop {

std::string word_key(const std::vector<int>& w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << ",";
    os << w[i];
  }
  return os.str();
}

std::vector<int> word_from_key(const std::string& key) {
  std::vector<int> w;
  std::istringstream is(key);
  std::string tok;
  while (std::getline(is, tok, ',')) w.push_back(std::stoi(tok));
  return w;
}

int hochschild_degree(const FrobeniusAlgebra& a, const std::vector<int>& w,
                      int extra_factors) {
  int n = static_cast<int>(w.size()) - extra_factors;
  return n - 1 + a.word_degree(w);
}

bool word_is_reduced(const FrobeniusAlgebra& a, const std::vector<int>& w,
                     int extra_factors) {
  int u = a.unit_index();
  int n = static_cast<int>(w.size()) - extra_factors;
  for (int i = 1; i < n; ++i)
    if (w[i] == u) return false;
  return true;
}

namespace {

// cache of f_{n,k} morphisms, extended by identity strands
const Morphism& f_forest(int n, int k, int extra) {
  static std::map<std::tuple<int, int, int>, Morphism> cache;
  auto key = std::make_tuple(n, k, extra);
  auto it = cache.find(key);
  if (it == cache.end()) {
    Morphism f = f_nk(n, k);
    if (extra > 0) f = tensor(f, identity_morphism(extra));
    it = cache.emplace(key, std::move(f)).first;
  }
  return it->second;
}

}  // namespace

void chain_add(ChainVector& v, const std::vector<int>& w, const Int& c) {
  if (c == 0) return;
  auto it = v.find(w);
  if (it == v.end()) {
    v.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) v.erase(it);
  }
}

void chain_add(ChainVector& v, const ChainVector& other, const Int& c) {
  for (const auto& [w, x] : other) chain_add(v, w, x * c);
}

void chain_add(ChainVector& v, const TensorElement& other, const Int& c) {
  for (const auto& [w, x] : other.terms()) chain_add(v, w, x * c);
}

ChainVector hochschild_boundary(const FrobeniusAlgebra& a,
                                const std::vector<int>& w, bool reduced,
                                int extra_factors) {
  const int n = static_cast<int>(w.size()) - extra_factors;
  ChainVector out;
  chain_add(out, a.differential_word(w));
  int s = a.word_degree(w) % 2 == 0 ? 1 : -1;
  TensorElement x = TensorElement::word(w);
  for (int k = 1; k < n; ++k) {
    TensorElement part = apply_forest(a, f_forest(n, k, extra_factors), x);
    chain_add(out, part, s);
  }
  if (!reduced) return out;
  ChainVector red;
  for (const auto& [rw, c] : out)
    if (word_is_reduced(a, rw, extra_factors)) chain_add(red, rw, c);
  return red;
}

FreeChainComplex build_hochschild(const FrobeniusAlgebra& a,
                                  const HochschildOptions& opt) {
  if (opt.reduced && a.unit_index() < 0)
    throw std::invalid_argument("reduced complex needs a basis unit");
  std::map<int, std::vector<std::string>> basis;
  std::vector<std::vector<int>> words;
  // enumerate words of cyclic length 1..n_max plus frozen factors
  std::function<void(std::vector<int>&, int)> gen = [&](std::vector<int>& w,
                                                        int len) {
    if (static_cast<int>(w.size()) == len) {
      if (!opt.reduced || word_is_reduced(a, w, opt.extra_factors))
        words.push_back(w);
      return;
    }
    for (int i = 0; i < a.dim(); ++i) {
      w.push_back(i);
      gen(w, len);
      w.pop_back();
    }
  };
  for (int n = 1; n <= opt.n_max; ++n) {
    std::vector<int> w;
    gen(w, n + opt.extra_factors);
  }
  std::map<int, std::vector<std::pair<std::vector<int>, std::string>>> by_deg;
  for (const auto& w : words)
    by_deg[hochschild_degree(a, w, opt.extra_factors)].push_back(
        {w, word_key(w)});
  for (auto& [d, lst] : by_deg) {
    std::sort(lst.begin(), lst.end());
    std::vector<std::string> keys;
    for (auto& [w, k] : lst) keys.push_back(k);
    basis[d] = std::move(keys);
  }
  return assemble(basis, [&](int, const std::string& key) {
    std::vector<std::pair<std::string, Int>> out;
    std::vector<int> w = word_from_key(key);
    if (static_cast<int>(w.size()) - opt.extra_factors == 1 &&
        a.has_zero_differential())
      return out;
    ChainVector b = hochschild_boundary(a, w, opt.reduced, opt.extra_factors);
    for (const auto& [rw, c] : b) out.push_back({word_key(rw), c});
    return out;
  });
}

// ---------------------------------------------------------------------------
// cochains

void Cochain::add(const std::vector<int>& w, int out, const Int& c) {
  if (static_cast<int>(w.size()) != q)
    throw std::invalid_argument("cochain arity mismatch");
  if (c == 0) return;
  auto key = std::make_pair(w, out);
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

std::vector<Cochain> cochain_basis(const FrobeniusAlgebra& a, int q) {
  std::vector<Cochain> out;
  std::vector<int> w(q, 0);
  std::function<void(int)> gen = [&](int at) {
    if (at == q) {
      for (int e = 0; e < a.dim(); ++e) {
        Cochain c;
        c.q = q;
        c.add(w, e, 1);
        out.push_back(std::move(c));
      }
      return;
    }
    for (int i = 0; i < a.dim(); ++i) {
      w[at] = i;
      gen(at + 1);
    }
  };
  gen(0);
  return out;
}

int cochain_internal_degree(const FrobeniusAlgebra& a, const Cochain& d) {
  if (d.terms.empty()) return 0;
  const auto& [key, c] = *d.terms.begin();
  return a.degree[key.second] - a.word_degree(key.first);
}

TensorElement cap(const FrobeniusAlgebra& a, const TensorElement& chain,
                  const Cochain& d) {
  const int p = chain.length() - 1;
  TensorElement out(p - d.q + 1 > 0 ? p - d.q + 1 : 0);
  if (p < d.q) return out;
  int dd = cochain_internal_degree(a, d);
  for (const auto& [w, c] : chain.terms()) {
    // sign (-1)^{(|a| - |a0|) |D|}
    int tail_deg = a.word_degree(w) - a.degree[w[0]];
    int sign = (tail_deg * dd) % 2 == 0 ? 1 : -1;
    std::vector<int> mid(w.begin() + 1, w.begin() + 1 + d.q);
    for (const auto& [key, dc] : d.terms) {
      if (key.first != mid) continue;
      TensorElement head = a.multiply(w[0], key.second);
      for (const auto& [hw, hc] : head.terms()) {
        std::vector<int> nw{hw[0]};
        nw.insert(nw.end(), w.begin() + 1 + d.q, w.end());
        Int coef = c;
        coef *= sign;
        coef *= dc;
        coef *= hc;
        out.add(nw, coef);
      }
    }
  }
  return out;
}

FreeChainComplex build_cochain(const FrobeniusAlgebra& a, int q_max) {
  std::map<int, std::vector<std::string>> basis;
  auto key_of = [&](int q, const std::vector<int>& w, int out) {
    std::ostringstream os;
    os << q << "|" << word_key(w) << "->" << out;
    return os.str();
  };
  for (int q = 0; q <= q_max; ++q) {
    std::vector<std::string> keys;
    for (const Cochain& c : cochain_basis(a, q)) {
      const auto& [kw, coef] = *c.terms.begin();
      keys.push_back(key_of(q, kw.first, kw.second));
      (void)coef;
    }
    std::sort(keys.begin(), keys.end());
    basis[-q] = std::move(keys);
  }
  return assemble(basis, [&](int deg, const std::string& key)
                             -> std::vector<std::pair<std::string, Int>> {
    std::vector<std::pair<std::string, Int>> out;
    int q = -deg;
    if (q + 1 > q_max) {
      // the top arity maps out of the truncation; treat as zero
      return out;
    }
    auto bar = key.find('|');
    auto arrow = key.find("->");
    std::vector<int> w;
    if (arrow > bar + 1) w = word_from_key(key.substr(bar + 1, arrow - bar - 1));
    int e = std::stoi(key.substr(arrow + 2));
    Cochain c;
    c.q = q;
    c.add(w, e, 1);
    Cochain dc = cochain_differential(a, c);
    for (const auto& [k2, v] : dc.terms)
      out.push_back({key_of(q + 1, k2.first, k2.second), v});
    return out;
  });
}

// ---------------------------------------------------------------------------
// unit homotopies

namespace {

TensorElement insert_unit(const FrobeniusAlgebra& a, const std::vector<int>& w,
                          int pos1based) {
  std::vector<int> nw = w;
  nw.insert(nw.begin() + (pos1based - 1), a.unit_index());
  return TensorElement::word(nw);
}

// the gathered multiplications in the plain dictionary (the f-extraction
// carries the word-complex basis normalization, divided out here)
int plain_twist(int n, int k) {
  auto lam = [](int m) { return (m / 2) % 2 == 0 ? 1 : -1; };
  return lam(n) * lam(k);
}

// differential of the quotient piece: level n holds words of length n-1
ChainVector ar_boundary(const FrobeniusAlgebra& a, int r,
                        const std::vector<int>& w) {
  const int n = static_cast<int>(w.size()) + 1;
  ChainVector out;
  chain_add(out, a.differential_word(w));
  int sx = a.word_degree(w) % 2 == 0 ? 1 : -1;
  for (int k = r; k <= n - 1; ++k) {
    int tw = plain_twist(n - 1, k - 1);
    for (const FTerm& t : f_nk_terms(n - 1, k - 1)) {
      if (t.position < r || t.position > k) continue;
      int sk = (n - k) % 2 == 0 ? 1 : -1;
      TensorElement part = apply_forest(a, t.forest, TensorElement::word(w));
      Int coef = static_cast<long>(t.coeff);
      coef *= sx * sk * tw;
      chain_add(out, part, coef);
    }
  }
  return out;
}

}  // namespace

HomotopyReport verify_ar_homotopy(const FrobeniusAlgebra& a, int r, int n_max) {
  if (r < 2) return {false, "r must be at least 2"};
  // check sd + ds = id on every word at levels n with n+1 <= n_max
  for (int n = r; n + 1 <= n_max; ++n) {
    const int len = n - 1;
    std::vector<int> w(len, 0);
    std::function<bool(int)> gen = [&](int at) -> bool {
      if (at == len) {
        // s(x) = (-1)^{|x| + r} u_r(x); the r-sign mirrors the one printed
        // on the dual-side homotopy
        int sx = (a.word_degree(w) + r) % 2 == 0 ? 1 : -1;
        TensorElement sxval = insert_unit(a, w, r).scaled(sx);
        ChainVector total;
        for (const auto& [sw, sc] : sxval.terms())
          chain_add(total, ar_boundary(a, r, sw), sc);
        // d(x) then s
        ChainVector dx = ar_boundary(a, r, w);
        for (const auto& [dw, dc] : dx) {
          int s2 = (a.word_degree(dw) + r) % 2 == 0 ? 1 : -1;
          TensorElement ins = insert_unit(a, dw, r);
          Int coef = dc;
          coef *= s2;
          chain_add(total, ins, coef);
        }
        ChainVector expect;
        chain_add(expect, w, 1);
        return total == expect;
      }
      for (int i = 0; i < a.dim(); ++i) {
        w[at] = i;
        if (!gen(at + 1)) return false;
      }
      return true;
    };
    if (!gen(0)) {
      std::ostringstream os;
      os << "sd+ds = id fails at level " << n << " word " << word_key(w);
      return {false, os.str()};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// the dual piece: maps phi: A^{(x)(n-1)} -> A

namespace {

struct HomMap {
  // level n; phi given on basis words of length n-1
  int level;
  std::map<std::pair<std::vector<int>, int>, Int> terms;  // (word, out) -> c

  void add(const std::vector<int>& w, int out, const Int& c) {
    if (c == 0) return;
    auto key = std::make_pair(w, out);
    auto it = terms.find(key);
    if (it == terms.end()) {
      terms.emplace(key, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
};

using HomFamily = std::map<int, HomMap>;  // by level

void family_add(HomFamily& f, const HomMap& m, const Int& c) {
  if (c == 0) return;
  auto it = f.find(m.level);
  if (it == f.end()) {
    HomMap copy = m;
    for (auto& [k, v] : copy.terms) v *= c;
    for (auto mit = copy.terms.begin(); mit != copy.terms.end();) {
      if (mit->second == 0)
        mit = copy.terms.erase(mit);
      else
        ++mit;
    }
    if (!copy.terms.empty()) f.emplace(m.level, std::move(copy));
  } else {
    for (const auto& [k, v] : m.terms) it->second.add(k.first, k.second, v * c);
    if (it->second.terms.empty()) f.erase(it);
  }
}

// phi . m^i_{n-1,k-1}: precompose a level-k map with the gathered
// multiplication to get a level-n map
HomMap precompose_with_term(const FrobeniusAlgebra& a, const HomMap& phi,
                            const FTerm& t, int n) {
  HomMap out;
  out.level = n;
  std::vector<int> w(n - 1, 0);
  std::function<void(int)> gen = [&](int at) {
    if (at == n - 1) {
      TensorElement mid = apply_forest(a, t.forest, TensorElement::word(w));
      for (const auto& [mw, mc] : mid.terms()) {
        auto it = phi.terms.lower_bound({mw, 0});
        for (; it != phi.terms.end() && it->first.first == mw; ++it)
          {
            Int coef = mc * it->second;
            coef *= static_cast<long>(t.coeff);
            out.add(w, it->first.second, coef);
          }
      }
      return;
    }
    for (int i = 0; i < a.dim(); ++i) {
      w[at] = i;
      gen(at + 1);
    }
  };
  gen(0);
  return out;
}

HomFamily br_boundary(const FrobeniusAlgebra& a, int r, const HomFamily& y,
                      int level_cap) {
  HomFamily out;
  for (int n = r; n <= level_cap; ++n) {
    HomMap comp;
    comp.level = n;
    int sn = (n - 1) % 2 == 0 ? 1 : -1;
    for (int k = r; k <= n - 1; ++k) {
      auto yk = y.find(k);
      if (yk == y.end()) continue;
      int tw = plain_twist(n - 1, k - 1);
      for (const FTerm& t : f_nk_terms(n - 1, k - 1)) {
        if (t.position < r || t.position > k) continue;
        int sk = (n - k) % 2 == 0 ? 1 : -1;
        HomMap pre = precompose_with_term(a, yk->second, t, n);
        for (const auto& [key, c] : pre.terms) {
          Int coef = c;
          coef *= sn * sk * tw;
          comp.add(key.first, key.second, coef);
        }
      }
    }
    if (!comp.terms.empty()) family_add(out, comp, 1);
  }
  return out;
}

HomFamily br_homotopy(const FrobeniusAlgebra& a, int r, const HomFamily& y) {
  // s(y)_n = (-1)^{n+r} y_{n+1} . u_r
  HomFamily out;
  for (const auto& [lvl, phi] : y) {
    if (lvl - 1 < r) continue;
    HomMap m;
    m.level = lvl - 1;
    int sign = (lvl - 1 + r) % 2 == 0 ? 1 : -1;
    // (phi . u_r)(w) = phi(w with unit inserted at position r)
    std::vector<int> w(lvl - 2, 0);
    std::function<void(int)> gen = [&](int at) {
      if (at == lvl - 2) {
        std::vector<int> nw = w;
        nw.insert(nw.begin() + (r - 1), a.unit_index());
        auto it = phi.terms.lower_bound({nw, 0});
        for (; it != phi.terms.end() && it->first.first == nw; ++it)
          m.add(w, it->first.second, sign * it->second);
        return;
      }
      for (int i = 0; i < a.dim(); ++i) {
        w[at] = i;
        gen(at + 1);
      }
    };
    gen(0);
    if (!m.terms.empty()) family_add(out, m, 1);
  }
  return out;
}

bool family_equal(const HomFamily& a, const HomFamily& b) {
  auto norm = [](const HomFamily& f) {
    std::map<int, std::map<std::pair<std::vector<int>, int>, Int>> n;
    for (const auto& [lvl, m] : f)
      if (!m.terms.empty()) n[lvl] = m.terms;
    return n;
  };
  return norm(a) == norm(b);
}

}  // namespace

HomotopyReport verify_br_homotopy(const FrobeniusAlgebra& a, int r, int n_max) {
  if (r < 2) return {false, "r must be at least 2"};
  // single-level basis elements y at level n0, kernel words only
  for (int n0 = r; n0 + 1 <= n_max; ++n0) {
    std::vector<int> w(n0 - 1, 0);
    int bad_upto = std::min(r - 1, n0 - 1);
    std::function<bool(int)> gen = [&](int at) -> bool {
      if (at == n0 - 1) {
        // kernel condition: no unit in positions 2..min(r-1, n-1)
        for (int i = 2; i <= bad_upto; ++i)
          if (w[i - 1] == a.unit_index()) return true;
        for (int out = 0; out < a.dim(); ++out) {
          HomFamily y;
          HomMap m;
          m.level = n0;
          m.add(w, out, 1);
          family_add(y, m, 1);
          HomFamily dy = br_boundary(a, r, y, n0 + 2);
          HomFamily sdy = br_homotopy(a, r, dy);
          HomFamily sy = br_homotopy(a, r, y);
          HomFamily dsy = br_boundary(a, r, sy, n0 + 2);
          HomFamily total;
          for (const auto& [lvl, map] : sdy) family_add(total, map, 1);
          for (const auto& [lvl, map] : dsy) family_add(total, map, 1);
          if (!family_equal(total, y)) return false;
        }
        return true;
      }
      for (int i = 0; i < a.dim(); ++i) {
        w[at] = i;
        if (!gen(at + 1)) return false;
      }
      return true;
    };
    if (!gen(0)) {
      std::ostringstream os;
      os << "sd+ds = id fails at level " << n0;
      return {false, os.str()};
    }
  }
  return {};
}

}  // namespace hhop
