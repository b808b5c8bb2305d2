#include "hhop/chain_complex.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hhop {

void SparseIntMatrix::set(int r, int c, const Int& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("matrix index");
  if (v == 0)
    entries_.erase({r, c});
  else
    entries_[{r, c}] = v;
}

void SparseIntMatrix::add(int r, int c, const Int& v) {
  if (v == 0) return;
  auto it = entries_.find({r, c});
  if (it == entries_.end()) {
    set(r, c, v);
  } else {
    it->second += v;
    if (it->second == 0) entries_.erase(it);
  }
}

Int SparseIntMatrix::get(int r, int c) const {
  auto it = entries_.find({r, c});
  return it == entries_.end() ? Int(0) : it->second;
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  SparseIntMatrix t(cols_, rows_);
  for (const auto& [rc, v] : entries_) t.set(rc.second, rc.first, v);
  return t;
}

SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shapes");
  SparseIntMatrix c(a.rows_, b.cols_);
  // group b's entries by row
  std::map<int, std::vector<std::pair<int, const Int*>>> brow;
  for (const auto& [rc, v] : b.entries_)
    brow[rc.first].push_back({rc.second, &v});
  for (const auto& [rc, va] : a.entries_) {
    auto it = brow.find(rc.second);
    if (it == brow.end()) continue;
    for (const auto& [cb, vb] : it->second) c.add(rc.first, cb, va * *vb);
  }
  return c;
}

SparseIntMatrix operator-(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix difference shapes");
  SparseIntMatrix c = a;
  for (const auto& [rc, v] : b.entries_) c.add(rc.first, rc.second, -v);
  return c;
}

bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

std::vector<Int> SparseIntMatrix::apply(const std::vector<Int>& v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw std::invalid_argument("matrix apply shape");
  std::vector<Int> out(rows_, 0);
  for (const auto& [rc, a] : entries_) out[rc.first] += a * v[rc.second];
  return out;
}

// ---------------------------------------------------------------------------
// Smith normal form.  Dense working copy with row/column operations mirrored
// into S and T.  Pivot choice: smallest nonzero absolute value.

namespace {

struct SnfWork {
  int n, m;
  std::vector<std::vector<Int>> a;  // n x m
  std::vector<std::vector<Int>> s;  // n x n
  std::vector<std::vector<Int>> t;  // m x m

  void swap_rows(int i, int j) {
    std::swap(a[i], a[j]);
    std::swap(s[i], s[j]);
  }
  void swap_cols(int i, int j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : t) std::swap(row[i], row[j]);
  }
  void negate_row(int i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : s[i]) x = -x;
  }
  // row i -= q * row j
  void row_sub(int i, int j, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < m; ++c) a[i][c] -= q * a[j][c];
    for (int c = 0; c < n; ++c) s[i][c] -= q * s[j][c];
  }
  // col i -= q * col j
  void col_sub(int i, int j, const Int& q) {
    if (q == 0) return;
    for (int r = 0; r < n; ++r) a[r][i] -= q * a[r][j];
    for (int r = 0; r < m; ++r) t[r][i] -= q * t[r][j];
  }
};

}  // namespace

SmithResult smith_normal_form(const SparseIntMatrix& mat) {
  const int n = mat.rows(), m = mat.cols();
  SnfWork w;
  w.n = n;
  w.m = m;
  w.a.assign(n, std::vector<Int>(m, 0));
  for (const auto& [rc, v] : mat.entries()) w.a[rc.first][rc.second] = v;
  w.s.assign(n, std::vector<Int>(n, 0));
  w.t.assign(m, std::vector<Int>(m, 0));
  for (int i = 0; i < n; ++i) w.s[i][i] = 1;
  for (int i = 0; i < m; ++i) w.t[i][i] = 1;

  int k = 0;
  const int kmax = std::min(n, m);
  while (k < kmax) {
    // find the smallest nonzero |entry| in the lower-right block
    int pr = -1, pc = -1;
    for (int r = k; r < n; ++r)
      for (int c = k; c < m; ++c) {
        if (w.a[r][c] == 0) continue;
        if (pr < 0 || cmp(abs(w.a[r][c]), abs(w.a[pr][pc])) < 0) {
          pr = r;
          pc = c;
        }
      }
    if (pr < 0) break;  // all zero
    w.swap_rows(k, pr);
    w.swap_cols(k, pc);
    if (w.a[k][k] < 0) w.negate_row(k);

    bool clean = true;
    for (int r = k + 1; r < n; ++r) {
      if (w.a[r][k] == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), w.a[r][k].get_mpz_t(), w.a[k][k].get_mpz_t());
      w.row_sub(r, k, q);
      if (w.a[r][k] != 0) clean = false;
    }
    for (int c = k + 1; c < m; ++c) {
      if (w.a[k][c] == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), w.a[k][c].get_mpz_t(), w.a[k][k].get_mpz_t());
      w.col_sub(c, k, q);
      if (w.a[k][c] != 0) clean = false;
    }
    if (!clean) continue;  // smaller remainders appeared; repick the pivot

    // pivot must divide every remaining entry for the divisibility chain
    bool divides_all = true;
    for (int r = k + 1; r < n && divides_all; ++r)
      for (int c = k + 1; c < m; ++c)
        if (w.a[r][c] % w.a[k][k] != 0) {
          // fold the offending row into row k and restart this pivot
          w.row_sub(k, r, Int(-1));
          divides_all = false;
          break;
        }
    if (!divides_all) continue;
    ++k;
  }

  SmithResult res;
  res.S = SparseIntMatrix(n, n);
  res.T = SparseIntMatrix(m, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (w.s[i][j] != 0) res.S.set(i, j, w.s[i][j]);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (w.t[i][j] != 0) res.T.set(i, j, w.t[i][j]);
  for (int i = 0; i < k; ++i) res.diagonal.push_back(w.a[i][i]);
  return res;
}

// ---------------------------------------------------------------------------

std::string HomologyGroup::to_string() const {
  std::ostringstream os;
  bool any = false;
  if (betti > 0) {
    os << "Z";
    if (betti > 1) os << "^" << betti;
    any = true;
  }
  for (const Int& t : torsion) {
    if (any) os << " + ";
    os << "Z/" << t.get_str();
    any = true;
  }
  if (!any) os << "0";
  return os.str();
}

void FreeChainComplex::set_basis(int degree, std::vector<std::string> keys) {
  auto& idx = index_[degree];
  idx.clear();
  for (size_t i = 0; i < keys.size(); ++i) idx[keys[i]] = static_cast<int>(i);
  if (idx.size() != keys.size())
    throw std::invalid_argument("duplicate basis keys");
  basis_[degree] = std::move(keys);
}

const std::vector<std::string>& FreeChainComplex::basis(int degree) const {
  static const std::vector<std::string> empty;
  auto it = basis_.find(degree);
  return it == basis_.end() ? empty : it->second;
}

int FreeChainComplex::dim(int degree) const {
  return static_cast<int>(basis(degree).size());
}

int FreeChainComplex::min_degree() const {
  if (basis_.empty()) return 0;
  return basis_.begin()->first;
}

int FreeChainComplex::max_degree() const {
  if (basis_.empty()) return 0;
  return basis_.rbegin()->first;
}

void FreeChainComplex::set_boundary(int degree, SparseIntMatrix m) {
  if (m.cols() != dim(degree) || m.rows() != dim(degree - 1))
    throw std::invalid_argument("boundary matrix shape");
  boundary_[degree] = std::move(m);
}

SparseIntMatrix FreeChainComplex::boundary(int degree) const {
  auto it = boundary_.find(degree);
  if (it != boundary_.end()) return it->second;
  return SparseIntMatrix(dim(degree - 1), dim(degree));
}

int FreeChainComplex::index_of(int degree, const std::string& key) const {
  auto it = index_.find(degree);
  if (it == index_.end()) return -1;
  auto jt = it->second.find(key);
  return jt == it->second.end() ? -1 : jt->second;
}

std::optional<AssemblyError> FreeChainComplex::verify() const {
  for (const auto& [d, keys] : basis_) {
    if (!has_degree(d - 1) || !has_degree(d - 2)) continue;
    SparseIntMatrix comp = boundary(d - 1) * boundary(d);
    if (!comp.is_zero()) {
      int col = comp.entries().begin()->first.second;
      std::ostringstream os;
      os << "d^2 != 0: column " << col << " maps to a nonzero chain";
      return AssemblyError{basis(d)[col], d, os.str()};
    }
  }
  return std::nullopt;
}

HomologyGroup FreeChainComplex::homology(int degree) const {
  // H_d = ker(boundary(d)) / im(boundary(d+1))
  const int n = dim(degree);
  HomologyGroup h;
  if (n == 0) return h;
  long rank_d = 0;
  if (has_degree(degree - 1)) {
    rank_d = smith_normal_form(boundary(degree)).rank();
  }
  long rank_up = 0;
  std::vector<Int> diag_up;
  if (has_degree(degree + 1)) {
    SmithResult s = smith_normal_form(boundary(degree + 1));
    rank_up = s.rank();
    diag_up = s.diagonal;
  }
  h.betti = n - rank_d - rank_up;
  for (const Int& d : diag_up)
    if (abs(d) > 1) h.torsion.push_back(abs(d));
  return h;
}

long FreeChainComplex::q_rank_homology(int degree) const {
  const int n = dim(degree);
  if (n == 0) return 0;
  long rank_d = has_degree(degree - 1)
                    ? smith_normal_form(boundary(degree)).rank()
                    : 0;
  long rank_up = has_degree(degree + 1)
                     ? smith_normal_form(boundary(degree + 1)).rank()
                     : 0;
  return n - rank_d - rank_up;
}

FreeChainComplex assemble(const std::map<int, std::vector<std::string>>& basis,
                          const BoundaryFn& boundary) {
  FreeChainComplex c;
  for (const auto& [d, keys] : basis) c.set_basis(d, keys);
  for (const auto& [d, keys] : basis) {
    if (basis.count(d - 1) == 0) {
      // boundary must vanish here; trust but verify
      for (const auto& k : keys) {
        auto img = boundary(d, k);
        if (!img.empty())
          throw std::invalid_argument("boundary of " + k +
                                      " lands in a missing degree");
      }
      continue;
    }
    SparseIntMatrix m(c.dim(d - 1), c.dim(d));
    for (size_t i = 0; i < keys.size(); ++i) {
      for (const auto& [tk, coef] : boundary(d, keys[i])) {
        int r = c.index_of(d - 1, tk);
        if (r < 0)
          throw std::invalid_argument("boundary of " + keys[i] +
                                      " names unknown key " + tk);
        m.add(r, static_cast<int>(i), coef);
      }
    }
    c.set_boundary(d, std::move(m));
  }
  return c;
}

namespace {

SparseIntMatrix map_or_zero(const std::map<int, SparseIntMatrix>& f, int d,
                            int rows, int cols) {
  auto it = f.find(d);
  if (it == f.end()) return SparseIntMatrix(rows, cols);
  if (it->second.rows() != rows || it->second.cols() != cols)
    throw std::invalid_argument("map shape mismatch in degree " +
                                std::to_string(d));
  return it->second;
}

}  // namespace

ChainMapReport verify_chain_map(const std::map<int, SparseIntMatrix>& f,
                                const FreeChainComplex& source,
                                const FreeChainComplex& target, int shift) {
  for (const auto& [d, fd] : f) {
    if (!source.has_degree(d)) continue;
    if (fd.cols() != source.dim(d) || fd.rows() != target.dim(d + shift))
      return {false, d, "map shape mismatch"};
    // target_boundary(d+shift) * f_d = (-1)^shift f_{d-1} * source_boundary(d)
    SparseIntMatrix lhs = target.boundary(d + shift) * fd;
    SparseIntMatrix up =
        map_or_zero(f, d - 1, target.dim(d - 1 + shift), source.dim(d - 1));
    SparseIntMatrix rhs = up * source.boundary(d);
    if (shift % 2 != 0) {
      SparseIntMatrix zero(rhs.rows(), rhs.cols());
      rhs = zero - rhs;
    }
    if (!(lhs == rhs)) {
      std::ostringstream os;
      os << "chain-map identity fails in degree " << d;
      return {false, d, os.str()};
    }
  }
  return {};
}

ChainMapReport verify_homotopy(const std::map<int, SparseIntMatrix>& s,
                               const std::map<int, SparseIntMatrix>& f,
                               const std::map<int, SparseIntMatrix>& g,
                               const FreeChainComplex& source,
                               const FreeChainComplex& target) {
  for (const auto& [d, fd] : f) {
    if (!source.has_degree(d)) continue;
    SparseIntMatrix sd_map = map_or_zero(s, d, target.dim(d + 1), source.dim(d));
    SparseIntMatrix sdown =
        map_or_zero(s, d - 1, target.dim(d), source.dim(d - 1));
    SparseIntMatrix gd = map_or_zero(g, d, target.dim(d), source.dim(d));
    SparseIntMatrix lhs = target.boundary(d + 1) * sd_map;
    SparseIntMatrix sd = sdown * source.boundary(d);
    for (const auto& [rc, v] : sd.entries()) lhs.add(rc.first, rc.second, v);
    SparseIntMatrix rhs = fd - gd;
    if (!(lhs == rhs)) {
      std::ostringstream os;
      os << "homotopy identity fails in degree " << d;
      return {false, d, os.str()};
    }
  }
  return {};
}

bool in_integer_image(const SparseIntMatrix& m, const std::vector<Int>& v) {
  // solve m x = v over Z via S m T = D: with w = S v, need D y = w solvable
  SmithResult s = smith_normal_form(m);
  std::vector<Int> w = s.S.apply(v);
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (i < s.rank()) {
      if (w[i] % s.diagonal[i] != 0) return false;
    } else if (w[i] != 0) {
      return false;
    }
  }
  return true;
}

bool in_rational_image(const SparseIntMatrix& m, const std::vector<Int>& v) {
  SmithResult s = smith_normal_form(m);
  std::vector<Int> w = s.S.apply(v);
  for (int i = s.rank(); i < static_cast<int>(w.size()); ++i)
    if (w[i] != 0) return false;
  return true;
}

}  // namespace hhop
