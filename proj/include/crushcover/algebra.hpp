#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "crushcover/skeleton.hpp"

namespace crushcover {

using BigInt = boost::multiprecision::cpp_int;

/// Dense integer matrix with exact arbitrary-precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
      for (long v : row) data_.emplace_back(v);
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void append_column(const std::vector<long>& col) {
    if (col.size() != rows_) throw std::invalid_argument("IntMatrix: column size mismatch");
    std::vector<BigInt> next(rows_ * (cols_ + 1));
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) next[r * (cols_ + 1) + c] = data_[r * cols_ + c];
      next[r * (cols_ + 1) + cols_] = col[r];
    }
    data_ = std::move(next);
    ++cols_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> data_;
};

struct SmithResult {
  std::vector<BigInt> factors;  // nonzero invariant factors d1 | d2 | ..., including 1s
  std::size_t rank = 0;
};

/// Invariant factors of an integer matrix by elementary row/column operations.
inline SmithResult smith_normal_form(IntMatrix m) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<BigInt> diag;
  std::size_t pr = 0;
  for (std::size_t pc = 0; pr < R && pc < C; ++pc) {
    // Bring a nonzero entry of least magnitude in the remaining block to (pr, pc).
    while (true) {
      std::size_t br = R, bc = C;
      for (std::size_t r = pr; r < R; ++r)
        for (std::size_t c = pc; c < C; ++c)
          if (m(r, c) != 0 && (br == R || abs(m(r, c)) < abs(m(br, bc)))) br = r, bc = c;
      if (br == R) {
        pc = C;
        break;
      }
      for (std::size_t c = 0; c < C; ++c) std::swap(m(pr, c), m(br, c));
      for (std::size_t r = 0; r < R; ++r) std::swap(m(r, pc), m(r, bc));
      bool clean = true;
      for (std::size_t r = pr + 1; r < R; ++r) {
        if (m(r, pc) == 0) continue;
        const BigInt q = m(r, pc) / m(pr, pc);
        for (std::size_t c = pc; c < C; ++c) m(r, c) -= q * m(pr, c);
        if (m(r, pc) != 0) clean = false;
      }
      for (std::size_t c = pc + 1; c < C; ++c) {
        if (m(pr, c) == 0) continue;
        const BigInt q = m(pr, c) / m(pr, pc);
        for (std::size_t r = pr; r < R; ++r) m(r, c) -= q * m(r, pc);
        if (m(pr, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (pc == C) break;
    diag.push_back(abs(m(pr, pc)));
    ++pr;
  }
  // Enforce the divisibility chain.
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      const BigInt g = boost::multiprecision::gcd(diag[i], diag[j]);
      const BigInt l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  return {diag, diag.size()};
}

/// A finitely generated abelian group: Z^freeRank + Z_{d1} + ... with d1 | d2 | ...
struct AbelianGroup {
  std::vector<BigInt> torsion;
  std::size_t freeRank = 0;

  static AbelianGroup cyclic(long n) {
    AbelianGroup g;
    if (n == 0)
      g.freeRank = 1;
    else if (n != 1 && n != -1)
      g.torsion.push_back(BigInt(n < 0 ? -n : n));
    return g;
  }
  static AbelianGroup from_factors(std::vector<long> factors, std::size_t freeRank = 0) {
    AbelianGroup g;
    g.freeRank = freeRank;
    IntMatrix m(factors.size(), factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) m(i, i) = factors[i];
    for (const auto& d : smith_normal_form(m).factors)
      if (d > 1) g.torsion.push_back(d);
    for (long f : factors)
      if (f == 0) ++g.freeRank;
    return g;
  }

  bool is_trivial() const { return torsion.empty() && freeRank == 0; }
  std::size_t even_factor_count() const {
    std::size_t n = 0;
    for (const auto& d : torsion)
      if (d % 2 == 0) ++n;
    return n;
  }

  /// Invariant-factor list with 0 standing for each Z summand, e.g. [2,2] or [4,0].
  std::vector<std::string> factor_list() const {
    std::vector<std::string> out;
    for (const auto& d : torsion) out.push_back(d.str());
    for (std::size_t i = 0; i < freeRank; ++i) out.push_back("0");
    return out;
  }

  std::string str() const {
    if (is_trivial()) return "0";
    std::string s;
    for (std::size_t i = 0; i < freeRank; ++i) s += (s.empty() ? "" : " + ") + std::string("Z");
    for (const auto& d : torsion) s += (s.empty() ? "" : " + ") + std::string("Z_") + d.str();
    return s;
  }

  bool operator==(const AbelianGroup&) const = default;
};

/// Dense matrix over GF(2).
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return (bits_[r * words_ + c / 64] >> (c % 64)) & 1U; }
  void set(std::size_t r, std::size_t c, bool v) {
    auto& w = bits_[r * words_ + c / 64];
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    w = v ? (w | mask) : (w & ~mask);
  }
  void flip(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64); }

  void add_row(std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < words_; ++w) bits_[dst * words_ + w] ^= bits_[src * words_ + w];
  }
  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t w = 0; w < words_; ++w) std::swap(bits_[a * words_ + w], bits_[b * words_ + w]);
  }
  void append_row(const std::vector<std::uint8_t>& row) {
    if (row.size() != cols_) throw std::invalid_argument("BitMatrix: row size mismatch");
    bits_.resize((rows_ + 1) * words_, 0);
    ++rows_;
    for (std::size_t c = 0; c < cols_; ++c)
      if (row[c]) set(rows_ - 1, c, true);
  }
  std::vector<std::uint8_t> row(std::size_t r) const {
    std::vector<std::uint8_t> out(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out[c] = get(r, c);
    return out;
  }

  /// In-place reduced row echelon form; returns the pivot columns in order.
  std::vector<std::size_t> reduce() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && !get(p, c)) ++p;
      if (p == rows_) continue;
      swap_rows(p, r);
      for (std::size_t i = 0; i < rows_; ++i)
        if (i != r && get(i, c)) add_row(i, r);
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    BitMatrix copy = *this;
    return copy.reduce().size();
  }

  /// Basis of {x : M x = 0}, one vector per free column, in column order.
  std::vector<std::vector<std::uint8_t>> nullspace() const {
    BitMatrix m = *this;
    const auto pivots = m.reduce();
    std::vector<bool> isPivot(cols_, false);
    for (auto p : pivots) isPivot[p] = true;
    std::vector<std::vector<std::uint8_t>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (isPivot[free]) continue;
      std::vector<std::uint8_t> v(cols_, 0);
      v[free] = 1;
      for (std::size_t i = 0; i < pivots.size(); ++i)
        if (m.get(i, free)) v[pivots[i]] = 1;
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Cellular boundary maps of the skeleton with signed incidences.
/// d1 is V x E, d2 is E x F. Edge classes carry the orientation of their first
/// slot; a face class is oriented by the increasing vertex order of its first slot.
struct ChainComplex {
  IntMatrix d1, d2;
};

inline ChainComplex chain_complex(const Triangulation& tri, const Skeleton& sk) {
  (void)tri;
  ChainComplex cc{IntMatrix(sk.vertices.size(), sk.edges.size()), IntMatrix(sk.edges.size(), sk.faces.size())};
  for (std::size_t e = 0; e < sk.edges.size(); ++e) {
    cc.d1(sk.edges[e].head, e) += 1;
    cc.d1(sk.edges[e].tail, e) -= 1;
  }
  for (std::size_t f = 0; f < sk.faces.size(); ++f) {
    const auto [t, face] = sk.faces[f].slots.front();
    int v[3], k = 0;
    for (int i = 0; i < 4; ++i)
      if (i != face) v[k++] = i;
    // d[v0 v1 v2] = [v1 v2] - [v0 v2] + [v0 v1]
    const int pieces[3][3] = {{v[1], v[2], 1}, {v[0], v[2], -1}, {v[0], v[1], 1}};
    for (const auto& pc : pieces) {
      const int slot = edge_index(pc[0], pc[1]);
      cc.d2(sk.edge_of(t, slot), f) += pc[2] * sk.edge_sign(t, slot);
    }
  }
  return cc;
}

/// H1 from boundary maps; `extraRelations` are additional edge chains set to zero.
inline AbelianGroup homology_from(const ChainComplex& cc, const std::vector<std::vector<long>>& extraRelations = {}) {
  IntMatrix d2 = cc.d2;
  for (const auto& rel : extraRelations) d2.append_column(rel);
  const std::size_t rank1 = smith_normal_form(cc.d1).rank;
  const auto s2 = smith_normal_form(d2);
  AbelianGroup g;
  for (const auto& d : s2.factors)
    if (d > 1) g.torsion.push_back(d);
  g.freeRank = cc.d1.cols() - rank1 - s2.rank;
  return g;
}

inline AbelianGroup h1_integral(const Triangulation& tri) {
  const auto sk = compute_skeleton(tri);
  if (!sk.all_edges_valid()) throw TopologyError("h1: triangulation has an edge identified with its reverse");
  return homology_from(chain_complex(tri, sk));
}

inline std::size_t h1_mod2_dimension(const Triangulation& tri) {
  const auto sk = compute_skeleton(tri);
  if (!sk.all_edges_valid()) throw TopologyError("h1: triangulation has an edge identified with its reverse");
  const auto cc = chain_complex(tri, sk);
  auto toBits = [](const IntMatrix& m) {
    BitMatrix b(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (m(r, c) % 2 != 0) b.set(r, c, true);
    return b;
  };
  return sk.edges.size() - toBits(cc.d1).rank() - toBits(cc.d2).rank();
}

}  // namespace crushcover
