#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace crushcover {

/// A permutation of the four vertex labels {0,1,2,3} of a tetrahedron.
///
/// `p[i]` is the image of label i. Composition follows function notation:
/// `(p * q)[i] == p[q[i]]`.
class Perm4 {
 public:
  constexpr Perm4() : image_{0, 1, 2, 3} {}
  constexpr Perm4(int a, int b, int c, int d)
      : image_{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
               static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)} {
    if (!is_bijective()) throw std::invalid_argument("Perm4: not a bijection");
  }

  /// Builds the permutation with the given image string, e.g. "1023".
  static Perm4 from_string(const std::string& s) {
    if (s.size() != 4) throw std::invalid_argument("Perm4: expected 4 digits");
    std::array<int, 4> v{};
    for (int i = 0; i < 4; ++i) {
      if (s[i] < '0' || s[i] > '3') throw std::invalid_argument("Perm4: bad digit in '" + s + "'");
      v[i] = s[i] - '0';
    }
    return Perm4(v[0], v[1], v[2], v[3]);
  }

  /// All 24 permutations in lexicographic order of their image strings.
  static const std::array<Perm4, 24>& all() {
    static const std::array<Perm4, 24> perms = [] {
      std::array<Perm4, 24> out{};
      std::array<int, 4> v{0, 1, 2, 3};
      std::size_t i = 0;
      do {
        out[i++] = Perm4(v[0], v[1], v[2], v[3]);
      } while (std::next_permutation(v.begin(), v.end()));
      return out;
    }();
    return perms;
  }

  /// Position of this permutation in `all()`.
  constexpr int index() const {
    int idx = 0;
    int used = 0;
    constexpr int fact[4] = {6, 2, 1, 0};
    for (int i = 0; i < 3; ++i) {
      int smaller = 0;
      for (int v = 0; v < image_[i]; ++v)
        if (!(used & (1 << v))) ++smaller;
      idx += smaller * fact[i];
      used |= 1 << image_[i];
    }
    return idx;
  }

  static Perm4 from_index(int i) { return all().at(static_cast<std::size_t>(i)); }

  /// Transposition of labels a and b.
  static Perm4 swap(int a, int b) {
    Perm4 p;
    std::swap(p.image_[a], p.image_[b]);
    return p;
  }

  constexpr int operator[](int i) const { return image_[i]; }

  constexpr Perm4 operator*(const Perm4& q) const {
    Perm4 r;
    for (int i = 0; i < 4; ++i) r.image_[i] = image_[q.image_[i]];
    return r;
  }

  constexpr Perm4 inverse() const {
    Perm4 r;
    for (int i = 0; i < 4; ++i) r.image_[image_[i]] = static_cast<std::uint8_t>(i);
    return r;
  }

  /// +1 for even permutations, -1 for odd ones.
  constexpr int sign() const {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (image_[i] > image_[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
  }

  constexpr bool is_identity() const {
    return image_[0] == 0 && image_[1] == 1 && image_[2] == 2 && image_[3] == 3;
  }

  std::string str() const {
    std::string s(4, '0');
    for (int i = 0; i < 4; ++i) s[i] = static_cast<char>('0' + image_[i]);
    return s;
  }

  constexpr bool operator==(const Perm4&) const = default;
  constexpr auto operator<=>(const Perm4& o) const { return index() <=> o.index(); }

 private:
  constexpr bool is_bijective() const {
    int seen = 0;
    for (auto v : image_) {
      if (v > 3) return false;
      seen |= 1 << v;
    }
    return seen == 0xF;
  }

  std::array<std::uint8_t, 4> image_;
};

inline std::ostream& operator<<(std::ostream& os, const Perm4& p) { return os << p.str(); }

// Edge slots of a tetrahedron, in the fixed order 01,02,03,12,13,23.
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Edge slot joining vertices a and b (a != b, any order).
constexpr int edge_index(int a, int b) {
  if (a > b) std::swap(a, b);
  constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  return table[a][b];
}

/// The edge slot opposite to slot e (sharing no vertex).
constexpr int opposite_edge(int e) { return 5 - e; }

}  // namespace crushcover
