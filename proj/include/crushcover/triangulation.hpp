#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "crushcover/perm.hpp"

namespace crushcover {

/// Raised on malformed input or on a violated precondition.
class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Destination of a glued face: the partner tetrahedron and the map that
/// carries this tetrahedron's vertex labels onto the partner's.
struct Gluing {
  std::size_t tet = 0;
  Perm4 perm;
  bool operator==(const Gluing&) const = default;
};

/// Identifies a face slot: face f of tetrahedron tet (the face opposite vertex f).
struct FaceRef {
  std::size_t tet = 0;
  int face = 0;
  auto operator<=>(const FaceRef&) const = default;
};

/// A pseudo-simplicial triangulation: tetrahedra with faces glued in pairs.
///
/// Face f of a tetrahedron is the face opposite vertex f. A gluing of face f of
/// tetrahedron i to tetrahedron j is stored on both sides; the permutation sends
/// i's vertex labels to j's, so perm[f] is the partner face, and the partner
/// stores the inverse permutation. Gluing a face to a different face of the same
/// tetrahedron is allowed; gluing a face to itself is not.
class Triangulation {
 public:
  using FaceTable = std::array<std::optional<Gluing>, 4>;

  Triangulation() = default;
  explicit Triangulation(std::size_t tets) : adj_(tets) {}

  /// Wraps a raw gluing table without checking it; `validate()` reports defects.
  static Triangulation from_raw(std::vector<FaceTable> table) {
    Triangulation t;
    t.adj_ = std::move(table);
    return t;
  }

  std::size_t size() const { return adj_.size(); }
  bool empty() const { return adj_.empty(); }

  std::size_t add_tetrahedron() {
    adj_.emplace_back();
    return adj_.size() - 1;
  }

  const std::optional<Gluing>& gluing(std::size_t tet, int face) const { return adj_.at(tet).at(face); }
  const std::optional<Gluing>& gluing(FaceRef f) const { return gluing(f.tet, f.face); }
  bool is_boundary(std::size_t tet, int face) const { return !gluing(tet, face).has_value(); }

  /// Glues face `face` of `tet` to the face perm[face] of `dest`.
  void glue(std::size_t tet, int face, std::size_t dest, Perm4 perm) {
    if (tet >= size() || dest >= size()) throw TopologyError("glue: tetrahedron index out of range");
    const int dface = perm[face];
    if (tet == dest && dface == face)
      throw TopologyError("glue: face " + std::to_string(face) + " of tetrahedron " + std::to_string(tet) +
                          " glued to itself");
    if (adj_[tet][face] || adj_[dest][dface])
      throw TopologyError("glue: face already glued (" + std::to_string(tet) + ":" + std::to_string(face) + " -> " +
                          std::to_string(dest) + ":" + std::to_string(dface) + ")");
    adj_[tet][face] = Gluing{dest, perm};
    adj_[dest][dface] = Gluing{tet, perm.inverse()};
  }

  void unglue(std::size_t tet, int face) {
    const auto& g = adj_.at(tet).at(face);
    if (!g) return;
    const auto partner = *g;
    adj_[partner.tet][partner.perm[face]].reset();
    adj_[tet][face].reset();
  }

  const std::vector<FaceTable>& table() const { return adj_; }

  std::size_t boundary_face_count() const {
    std::size_t n = 0;
    for (const auto& row : adj_)
      for (const auto& g : row)
        if (!g) ++n;
    return n;
  }

  bool operator==(const Triangulation&) const = default;

  /// Canonical ".tri" text: "tets N" followed by one line per tetrahedron with
  /// four entries, "-" for boundary or "j:abcd".
  std::string to_tri() const {
    std::ostringstream out;
    out << "tets " << size() << '\n';
    for (const auto& row : adj_) {
      for (int f = 0; f < 4; ++f) {
        if (f) out << ' ';
        if (row[f])
          out << row[f]->tet << ':' << row[f]->perm.str();
        else
          out << '-';
      }
      out << '\n';
    }
    return out.str();
  }

  /// Parses ".tri" text. Structural defects (asymmetric gluings, a face glued to
  /// itself, a permutation not carrying the face onto its partner) are rejected.
  static Triangulation parse_tri(const std::string& text) {
    std::istringstream in(text);
    std::string keyword;
    long long n = -1;
    if (!(in >> keyword >> n) || keyword != "tets" || n < 0) throw TopologyError("tri: expected header 'tets N'");
    std::vector<FaceTable> table(static_cast<std::size_t>(n));
    for (std::size_t t = 0; t < table.size(); ++t) {
      for (int f = 0; f < 4; ++f) {
        std::string tok;
        if (!(in >> tok))
          throw TopologyError("tri: tetrahedron " + std::to_string(t) + " has fewer than 4 entries");
        if (tok == "-") continue;
        const auto colon = tok.find(':');
        if (colon == std::string::npos || colon == 0) throw TopologyError("tri: bad entry '" + tok + "'");
        std::size_t dest = 0;
        try {
          std::size_t used = 0;
          dest = std::stoul(tok.substr(0, colon), &used);
          if (used != colon) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          throw TopologyError("tri: bad tetrahedron index in '" + tok + "'");
        }
        if (dest >= table.size()) throw TopologyError("tri: tetrahedron index out of range in '" + tok + "'");
        Perm4 p;
        try {
          p = Perm4::from_string(tok.substr(colon + 1));
        } catch (const std::invalid_argument& e) {
          throw TopologyError(std::string("tri: ") + e.what());
        }
        table[t][f] = Gluing{dest, p};
      }
    }
    std::string extra;
    if (in >> extra) throw TopologyError("tri: trailing content '" + extra + "'");
    auto tri = from_raw(std::move(table));
    if (auto err = tri.structural_defect()) throw TopologyError("tri: " + *err);
    return tri;
  }

  /// First structural defect of the gluing table, if any.
  std::optional<std::string> structural_defect() const {
    for (std::size_t t = 0; t < size(); ++t) {
      for (int f = 0; f < 4; ++f) {
        const auto& g = adj_[t][f];
        if (!g) continue;
        const std::string where = "face " + std::to_string(t) + ":" + std::to_string(f);
        if (g->tet >= size()) return where + " points outside the triangulation";
        const int df = g->perm[f];
        if (g->tet == t && df == f) return where + " is glued to itself";
        const auto& back = adj_[g->tet][df];
        if (!back || back->tet != t || back->perm != g->perm.inverse())
          return where + " is not matched by the inverse gluing on its partner";
      }
    }
    return std::nullopt;
  }

 private:
  std::vector<FaceTable> adj_;
};

/// Applies a relabeling: tetrahedron i becomes tetPerm[i], and its vertex v
/// becomes vertexPerms[i][v].
inline Triangulation relabel(const Triangulation& t, const std::vector<std::size_t>& tetPerm,
                             const std::vector<Perm4>& vertexPerms) {
  if (tetPerm.size() != t.size() || vertexPerms.size() != t.size())
    throw TopologyError("relabel: size mismatch");
  Triangulation out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (int f = 0; f < 4; ++f) {
      const auto& g = t.gluing(i, f);
      if (!g) continue;
      const int nf = vertexPerms[i][f];
      if (out.gluing(tetPerm[i], nf)) continue;
      const Perm4 np = vertexPerms[g->tet] * g->perm * vertexPerms[i].inverse();
      out.glue(tetPerm[i], nf, tetPerm[g->tet], np);
    }
  }
  return out;
}

}  // namespace crushcover
