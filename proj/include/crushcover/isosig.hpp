#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crushcover/triangulation.hpp"

namespace crushcover {

/// A combinatorial isomorphism: tetrahedron i of the source maps to tets[i],
/// with vertex labels carried by perms[i].
struct Isomorphism {
  std::vector<std::size_t> tets;
  std::vector<Perm4> perms;
};

namespace detail {

inline constexpr std::string_view kSigAlphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-";

/// Canonical labeling of one connected component: tetrahedra in discovery
/// order, each with a map from new vertex labels to original labels.
struct CanonicalForm {
  std::vector<int> code;
  std::vector<std::size_t> order;
  std::vector<Perm4> labels;  // new label -> original label
};

/// Breadth-first relabeling from (start, startLabel). Gluings are emitted once,
/// from the earlier (tet, face) in the new order: 0 = boundary, 1 = new tetrahedron
/// (glued by the identity in new labels), 2 = existing tetrahedron j with permutation q.
inline CanonicalForm traverse(const Triangulation& tri, std::size_t start, Perm4 startLabel,
                              const std::vector<int>* bound = nullptr) {
  CanonicalForm cf;
  std::vector<std::size_t> newIndex(tri.size(), SIZE_MAX);
  newIndex[start] = 0;
  cf.order.push_back(start);
  cf.labels.push_back(startLabel);
  bool tied = bound != nullptr;
  auto emit = [&](int v) -> bool {
    if (tied) {
      const std::size_t pos = cf.code.size();
      if (pos < bound->size()) {
        if (v > (*bound)[pos]) return false;
        if (v < (*bound)[pos]) tied = false;
      }
    }
    cf.code.push_back(v);
    return true;
  };
  for (std::size_t i = 0; i < cf.order.size(); ++i) {
    const std::size_t t = cf.order[i];
    const Perm4 pi = cf.labels[i];
    for (int fn = 0; fn < 4; ++fn) {
      const auto& g = tri.gluing(t, pi[fn]);
      if (!g) {
        if (!emit(0)) return {};
        continue;
      }
      if (newIndex[g->tet] == SIZE_MAX) {
        newIndex[g->tet] = cf.order.size();
        cf.order.push_back(g->tet);
        cf.labels.push_back(g->perm * pi);
        if (!emit(1)) return {};
        continue;
      }
      const std::size_t j = newIndex[g->tet];
      const Perm4 q = cf.labels[j].inverse() * g->perm * pi;
      if (j < i || (j == i && q[fn] < fn)) continue;
      if (!emit(2) || !emit(static_cast<int>(j)) || !emit(q.index())) return {};
    }
  }
  return cf;
}

inline std::vector<std::vector<std::size_t>> components(const Triangulation& tri) {
  std::vector<std::size_t> comp(tri.size(), SIZE_MAX);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < tri.size(); ++s) {
    if (comp[s] != SIZE_MAX) continue;
    out.emplace_back();
    std::vector<std::size_t> stack{s};
    comp[s] = out.size() - 1;
    while (!stack.empty()) {
      auto t = stack.back();
      stack.pop_back();
      out.back().push_back(t);
      for (int f = 0; f < 4; ++f)
        if (const auto& g = tri.gluing(t, f); g && comp[g->tet] == SIZE_MAX) {
          comp[g->tet] = out.size() - 1;
          stack.push_back(g->tet);
        }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

inline CanonicalForm canonical_component(const Triangulation& tri, const std::vector<std::size_t>& tets) {
  CanonicalForm best;
  bool have = false;
  for (auto s : tets)
    for (const auto& p : Perm4::all()) {
      auto cf = traverse(tri, s, p, have ? &best.code : nullptr);
      if (cf.order.empty()) continue;  // pruned: exceeded the current best
      if (!have || cf.code < best.code) {
        best = std::move(cf);
        have = true;
      }
    }
  return best;
}

inline std::vector<CanonicalForm> canonical_forms(const Triangulation& tri) {
  std::vector<CanonicalForm> forms;
  for (const auto& comp : components(tri)) forms.push_back(canonical_component(tri, comp));
  std::sort(forms.begin(), forms.end(), [](const auto& a, const auto& b) {
    if (a.order.size() != b.order.size()) return a.order.size() < b.order.size();
    return a.code < b.code;
  });
  return forms;
}

inline void encode_number(std::string& out, std::size_t v, std::size_t width) {
  for (std::size_t i = 0; i < width; ++i) {
    out += kSigAlphabet[v % 64];
    v /= 64;
  }
}

inline std::size_t decode_number(std::string_view s, std::size_t& pos, std::size_t width) {
  std::size_t v = 0, mult = 1;
  for (std::size_t i = 0; i < width; ++i) {
    if (pos >= s.size()) throw TopologyError("signature: truncated");
    const auto k = kSigAlphabet.find(s[pos++]);
    if (k == std::string_view::npos) throw TopologyError("signature: bad character");
    v += k * mult;
    mult *= 64;
  }
  return v;
}

}  // namespace detail

/// Canonical signature: equal strings iff the triangulations are combinatorially
/// isomorphic. Each connected component is encoded as
/// width, tetrahedron count, then the canonical gluing code; components are
/// sorted and joined by '.'.
inline std::string signature(const Triangulation& tri) {
  std::string out;
  for (const auto& cf : detail::canonical_forms(tri)) {
    if (!out.empty()) out += '.';
    const std::size_t n = cf.order.size();
    std::size_t width = 1;
    while ((std::size_t{1} << (6 * width)) <= n) ++width;
    out += detail::kSigAlphabet[width];
    detail::encode_number(out, n, width);
    for (std::size_t i = 0; i < cf.code.size(); ++i) {
      out += detail::kSigAlphabet[static_cast<std::size_t>(cf.code[i])];
      if (cf.code[i] == 2) {
        detail::encode_number(out, static_cast<std::size_t>(cf.code[i + 1]), width);
        out += detail::kSigAlphabet[static_cast<std::size_t>(cf.code[i + 2])];
        i += 2;
      }
    }
  }
  return out;
}

/// Rebuilds a triangulation (in canonical labeling) from a signature.
inline Triangulation from_signature(std::string_view sig) {
  Triangulation tri;
  std::size_t pos = 0;
  while (pos < sig.size()) {
    if (sig[pos] == '.') {
      ++pos;
      continue;
    }
    const std::size_t width = detail::decode_number(sig, pos, 1);
    if (width == 0) throw TopologyError("signature: bad width");
    const std::size_t n = detail::decode_number(sig, pos, width);
    const std::size_t base = tri.size();
    for (std::size_t i = 0; i < n; ++i) tri.add_tetrahedron();
    std::size_t created = 1;
    for (std::size_t i = 0; i < created; ++i) {
      for (int f = 0; f < 4; ++f) {
        if (tri.gluing(base + i, f)) continue;
        const std::size_t type = detail::decode_number(sig, pos, 1);
        if (type == 0) continue;
        if (type == 1) {
          if (created >= n) throw TopologyError("signature: too many tetrahedra");
          tri.glue(base + i, f, base + created++, Perm4());
        } else if (type == 2) {
          const std::size_t j = detail::decode_number(sig, pos, width);
          const std::size_t q = detail::decode_number(sig, pos, 1);
          if (j >= created || q >= 24) throw TopologyError("signature: bad gluing");
          tri.glue(base + i, f, base + j, Perm4::from_index(static_cast<int>(q)));
        } else {
          throw TopologyError("signature: bad gluing type");
        }
      }
    }
    if (created != n) throw TopologyError("signature: disconnected component");
  }
  return tri;
}

/// True iff `iso` carries every gluing of a onto the corresponding gluing of b.
inline bool is_isomorphism(const Triangulation& a, const Triangulation& b, const Isomorphism& iso) {
  if (a.size() != b.size() || iso.tets.size() != a.size() || iso.perms.size() != a.size()) return false;
  std::vector<bool> hit(b.size(), false);
  for (auto t : iso.tets) {
    if (t >= b.size() || hit[t]) return false;
    hit[t] = true;
  }
  for (std::size_t t = 0; t < a.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      const auto& ga = a.gluing(t, f);
      const auto& gb = b.gluing(iso.tets[t], iso.perms[t][f]);
      if (ga.has_value() != gb.has_value()) return false;
      if (!ga) continue;
      if (gb->tet != iso.tets[ga->tet] || gb->perm != iso.perms[ga->tet] * ga->perm * iso.perms[t].inverse())
        return false;
    }
  return true;
}

/// A witness isomorphism a -> b, if one exists.
inline std::optional<Isomorphism> find_isomorphism(const Triangulation& a, const Triangulation& b) {
  if (a.size() != b.size()) return std::nullopt;
  const auto fa = detail::canonical_forms(a);
  const auto fb = detail::canonical_forms(b);
  if (fa.size() != fb.size()) return std::nullopt;
  Isomorphism iso{std::vector<std::size_t>(a.size()), std::vector<Perm4>(a.size())};
  for (std::size_t c = 0; c < fa.size(); ++c) {
    if (fa[c].code != fb[c].code || fa[c].order.size() != fb[c].order.size()) return std::nullopt;
    for (std::size_t i = 0; i < fa[c].order.size(); ++i) {
      iso.tets[fa[c].order[i]] = fb[c].order[i];
      iso.perms[fa[c].order[i]] = fb[c].labels[i] * fa[c].labels[i].inverse();
    }
  }
  if (!is_isomorphism(a, b, iso)) return std::nullopt;
  return iso;
}

}  // namespace crushcover
