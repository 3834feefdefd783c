#pragma once

#include <algorithm>
#include <array>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crushcover/algebra.hpp"
#include "crushcover/isosig.hpp"
#include "crushcover/skeleton.hpp"

namespace crushcover {

struct CensusEntry {
  std::string signature;
  std::size_t tetCount = 0;
  AbelianGroup h1;
  bool oneVertex = false;
  bool orientable = true;
};

struct CensusOptions {
  bool orientable = true;                // false admits non-orientable manifolds as well
  std::optional<bool> oneVertex;         // filter on vertex count when set
  bool allowN4 = false;                  // n = 4 runs for minutes
  bool prune = true;                     // false: try every gluing, filter at the leaves
  unsigned workers = 1;
};

/// A connected 4-regular multigraph on n nodes (loops count twice), by its
/// symmetric multiplicity matrix.
struct FacePairingGraph {
  std::size_t n = 0;
  std::vector<int> mult;  // n*n, diagonal holds loop counts

  int at(std::size_t i, std::size_t j) const { return mult[i * n + j]; }
  bool operator<(const FacePairingGraph& o) const { return mult < o.mult; }
  bool operator==(const FacePairingGraph&) const = default;
};

namespace detail {

inline FacePairingGraph canonical_graph(const FacePairingGraph& g) {
  std::vector<std::size_t> order(g.n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  FacePairingGraph best;
  do {
    FacePairingGraph h{g.n, std::vector<int>(g.n * g.n)};
    for (std::size_t i = 0; i < g.n; ++i)
      for (std::size_t j = 0; j < g.n; ++j) h.mult[i * g.n + j] = g.at(order[i], order[j]);
    if (best.mult.empty() || h.mult < best.mult) best = std::move(h);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

inline bool graph_connected(const FacePairingGraph& g) {
  std::vector<bool> seen(g.n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < g.n; ++j)
      if (g.at(i, j) && !seen[j]) seen[j] = true, stack.push_back(j);
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

inline void extend_graphs(FacePairingGraph& g, std::vector<int>& free, std::size_t i, std::size_t j,
                          std::set<FacePairingGraph>& out) {
  if (i == g.n) {
    if (graph_connected(g)) out.insert(canonical_graph(g));
    return;
  }
  const std::size_t ni = (j + 1 == g.n) ? i + 1 : i, nj = (j + 1 == g.n) ? i + 1 : j + 1;
  const int cost = (i == j) ? 2 : 1;
  const int maxMult = (i == j) ? free[i] / 2 : std::min(free[i], free[j]);
  for (int m = 0; m <= maxMult; ++m) {
    free[i] -= cost * m;
    if (i != j) free[j] -= m;
    // Row i is finished once j reaches the last column.
    if (!(j + 1 == g.n && free[i] != 0)) {
      g.mult[i * g.n + j] = g.mult[j * g.n + i] = m;
      extend_graphs(g, free, ni, std::max(nj, ni), out);
    }
    free[i] += cost * m;
    if (i != j) free[j] += m;
  }
  g.mult[i * g.n + j] = g.mult[j * g.n + i] = 0;
}

/// Face pairs realizing a graph: tetrahedron i uses its faces in increasing
/// order along its incident edges, listed by (i, j) with loops first.
inline std::vector<std::pair<FaceRef, FaceRef>> realize_pairing(const FacePairingGraph& g,
                                                                const std::vector<std::array<int, 4>>& faceOrder) {
  std::vector<int> next(g.n, 0);
  std::vector<std::pair<FaceRef, FaceRef>> pairs;
  auto take = [&](std::size_t t) { return FaceRef{t, faceOrder[t][next[t]++]}; };
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = i; j < g.n; ++j)
      for (int m = 0; m < g.at(i, j); ++m) {
        auto a = take(i);
        auto b = take(j);
        pairs.push_back({a, b});
      }
  return pairs;
}

/// Gluing maps sending face a to face b, optionally only the orientation-compatible (odd) ones.
inline std::vector<Perm4> face_maps(int a, int b, bool oddOnly) {
  std::vector<Perm4> out;
  for (const auto& p : Perm4::all())
    if (p[a] == b && (!oddOnly || p.sign() < 0)) out.push_back(p);
  return out;
}

class GluingSearch {
 public:
  GluingSearch(std::size_t n, std::vector<std::pair<FaceRef, FaceRef>> pairs, const CensusOptions& opt,
               std::map<std::string, CensusEntry>& found)
      : n_(n), pairs_(std::move(pairs)), opt_(opt), found_(found), tri_(n) {}

  void run() {
    ParityUnionFind uf(6 * n_);
    step(0, uf);
  }

 private:
  void step(std::size_t depth, ParityUnionFind& uf) {
    if (depth == pairs_.size()) return leaf();
    const auto [a, b] = pairs_[depth];
    const bool oddOnly = opt_.prune && opt_.orientable;
    for (const auto& p : face_maps(a.face, b.face, oddOnly)) {
      ParityUnionFind next = uf;
      if (opt_.prune && !consistent_edges(next, a, b.tet, p)) continue;
      tri_.glue(a.tet, a.face, b.tet, p);
      step(depth + 1, next);
      tri_.unglue(a.tet, a.face);
    }
  }

  /// Records the edge identifications of one gluing; false if an edge meets itself reversed.
  static bool consistent_edges(ParityUnionFind& uf, FaceRef a, std::size_t bt, const Perm4& p) {
    for (int s = 0; s < 6; ++s) {
      const int u = kEdgeVertices[s][0], v = kEdgeVertices[s][1];
      if (u == a.face || v == a.face) continue;
      const int reversed = p[u] > p[v] ? 1 : 0;
      if (!uf.unite(6 * a.tet + s, 6 * bt + edge_index(p[u], p[v]), reversed)) return false;
    }
    return true;
  }

  void leaf() {
    const auto r = validate(tri_);
    if (!r.closed || !r.manifold()) return;
    if (opt_.orientable && !r.orientable) return;
    const auto sk = compute_skeleton(tri_);
    const bool oneVertex = sk.vertices.size() == 1;
    if (opt_.oneVertex && *opt_.oneVertex != oneVertex) return;
    auto sig = signature(tri_);
    if (found_.count(sig)) return;
    found_.emplace(sig, CensusEntry{sig, n_, h1_integral(tri_), oneVertex, r.orientable});
  }

  std::size_t n_;
  std::vector<std::pair<FaceRef, FaceRef>> pairs_;
  CensusOptions opt_;
  std::map<std::string, CensusEntry>& found_;
  Triangulation tri_;
};

inline void search_graph(const FacePairingGraph& g, const CensusOptions& opt, std::map<std::string, CensusEntry>& found) {
  // Relabelling a tetrahedron moves its faces, so one face order per
  // tetrahedron suffices. Orientation-preserving relabellings only reach the
  // even reorderings, so the pruned orientable search also tries the odd one.
  const bool twoOrders = opt.prune && opt.orientable;
  const std::size_t variants = twoOrders ? (std::size_t{1} << g.n) : 1;
  for (std::size_t mask = 0; mask < variants; ++mask) {
    std::vector<std::array<int, 4>> order(g.n);
    for (std::size_t t = 0; t < g.n; ++t)
      order[t] = (mask >> t) & 1 ? std::array<int, 4>{0, 1, 3, 2} : std::array<int, 4>{0, 1, 2, 3};
    GluingSearch(g.n, realize_pairing(g, order), opt, found).run();
  }
}

}  // namespace detail

/// All connected 4-regular multigraphs on n nodes up to isomorphism, sorted.
inline std::vector<FacePairingGraph> face_pairing_graphs(std::size_t n) {
  if (n == 0) return {};
  std::set<FacePairingGraph> out;
  FacePairingGraph g{n, std::vector<int>(n * n, 0)};
  std::vector<int> free(n, 4);
  detail::extend_graphs(g, free, 0, 0, out);
  return {out.begin(), out.end()};
}

/// Every closed triangulation with exactly n tetrahedra meeting the options,
/// once per isomorphism class, sorted by signature.
inline std::vector<CensusEntry> enumerate_closed(std::size_t n, const CensusOptions& opt = {}) {
  if (n < 1 || n > 4) throw std::invalid_argument("census: n must be between 1 and 4");
  if (n == 4 && !opt.allowN4) throw std::invalid_argument("census: n = 4 needs the explicit long-running flag");
  const auto graphs = face_pairing_graphs(n);
  const unsigned workers = std::max(1u, opt.workers);
  std::vector<std::map<std::string, CensusEntry>> parts(workers);
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w)
    jobs.push_back(std::async(workers == 1 ? std::launch::deferred : std::launch::async, [&, w] {
      for (std::size_t i = w; i < graphs.size(); i += workers) detail::search_graph(graphs[i], opt, parts[w]);
    }));
  for (auto& j : jobs) j.get();
  std::map<std::string, CensusEntry> merged;
  for (auto& part : parts) merged.merge(part);
  std::vector<CensusEntry> out;
  for (auto& [sig, entry] : merged) out.push_back(std::move(entry));
  return out;
}

inline std::vector<CensusEntry> search_by_h1(const std::vector<CensusEntry>& entries, const AbelianGroup& g) {
  std::vector<CensusEntry> out;
  std::copy_if(entries.begin(), entries.end(), std::back_inserter(out), [&](const CensusEntry& e) { return e.h1 == g; });
  return out;
}

}  // namespace crushcover
