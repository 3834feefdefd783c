// Acceptance run: one PASS/FAIL line per criterion, with its runtime.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "crushcover/pipeline.hpp"
#include "support.hpp"

using namespace crushcover;

namespace {

struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 20) failures.push_back(what);
  }
};

std::string ks(std::size_t k) { return "k=" + std::to_string(k) + ": "; }

void construction_counts(Check& c) {
  for (std::size_t k = 1; k <= 10; ++k)
    for (const auto& [name, tri] : {std::pair{"loop", twisted_layered_loop(k)}, std::pair{"lens4k", layered_lens_4k(k)}}) {
      const auto r = validate(tri);
      c.expect(tri.size() == k, ks(k) + name + " has " + std::to_string(tri.size()) + " tetrahedra");
      c.expect(r.closed && r.orientable && r.pass(), ks(k) + name + " does not validate");
      c.expect(compute_skeleton(tri).vertices.size() == 1, ks(k) + name + " is not one-vertex");
    }
}

void homology_parity(Check& c) {
  for (std::size_t k = 1; k <= 10; ++k) {
    const auto want = k % 2 ? AbelianGroup::cyclic(4) : AbelianGroup::from_factors({2, 2});
    const auto loop = h1_integral(twisted_layered_loop(k));
    c.expect(loop == want, ks(k) + "loop H1 = " + loop.str());
    const auto lens = h1_integral(layered_lens_4k(k));
    c.expect(lens == AbelianGroup::cyclic(4 * static_cast<long>(k)), ks(k) + "lens4k H1 = " + lens.str());
  }
}

void cover_structure(Check& c) {
  for (std::size_t k = 2; k <= 10; ++k) {
    const auto want = AbelianGroup::cyclic(2 * static_cast<long>(k));
    const auto lens = layered_lens_4k(k);
    const auto classes = nonzero_classes(cocycle_basis(lens));
    c.expect(classes.size() == 1, ks(k) + "lens4k has " + std::to_string(classes.size()) + " nonzero classes");
    for (const auto& cl : classes) {
      const auto cov = build_double_cover(lens, cl);
      c.expect(verify_cover(cov) && is_connected_cover(cov), ks(k) + "lens4k cover does not verify");
      c.expect(compute_skeleton(cov.total).vertices.size() == 2, ks(k) + "lens4k cover is not two-vertex");
      c.expect(cov.total.size() == 2 * k, ks(k) + "lens4k cover size");
      c.expect(h1_integral(cov.total) == want, ks(k) + "lens4k cover H1");
    }
    bool found = false;
    const auto loop = twisted_layered_loop(k);
    for (const auto& cl : nonzero_classes(cocycle_basis(loop))) {
      const auto cov = build_double_cover(loop, cl);
      c.expect(verify_cover(cov), ks(k) + "loop cover does not verify");
      found = found || h1_integral(cov.total) == want;
    }
    c.expect(found, ks(k) + "no loop class with cover H1 = " + want.str());
  }
}

/// The family covers the pipeline chooses, rebuilt from their class index.
std::vector<std::pair<std::string, Cover>> family_covers(std::size_t k) {
  const auto cert = verify_family(k);
  std::vector<std::pair<std::string, Cover>> out;
  const std::pair<const FamilyRecord*, Triangulation> fams[] = {{&cert.loop, twisted_layered_loop(k)},
                                                                {&cert.lens4k, layered_lens_4k(k)}};
  for (const auto& [rec, base] : fams)
    if (rec->cover) out.push_back({rec->name, build_double_cover(base, nonzero_classes(cocycle_basis(base))[rec->cover->classId])});
  return out;
}

void crushing_equality(Check& c) {
  for (std::size_t k = 2; k <= 10; ++k) {
    const auto target = signature(layered_lens_2k1(k));
    const auto covers = family_covers(k);
    c.expect(covers.size() == 2, ks(k) + "missing family cover");
    for (const auto& [name, cov] : covers) {
      const auto sk = compute_skeleton(cov.total);
      const auto edges = vertex_joining_edges(cov);
      c.expect(!edges.empty(), ks(k) + name + " has no vertex-joining edge");
      for (auto e : edges) {
        const std::string at = ks(k) + name + " edge " + std::to_string(e) + ": ";
        c.expect(edge_profile(sk, e).tetCount == 3, at + "t != 3");
        try {
          const auto r = crush_vertex_joining_edge(cov.total, e).result;
          c.expect(validate(r).pass() && compute_skeleton(r).vertices.size() == 1, at + "result is not a valid one-vertex triangulation");
          c.expect(r.size() == 2 * k - 3, at + "result has " + std::to_string(r.size()) + " tetrahedra");
          c.expect(h1_integral(r) == AbelianGroup::cyclic(2 * static_cast<long>(k)), at + "result H1 = " + h1_integral(r).str());
          c.expect(signature(r) == target, at + "signature " + signature(r) + " != " + target);
        } catch (const TopologyError& ex) {
          c.expect(false, at + ex.what());
        }
      }
    }
  }
}

void lemma_audit(Check& c) {
  for (std::size_t k = 4; k <= 10; ++k)
    for (const auto& [name, cov] : family_covers(k)) {
      const auto a = audit_lifted_lemma(cov);
      c.expect(a.pass() && !a.checked.empty(), ks(k) + name + ": " + (a.violations.empty() ? "nothing checked" : a.violations.front()));
    }
}

void surfaces(Check& c) {
  for (std::size_t k = 2; k <= 8; ++k) {
    const auto loop = twisted_layered_loop_labeled(k);
    const auto sel = chain_vertical_selection(loop.labels);
    const auto kb = build_quad_surface(loop.tri, sel);
    c.expect(kb.connected() && kb.euler() == 0 && !kb.components[0].orientable && !kb.components[0].twoSided,
             ks(k) + "vertical surface is not a one-sided Klein bottle");
    bool torus = false;
    for (const auto& cl : nonzero_classes(cocycle_basis(loop.tri))) {
      const auto cov = build_double_cover(loop.tri, cl);
      if (h1_integral(cov.total) != AbelianGroup::cyclic(2 * static_cast<long>(k))) continue;
      const auto lift = build_quad_surface(cov.total, lift_selection(cov, sel));
      torus = torus || (lift.connected() && lift.euler() == 0 && lift.components[0].orientable);
    }
    c.expect(torus, ks(k) + "no Z_2k cover lifts the surface to a torus");
  }
}

bool contains(const std::vector<CensusEntry>& c, const std::string& sig) {
  return std::any_of(c.begin(), c.end(), [&](const CensusEntry& e) { return e.signature == sig; });
}

void census_uniqueness(Check& c) {
  const auto one = enumerate_closed(1);
  c.expect(contains(one, signature(twisted_layered_loop(1))), "n=1 lacks loop(1)");
  c.expect(signature(twisted_layered_loop(1)) == signature(layered_lens_4k(1)), "loop(1) and lens4k(1) differ");
  const auto two = enumerate_closed(2);
  const auto q = search_by_h1(two, AbelianGroup::from_factors({2, 2}));
  c.expect(q.size() == 1 && q[0].signature == signature(twisted_layered_loop(2)), "n=2: Z2+Z2 class is not unique loop(2)");
  const auto z = search_by_h1(two, AbelianGroup::cyclic(8));
  c.expect(z.size() == 1 && z[0].signature == signature(layered_lens_4k(2)), "n=2: Z8 class is not unique lens4k(2)");
  const auto three = enumerate_closed(3);
  c.expect(contains(three, signature(twisted_layered_loop(3))), "n=3 lacks loop(3)");
  c.expect(contains(three, signature(layered_lens_4k(3))), "n=3 lacks lens4k(3)");
  bool crushed = false;
  for (const auto& [name, cov] : family_covers(3))
    for (auto e : vertex_joining_edges(cov))
      crushed = crushed || contains(three, signature(crush_vertex_joining_edge(cov.total, e).result));
  c.expect(crushed, "n=3 lacks the k=3 crush result");
}

void skeleton_identities(Check& c, const Triangulation& t, const std::string& name) {
  const auto sk = compute_skeleton(t);
  std::size_t deg = 0;
  for (const auto& e : sk.edges) deg += e.degree;
  c.expect(deg == 6 * t.size() && sk.faces.size() == 2 * t.size() && sk.euler_characteristic() == 0,
           name + ": skeleton identities fail");
}

void property_suites(Check& c) {
  std::mt19937 rng(20261019);
  const auto instances = testing_support::closed_family_instances(10);
  for (const auto& [name, tri] : instances) {
    const auto sig = signature(tri);
    for (int i = 0; i < 200; ++i)
      c.expect(signature(testing_support::random_relabel(tri, rng).tri) == sig, name + ": signature changed under relabeling");
    skeleton_identities(c, tri, name);
  }
  std::vector<std::vector<CensusEntry>> census;
  for (std::size_t n = 1; n <= 3; ++n) {
    census.push_back(enumerate_closed(n));
    for (const auto& e : census.back()) skeleton_identities(c, from_signature(e.signature), e.signature);
  }
  for (const auto& [name, base] : instances) {
    const auto bsk = compute_skeleton(base);
    for (const auto& cl : nonzero_classes(cocycle_basis(base))) {
      const auto cov = build_double_cover(base, cl);
      const auto csk = compute_skeleton(cov.total);
      c.expect(cov.total.size() == 2 * base.size() && csk.faces.size() == 2 * bsk.faces.size(), name + ": cover cells do not double");
      c.expect(csk.euler_characteristic() == 2 * bsk.euler_characteristic(), name + ": cover Euler characteristic");
      std::vector<std::size_t> liftedDegree(bsk.edges.size(), 0);
      for (std::size_t e = 0; e < csk.edges.size(); ++e) {
        const auto b = image_edge(cov, csk, bsk, e);
        const auto d = csk.edges[e].degree, bd = bsk.edges[b].degree;
        c.expect(d == bd || d == 2 * bd, name + ": lifted edge degree");
        liftedDegree[b] += d;
      }
      for (std::size_t b = 0; b < bsk.edges.size(); ++b)
        c.expect(liftedDegree[b] == 2 * bsk.edges[b].degree, name + ": edge degree not preserved");
    }
  }
  for (std::size_t k = 2; k <= 10; ++k) {
    const auto cert = verify_family(k);
    for (const auto* rec : {&cert.loop, &cert.lens4k})
      for (const auto& cr : rec->crushes)
        c.expect(rec->cover && cr.resultH1 == rec->cover->h1, ks(k) + rec->name + ": crush changed H1");
  }
  for (std::size_t n = 1; n <= 2; ++n) {
    CensusOptions brute;
    brute.prune = false;
    const auto b = enumerate_closed(n, brute);
    bool same = b.size() == census[n - 1].size();
    for (std::size_t i = 0; same && i < b.size(); ++i) same = b[i].signature == census[n - 1][i].signature;
    c.expect(same, "n=" + std::to_string(n) + ": pruned and unpruned census differ");
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget;  // seconds
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"construction counts", 1, construction_counts},
      {"homology parity", 1, homology_parity},
      {"cover structure", 5, cover_structure},
      {"crushing equality", 10, crushing_equality},
      {"lemma audit", 5, lemma_audit},
      {"surfaces", 2, surfaces},
      {"census uniqueness", 1800, census_uniqueness},
      {"property suites", 600, property_suites},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(c);
    } catch (const std::exception& ex) {
      c.failures.push_back(std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > criteria[i].budget)
      c.failures.push_back("took " + std::to_string(secs) + " s, budget " + std::to_string(criteria[i].budget) + " s");
    std::printf("%s %zu %s (%.3f s)\n", c.failures.empty() ? "PASS" : "FAIL", i + 1, criteria[i].name, secs);
    for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
    failed += !c.failures.empty();
  }
  std::fflush(stdout);
  return failed ? 1 : 0;
}
