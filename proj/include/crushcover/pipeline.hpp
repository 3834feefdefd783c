#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "crushcover/census.hpp"
#include "crushcover/constructions.hpp"
#include "crushcover/covers.hpp"
#include "crushcover/isosig.hpp"
#include "crushcover/moves.hpp"
#include "crushcover/surfaces.hpp"

namespace crushcover {

inline constexpr int kCertificateSchemaVersion = 1;

struct BaseRecord {
  std::size_t tetCount = 0;
  AbelianGroup h1;
  std::string signature;
};

struct CoverRecord {
  std::size_t classId = 0;  // index into nonzero_classes(cocycle_basis(base))
  AbelianGroup h1;
  std::size_t vertices = 0;
  std::size_t tetCount = 0;
  bool verified = false;
};

struct CrushRecord {
  std::size_t edge = 0;
  std::size_t t = 0;
  std::size_t resultTets = 0;
  std::string resultSignature;
  AbelianGroup resultH1;
};

struct FamilyRecord {
  std::string name;
  BaseRecord base;
  std::optional<CoverRecord> cover;
  std::vector<CrushRecord> crushes;
  std::optional<std::size_t> auditViolations;  // absent when the audit does not apply
};

struct SurfaceDigest {
  std::size_t components = 0;
  long euler = 0;
  bool orientable = false;
  bool twoSided = false;
};

/// How far an upper bound c(M) <= n is certified: always witnessed by a
/// triangulation; exact only when no smaller census triangulation has the same H1.
struct ComplexityBound {
  std::string manifold;
  std::size_t upperBound = 0;
  bool censusExact = false;
};

struct FamilyCertificate {
  std::size_t k = 0;
  FamilyRecord loop, lens4k;
  std::string lens2k1Signature;
  bool crossFamilyAgreement = false;
  std::optional<SurfaceDigest> kleinBottleCheck, torusLiftCheck;
  bool inequalityWitness = false;  // 2k - t(e) equals the crushed tetrahedron count on every edge
  std::optional<bool> censusCheck;
  std::vector<ComplexityBound> complexity;
  std::vector<std::string> failures;

  bool pass() const { return failures.empty(); }
};

namespace detail {

inline SurfaceDigest digest(const SurfaceReport& r) {
  SurfaceDigest d;
  d.components = r.components.size();
  d.euler = r.euler();
  d.orientable = std::all_of(r.components.begin(), r.components.end(), [](auto& c) { return c.orientable; });
  d.twoSided = std::all_of(r.components.begin(), r.components.end(), [](auto& c) { return c.twoSided; });
  return d;
}

inline BaseRecord base_record(const Triangulation& tri) { return {tri.size(), h1_integral(tri), signature(tri)}; }

/// Picks the cover for a family, crushes every vertex-joining edge and audits.
/// Loop covers prefer the class whose lifted vertical surface is a torus, since
/// for k = 2 all three classes have cover H1 = Z_4.
inline std::optional<Cover> run_family(FamilyRecord& rec, const Triangulation& base, std::size_t k,
                                       const std::optional<QuadSelection>& vertical, std::vector<std::string>& failures) {
  const std::string where = rec.name + " k=" + std::to_string(k) + ": ";
  rec.base = base_record(base);
  if (rec.base.tetCount != k) failures.push_back(where + "base has " + std::to_string(rec.base.tetCount) + " tetrahedra");
  const auto basis = cocycle_basis(base);
  if (!vertical && basis.size() != 1)
    failures.push_back(where + "expected a unique nonzero class, found " + std::to_string((1u << basis.size()) - 1));
  const auto classes = nonzero_classes(basis);
  const auto want = AbelianGroup::cyclic(2 * static_cast<long>(k));
  std::optional<Cover> chosen;
  std::size_t chosenId = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto cov = build_double_cover(base, classes[i]);
    if (h1_integral(cov.total) != want) continue;
    const bool torus = !vertical || build_quad_surface(cov.total, lift_selection(cov, *vertical)).components.at(0).orientable;
    if (chosen && !torus) continue;
    chosen = std::move(cov);
    chosenId = i;
    if (torus) break;
  }
  if (!chosen) {
    failures.push_back(where + "no class has a cover with H1 = " + want.str());
    return std::nullopt;
  }
  const auto sk = compute_skeleton(chosen->total);
  rec.cover = CoverRecord{chosenId, h1_integral(chosen->total), sk.vertices.size(), chosen->total.size(), verify_cover(*chosen)};
  if (!rec.cover->verified) failures.push_back(where + "verify_cover failed");
  if (rec.cover->vertices != 2) failures.push_back(where + "cover has " + std::to_string(rec.cover->vertices) + " vertices");
  if (rec.cover->tetCount != 2 * k) failures.push_back(where + "cover has " + std::to_string(rec.cover->tetCount) + " tetrahedra");

  if (k >= 4) {
    const auto audit = audit_lifted_lemma(*chosen);
    rec.auditViolations = audit.violations.size();
    if (!audit.pass()) failures.push_back(where + "audit: " + audit.violations.front());
  }
  for (auto e : vertex_joining_edges(*chosen)) {
    CrushRecord cr;
    cr.edge = e;
    cr.t = edge_profile(sk, e).tetCount;
    const std::string at = where + "edge " + std::to_string(e) + ": ";
    try {
      const auto report = crush_vertex_joining_edge(chosen->total, e);
      cr.resultTets = report.result.size();
      cr.resultSignature = signature(report.result);
      cr.resultH1 = h1_integral(report.result);
      const auto v = validate(report.result);
      if (!v.pass()) failures.push_back(at + "crush result does not validate");
      if (compute_skeleton(report.result).vertices.size() != 1) failures.push_back(at + "crush result is not one-vertex");
    } catch (const TopologyError& ex) {
      failures.push_back(at + "crush failed: " + ex.what());
    }
    if (cr.t != 3) failures.push_back(at + "t = " + std::to_string(cr.t) + ", expected 3");
    if (cr.resultTets != 2 * k - cr.t) failures.push_back(at + "crushed tetrahedron count is not 2k - t");
    if (cr.resultH1 != want) failures.push_back(at + "crushed H1 is " + cr.resultH1.str());
    rec.crushes.push_back(std::move(cr));
  }
  if (rec.crushes.empty()) failures.push_back(where + "no vertex-joining edges");
  return chosen;
}

}  // namespace detail

/// Runs every check for one k: both families, their double covers, every
/// crush, the surface checks and, for k <= 3, the census cross-check.
inline FamilyCertificate verify_family(std::size_t k) {
  if (k < 2) throw std::invalid_argument("verify: k must be at least 2");
  FamilyCertificate cert;
  cert.k = k;
  cert.loop.name = "loop";
  cert.lens4k.name = "lens4k";
  auto& fail = cert.failures;

  const auto loop = twisted_layered_loop_labeled(k);
  const auto vertical = chain_vertical_selection(loop.labels);
  const auto loopCover = detail::run_family(cert.loop, loop.tri, k, vertical, fail);
  const auto lens = layered_lens_4k(k);
  detail::run_family(cert.lens4k, lens, k, std::nullopt, fail);
  cert.lens2k1Signature = signature(layered_lens_2k1(k));

  std::vector<const CrushRecord*> all;
  for (const auto* rec : {&cert.loop, &cert.lens4k})
    for (const auto& cr : rec->crushes) all.push_back(&cr);
  cert.crossFamilyAgreement = !cert.loop.crushes.empty() && !cert.lens4k.crushes.empty() &&
                              std::all_of(all.begin(), all.end(), [&](auto* cr) { return cr->resultSignature == all.front()->resultSignature; });
  if (!cert.crossFamilyAgreement) fail.push_back("crush signatures differ across edges or families");
  if (!all.empty() && all.front()->resultSignature != cert.lens2k1Signature)
    fail.push_back("crush signature differs from the layered L(2k,1)");
  cert.inequalityWitness = !all.empty() && std::all_of(all.begin(), all.end(), [&](auto* cr) {
    return cr->t == 3 && cr->resultTets == 2 * k - cr->t;
  });

  cert.kleinBottleCheck = detail::digest(build_quad_surface(loop.tri, vertical));
  const auto& kb = *cert.kleinBottleCheck;
  if (kb.components != 1 || kb.euler != 0 || kb.orientable || kb.twoSided)
    fail.push_back("vertical surface is not a one-sided Klein bottle");
  if (loopCover) {
    cert.torusLiftCheck = detail::digest(build_quad_surface(loopCover->total, lift_selection(*loopCover, vertical)));
    const auto& tl = *cert.torusLiftCheck;
    if (tl.components != 1 || tl.euler != 0 || !tl.orientable) fail.push_back("lifted surface is not a torus");
  }

  // For k <= 3 the crushed lens has at most k tetrahedra, so censuses up to k
  // decide both exactness (nothing smaller has the same H1) and containment.
  std::vector<std::vector<CensusEntry>> census;
  const std::size_t crushTets = 2 * k - 3;
  if (k <= 3)
    for (std::size_t n = 1; n <= k; ++n) census.push_back(enumerate_closed(n));
  auto exact = [&](std::size_t n, const AbelianGroup& g) {
    if (k > 3) return false;
    for (std::size_t m = 1; m < n; ++m)
      if (!search_by_h1(census[m - 1], g).empty()) return false;
    return true;
  };
  const auto lensH1 = AbelianGroup::cyclic(4 * static_cast<long>(k));
  const auto twoK = AbelianGroup::cyclic(2 * static_cast<long>(k));
  cert.complexity.push_back({"S3/Q" + std::to_string(4 * k), k, exact(k, cert.loop.base.h1)});
  cert.complexity.push_back({"L(" + std::to_string(4 * k) + "," + std::to_string(2 * k - 1) + ")", k, exact(k, lensH1)});
  cert.complexity.push_back({"L(" + std::to_string(2 * k) + ",1)", crushTets, exact(crushTets, twoK)});

  if (k <= 3) {
    const auto& ck = census[k - 1];
    auto contains = [&](const std::vector<CensusEntry>& c, const std::string& sig) {
      return std::any_of(c.begin(), c.end(), [&](auto& e) { return e.signature == sig; });
    };
    bool ok = contains(ck, cert.loop.base.signature) && contains(ck, cert.lens4k.base.signature);
    ok = ok && contains(census[crushTets - 1], cert.lens2k1Signature);
    if (k == 2) {
      const auto q8 = search_by_h1(ck, cert.loop.base.h1);
      const auto z8 = search_by_h1(ck, lensH1);
      ok = ok && q8.size() == 1 && q8[0].signature == cert.loop.base.signature && z8.size() == 1 &&
           z8[0].signature == cert.lens4k.base.signature;
    }
    cert.censusCheck = ok;
    if (!ok) fail.push_back("census cross-check failed");
  }
  return cert;
}

inline nlohmann::json group_json(const AbelianGroup& g) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& f : g.factor_list()) out.push_back(std::stoll(f));
  return out;
}

inline nlohmann::json surface_json(const SurfaceDigest& d) {
  return {{"components", d.components}, {"euler", d.euler}, {"orientable", d.orientable}, {"twoSided", d.twoSided}};
}

inline nlohmann::json to_json(const FamilyRecord& r) {
  nlohmann::json j;
  j["base"] = {{"tetCount", r.base.tetCount}, {"h1", group_json(r.base.h1)}, {"signature", r.base.signature}};
  if (r.cover)
    j["cover"] = {{"classId", r.cover->classId}, {"h1", group_json(r.cover->h1)}, {"vertices", r.cover->vertices},
                  {"tetCount", r.cover->tetCount}, {"verified", r.cover->verified}};
  else
    j["cover"] = nullptr;
  j["crushes"] = nlohmann::json::array();
  for (const auto& c : r.crushes)
    j["crushes"].push_back({{"edge", c.edge}, {"t", c.t}, {"resultTets", c.resultTets},
                            {"resultSignature", c.resultSignature}, {"resultH1", group_json(c.resultH1)}});
  j["auditViolations"] = r.auditViolations ? nlohmann::json(*r.auditViolations) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json to_json(const FamilyCertificate& c) {
  nlohmann::json j;
  j["schemaVersion"] = kCertificateSchemaVersion;
  j["k"] = c.k;
  j["pass"] = c.pass();
  j["families"] = {{"loop", to_json(c.loop)}, {"lens4k", to_json(c.lens4k)}};
  j["lens2k1Signature"] = c.lens2k1Signature;
  j["crossFamilyAgreement"] = c.crossFamilyAgreement;
  j["inequalityWitness"] = c.inequalityWitness;
  j["kleinBottleCheck"] = c.kleinBottleCheck ? surface_json(*c.kleinBottleCheck) : nlohmann::json(nullptr);
  j["torusLiftCheck"] = c.torusLiftCheck ? surface_json(*c.torusLiftCheck) : nlohmann::json(nullptr);
  j["censusCheck"] = c.censusCheck ? nlohmann::json(*c.censusCheck) : nlohmann::json(nullptr);
  j["complexity"] = nlohmann::json::array();
  for (const auto& b : c.complexity)
    j["complexity"].push_back({{"manifold", b.manifold}, {"upperBound", b.upperBound},
                               {"status", b.censusExact ? "census-exact" : "witnessed upper bound"}});
  j["failures"] = c.failures;
  j["firstFailure"] = c.failures.empty() ? nlohmann::json(nullptr) : nlohmann::json(c.failures.front());
  return j;
}

}  // namespace crushcover
