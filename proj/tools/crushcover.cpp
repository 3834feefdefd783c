// crushcover: build, inspect, cover, crush and certify small closed 3-manifold triangulations.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "crushcover/census.hpp"
#include "crushcover/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace crushcover;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kCheckFailed = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Triangulation read_tri(const std::string& path) {
  try {
    return Triangulation::parse_tri(slurp(path));
  } catch (const TopologyError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void require_closed_valid(const Triangulation& tri, const std::string& path) {
  const auto r = validate(tri);
  if (!r.pass()) throw InputError(path + ": not a closed orientable 3-manifold triangulation (" + r.failures.front() + ")");
}

void emit_tri(const Triangulation& tri, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << tri.to_tri();
    return;
  }
  std::ofstream f(out);
  if (!f) throw InputError("cannot write " + out);
  f << tri.to_tri();
}

json invariants_json(const Triangulation& tri) {
  const auto sk = compute_skeleton(tri);
  const auto r = validate(tri);
  json degrees = json::array();
  for (const auto& e : sk.edges) degrees.push_back(e.degree);
  return {{"tets", tri.size()},
          {"vertices", sk.vertices.size()},
          {"edges", sk.edges.size()},
          {"faces", sk.faces.size()},
          {"euler", sk.euler_characteristic()},
          {"closed", r.closed},
          {"orientable", r.orientable},
          {"valid", r.manifold()},
          {"edgeDegrees", degrees},
          {"h1", group_json(h1_integral(tri))},
          {"h1Text", h1_integral(tri).str()},
          {"h1Mod2Dimension", h1_mod2_dimension(tri)},
          {"signature", signature(tri)},
          {"failures", r.failures}};
}

json surface_report_json(const SurfaceReport& r) {
  json comps = json::array();
  for (const auto& c : r.components)
    comps.push_back({{"euler", c.euler}, {"orientable", c.orientable}, {"twoSided", c.twoSided}, {"quads", c.quads}});
  return {{"components", comps},
          {"euler", r.euler()},
          {"cells", {{"corners", r.corners}, {"arcs", r.arcs}, {"quads", r.quads}}}};
}

QuadSelection read_selection(const std::string& path, std::size_t tets) {
  json j;
  try {
    j = json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  const json& arr = j.is_object() ? j.at("quads") : j;
  if (!arr.is_array() || arr.size() != tets)
    throw InputError(path + ": expected an array of " + std::to_string(tets) + " entries (0, 1, 2 or null)");
  QuadSelection sel{std::vector<std::optional<int>>(tets)};
  for (std::size_t i = 0; i < tets; ++i) {
    if (arr[i].is_null()) continue;
    if (!arr[i].is_number_integer() || arr[i].get<int>() < 0 || arr[i].get<int>() > 2)
      throw InputError(path + ": entry " + std::to_string(i) + " is not 0, 1, 2 or null");
    sel.quad[i] = arr[i].get<int>();
  }
  return sel;
}

/// The vertical selection of the twisted layered loop isomorphic to tri, moved onto tri.
QuadSelection vertical_for(const Triangulation& tri) {
  const auto loop = twisted_layered_loop_labeled(tri.size());
  const auto iso = find_isomorphism(loop.tri, tri);
  if (!iso) throw InputError("--vertical needs a twisted layered loop; this triangulation is not one");
  return transport_selection(chain_vertical_selection(loop.labels), *iso);
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) throw std::invalid_argument(s);
    return {std::stoul(s.substr(0, dots)), std::stoul(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw InputError("--sweep expects A..B, got '" + s + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Triangulations of small 3-manifolds: layered families, double covers, edge crushing, census."};
  app.require_subcommand(1);

  std::string family, out;
  std::size_t k = 0;
  auto* build = app.add_subcommand("build", "Write a layered triangulation as .tri");
  build->add_option("family", family, "chain | loop | lens4k | lens2k1")
      ->required()
      ->check(CLI::IsMember({"chain", "loop", "lens4k", "lens2k1"}));
  build->add_option("-k", k, "Family parameter")->required();
  build->add_option("-o,--output", out, "Output file (default stdout)");

  std::string file, other, selectionFile;
  auto* inv = app.add_subcommand("invariants", "Skeleton counts, validity, H1 and signature as JSON");
  inv->add_option("file", file)->required();

  std::optional<std::size_t> buildClass;
  auto* covers = app.add_subcommand("covers", "List the connected double covers, or build one");
  covers->add_option("file", file)->required();
  covers->add_option("--build", buildClass, "Class id to build (prints the cover as .tri)");
  covers->add_option("-o,--output", out, "Output file for --build (default stdout)");

  std::size_t edge = 0;
  auto* crush = app.add_subcommand("crush", "Crush an edge joining the two vertices of a 2-vertex triangulation");
  crush->add_option("file", file)->required();
  crush->add_option("--edge", edge, "Edge class id")->required();
  crush->add_option("-o,--output", out, "Write the result as .tri");

  bool vertical = false;
  auto* surface = app.add_subcommand("surface", "Build a quad surface and report its topology");
  surface->add_option("file", file)->required();
  auto* vflag = surface->add_flag("--vertical", vertical, "Vertical selection of a twisted layered loop");
  auto* sopt = surface->add_option("--selection", selectionFile, "JSON array of quad types per tetrahedron");
  vflag->excludes(sopt);

  auto* isosig = app.add_subcommand("isosig", "Print the isomorphism signature; --compare exits 0 iff isomorphic");
  isosig->add_option("file", file)->required();
  isosig->add_option("--compare", other, "Second .tri file");

  std::size_t n = 0;
  unsigned workers = 1;
  bool oneVertex = false, allowN4 = false, nonOrientable = false;
  auto* census = app.add_subcommand("census", "Closed triangulations with n tetrahedra as JSON lines");
  census->add_option("-n", n, "Number of tetrahedra (1..4)")->required();
  census->add_flag("--one-vertex", oneVertex, "Only one-vertex triangulations");
  census->add_flag("--allow-n4", allowN4, "Permit the long n = 4 run");
  census->add_flag("--non-orientable", nonOrientable, "Include non-orientable triangulations");
  census->add_option("--workers", workers, "Parallel workers")->check(CLI::PositiveNumber);

  std::string sweep, outDir;
  auto* verify = app.add_subcommand("verify", "Certify the loop and lens families for k (or a sweep) as JSON");
  verify->add_option("-k", k, "Family parameter (k >= 2)");
  verify->add_option("--sweep", sweep, "Range A..B of k values");
  verify->add_option("--out", outDir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*build) {
      if (family == "chain") {
        emit_tri(layered_chain(k).tri, out);
      } else if (family == "loop") {
        emit_tri(twisted_layered_loop(k), out);
      } else if (family == "lens4k") {
        emit_tri(layered_lens_4k(k), out);
      } else {
        emit_tri(layered_lens_2k1(k), out);
      }
      return kOk;
    }

    if (*inv) {
      std::cout << invariants_json(read_tri(file)).dump(2) << '\n';
      return kOk;
    }

    if (*covers) {
      const auto tri = read_tri(file);
      require_closed_valid(tri, file);
      const auto classes = nonzero_classes(cocycle_basis(tri));
      if (buildClass) {
        if (*buildClass >= classes.size())
          throw InputError("class " + std::to_string(*buildClass) + " out of range (" + std::to_string(classes.size()) + " classes)");
        const auto cov = build_double_cover(tri, classes[*buildClass]);
        if (!verify_cover(cov)) throw CheckFailed("built cover fails verification");
        emit_tri(cov.total, out);
        return kOk;
      }
      json list = json::array();
      for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto cov = build_double_cover(tri, classes[i]);
        const auto sk = compute_skeleton(cov.total);
        json entry = {{"class", i},
                      {"cocycle", classes[i].value},
                      {"tets", cov.total.size()},
                      {"vertices", sk.vertices.size()},
                      {"h1", group_json(h1_integral(cov.total))},
                      {"verified", verify_cover(cov)}};
        if (sk.vertices.size() == 2) entry["vertexJoiningEdges"] = vertex_joining_edges(cov);
        list.push_back(entry);
      }
      std::cout << json{{"base", signature(tri)}, {"classes", list}}.dump(2) << '\n';
      return kOk;
    }

    if (*crush) {
      const auto tri = read_tri(file);
      require_closed_valid(tri, file);
      const auto sk = compute_skeleton(tri);
      if (sk.vertices.size() != 2)
        throw InputError(file + ": crushing needs 2 vertices, found " + std::to_string(sk.vertices.size()));
      if (edge >= sk.edges.size()) throw InputError("no edge " + std::to_string(edge) + " in " + file);
      if (sk.edges[edge].tail == sk.edges[edge].head)
        throw InputError("edge " + std::to_string(edge) + " has both ends at one vertex");
      CrushReport rep;
      try {
        rep = crush_vertex_joining_edge(tri, edge);
      } catch (const TopologyError& e) {
        throw CheckFailed(e.what());
      }
      if (!out.empty()) emit_tri(rep.result, out);
      std::cout << json{{"crushedEdge", rep.crushedEdge},
                        {"tetrahedraRemoved", rep.tetrahedraRemoved},
                        {"resultTets", rep.result.size()},
                        {"resultSignature", signature(rep.result)},
                        {"resultH1", group_json(h1_integral(rep.result))},
                        {"identificationTrace", rep.identificationTrace}}
                       .dump(2)
                << '\n';
      return kOk;
    }

    if (*surface) {
      const auto tri = read_tri(file);
      require_closed_valid(tri, file);
      if (!vertical && selectionFile.empty()) throw InputError("surface needs --vertical or --selection");
      const auto sel = vertical ? vertical_for(tri) : read_selection(selectionFile, tri.size());
      try {
        std::cout << surface_report_json(build_quad_surface(tri, sel)).dump(2) << '\n';
      } catch (const TopologyError& e) {
        throw InputError(e.what());
      }
      return kOk;
    }

    if (*isosig) {
      const auto a = read_tri(file);
      const auto sa = signature(a);
      std::cout << sa << '\n';
      if (other.empty()) return kOk;
      const auto sb = signature(read_tri(other));
      std::cout << sb << '\n';
      return sa == sb ? kOk : kCheckFailed;
    }

    if (*census) {
      CensusOptions opt;
      opt.orientable = !nonOrientable;
      if (oneVertex) opt.oneVertex = true;
      opt.allowN4 = allowN4;
      opt.workers = workers;
      std::vector<CensusEntry> entries;
      try {
        entries = enumerate_closed(n, opt);
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      for (const auto& e : entries)
        std::cout << json{{"sig", e.signature}, {"tets", e.tetCount}, {"h1", group_json(e.h1)}}.dump() << '\n';
      return kOk;
    }

    if (*verify) {
      std::size_t lo = k, hi = k;
      if (!sweep.empty()) std::tie(lo, hi) = parse_range(sweep);
      if (lo < 2 || hi < lo) throw InputError("verify needs 2 <= k (use -k K or --sweep A..B)");
      fs::create_directories(outDir);
      bool allPass = true;
      for (std::size_t kk = lo; kk <= hi; ++kk) {
        const auto cert = verify_family(kk);
        const auto path = fs::path(outDir) / ("family_k" + std::to_string(kk) + ".json");
        std::ofstream f(path);
        if (!f) throw InputError("cannot write " + path.string());
        f << to_json(cert).dump(2) << '\n';
        std::cout << "k=" << kk << (cert.pass() ? " PASS" : " FAIL: " + cert.failures.front()) << '\n';
        allPass = allPass && cert.pass();
      }
      return allPass ? kOk : kCheckFailed;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const TopologyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}
