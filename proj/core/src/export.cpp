#include "plateau/export.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

namespace plateau {

namespace {

bool lex_less(const Point& a, const Point& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

std::vector<int> face_vertex_cycle(const Complex& s, int f) {
  // Vertex ids of the face in geometric cycle order.
  const auto cyc = face_cycle(s, f);
  const auto& ids = s.face(f).vertices;
  std::vector<int> out;
  for (const auto& p : cyc) {
    int best = ids.front();
    double bd = std::numeric_limits<double>::infinity();
    for (int v : ids) {
      const double dist = (s.vertex_points()[v] - p).norm();
      if (dist < bd) {
        bd = dist;
        best = v;
      }
    }
    out.push_back(best);
  }
  return out;
}

std::string fmt(double x) {
  std::ostringstream o;
  o << std::setprecision(17) << x;
  return o.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

}  // namespace

MeshData mesh_from_skeleton(const Complex& s, const Skeleton& k) {
  MeshData mesh;
  mesh.ambient = s.ambient_dim();
  std::set<int> used;
  for (int f : k.faces)
    for (int v : s.face(f).vertices) used.insert(v);
  std::vector<int> order(used.begin(), used.end());
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return lex_less(s.vertex_points()[a], s.vertex_points()[b]); });
  std::map<int, int> index;
  for (int v : order) {
    index[v] = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(s.vertex_points()[v]);
  }
  for (int f : k.faces) {
    std::vector<int> face;
    for (int v : face_vertex_cycle(s, f)) face.push_back(index.at(v));
    mesh.faces.push_back(face);
  }
  return mesh;
}

MeshData mesh_from_set(const SimplicialSet& e) {
  MeshData mesh;
  mesh.ambient = e.ambient_dim();
  std::vector<Point> pts;
  for (const auto& sx : e.simplices())
    for (const auto& p : sx.pts) pts.push_back(p);
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return lex_less(pts[a], pts[b]); });
  std::vector<int> index(pts.size());
  for (int i : order) {
    if (mesh.vertices.empty() || (mesh.vertices.back() - pts[i]).norm() > 1e-12) mesh.vertices.push_back(pts[i]);
    index[i] = static_cast<int>(mesh.vertices.size()) - 1;
  }
  int at = 0;
  for (const auto& sx : e.simplices()) {
    std::vector<int> face;
    for (std::size_t j = 0; j < sx.pts.size(); ++j) face.push_back(index[at++]);
    mesh.faces.push_back(face);
  }
  return mesh;
}

Skeleton skeleton_from_mesh(const Complex& s, const MeshData& mesh, double eps) {
  std::map<std::vector<int>, int> by_vertices;
  for (std::size_t f = 0; f < s.faces().size(); ++f) by_vertices[s.faces()[f].vertices] = static_cast<int>(f);
  std::vector<int> vid;
  for (const auto& p : mesh.vertices) {
    int found = -1;
    for (std::size_t v = 0; v < s.vertex_points().size(); ++v)
      if ((s.vertex_points()[v] - p.head(s.ambient_dim())).lpNorm<Eigen::Infinity>() <= eps) {
        found = static_cast<int>(v);
        break;
      }
    if (found < 0) throw ParseError("mesh vertex is not a vertex of the complex", 0);
    vid.push_back(found);
  }
  Skeleton k;
  for (std::size_t i = 0; i < mesh.faces.size(); ++i) {
    std::vector<int> ids;
    for (int j : mesh.faces[i]) ids.push_back(vid.at(j));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto it = by_vertices.find(ids);
    if (it == by_vertices.end()) throw ParseError("mesh face " + std::to_string(i) + " is not a face of the complex", 0);
    k.faces.insert(it->second);
  }
  return k;
}

void write_off(std::ostream& out, const MeshData& mesh) {
  out << "OFF\n# ambient " << mesh.ambient << "\n";
  out << mesh.vertices.size() << ' ' << mesh.faces.size() << " 0\n";
  for (const auto& p : mesh.vertices) {
    for (int i = 0; i < 3; ++i) out << (i ? " " : "") << fmt(i < p.size() ? p[i] : 0.0);
    out << '\n';
  }
  for (const auto& f : mesh.faces) {
    out << f.size();
    for (int v : f) out << ' ' << v;
    out << '\n';
  }
}

MeshData read_off(std::istream& in) {
  MeshData mesh;
  int line = 0;
  std::string raw;
  // Next non-comment line; comments may carry the ambient dimension.
  auto next = [&](const char* what) {
    while (std::getline(in, raw)) {
      ++line;
      const auto a = raw.find_first_not_of(" \t\r");
      if (a == std::string::npos) continue;
      if (raw[a] == '#') {
        std::istringstream c(raw.substr(a + 1));
        std::string word;
        int n = 0;
        if (c >> word >> n && word == "ambient") mesh.ambient = n;
        continue;
      }
      return raw;
    }
    throw ParseError(std::string("unexpected end of file, expected ") + what, line + 1);
  };
  if (next("OFF header").find("OFF") == std::string::npos) throw ParseError("missing OFF header", line);
  std::size_t nv = 0, nf = 0, ne = 0;
  {
    std::istringstream c(next("counts"));
    if (!(c >> nv >> nf >> ne)) throw ParseError("malformed counts", line);
  }
  if (mesh.ambient < 1 || mesh.ambient > 3) throw ParseError("ambient dimension must be 1..3", line);
  for (std::size_t i = 0; i < nv; ++i) {
    std::istringstream c(next("vertex"));
    double x[3];
    if (!(c >> x[0] >> x[1] >> x[2])) throw ParseError("malformed vertex", line);
    Point p(mesh.ambient);
    for (int j = 0; j < mesh.ambient; ++j) p[j] = x[j];
    mesh.vertices.push_back(p);
  }
  for (std::size_t i = 0; i < nf; ++i) {
    std::istringstream c(next("face"));
    std::size_t k = 0;
    if (!(c >> k) || k == 0) throw ParseError("malformed face", line);
    std::vector<int> f(k);
    for (auto& v : f)
      if (!(c >> v) || v < 0 || static_cast<std::size_t>(v) >= nv) throw ParseError("bad face index", line);
    mesh.faces.push_back(f);
  }
  return mesh;
}

void export_mesh(const MeshData& mesh, const std::string& path) {
  auto out = open_out(path);
  write_off(out, mesh);
}

MeshData import_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_off(in);
}

void write_cascade_csv(std::ostream& out, const RunReport& report) {
  out << "# plateau cascade ledger v1\nstride,level,measure_before,measure_after,ratio\n";
  for (const auto& r : report.strides)
    for (const auto& l : r.cascade)
      out << fmt(r.stride) << ',' << l.level << ',' << fmt(l.measure_before) << ',' << fmt(l.measure_after) << ','
          << fmt(l.ratio) << '\n';
}

void write_moves_csv(std::ostream& out, const std::vector<MoveRecord>& moves) {
  out << "# plateau move log v1\niter,move,face,delta,accepted\n";
  for (const auto& m : moves)
    out << m.iter << ',' << m.move << ',' << m.face << ',' << fmt(m.delta) << ',' << (m.accepted ? 1 : 0) << '\n';
}

void write_report_jsonl(std::ostream& out, const RunReport& report) {
  using nlohmann::json;
  for (const auto& r : report.strides) {
    json j{{"type", "stride"},
           {"k", r.k},
           {"stride", r.stride},
           {"cells", r.cells},
           {"j", r.j_value},
           {"hausdorff", r.h_value},
           {"d_k", r.d_k},
           {"probe_max", r.probe_max},
           {"init", r.init},
           {"certificate", r.certificate == Certificate::Exhaustive ? "exhaustive" : "local"},
           {"cores", r.core_sizes},
           {"merged", r.merged}};
    json levels = json::array();
    for (const auto& l : r.cascade)
      levels.push_back({{"level", l.level}, {"before", l.measure_before}, {"after", l.measure_after}, {"ratio", l.ratio}});
    j["cascade"] = levels;
    if (r.merged)
      j["merge"] = {{"gap_cells", r.merge.gap_cell_count},
                    {"min_rotondity", r.merge.measured_min_rotondity},
                    {"outer_radius_ratio", r.merge.outer_radius_ratio},
                    {"valid", r.merge.valid}};
    out << j.dump() << '\n';
  }
  json lsc = json::array();
  for (const auto& w : report.lsc.windows)
    lsc.push_back({{"limit", w.limit_value}, {"liminf", w.liminf}, {"margin", w.margin}, {"pass", w.pass}});
  json gauge = json::array();
  for (const auto& g : report.gauge) gauge.push_back({{"delta", g.delta}, {"excess", g.excess}, {"samples", g.samples}});
  json summary{{"type", "summary"},
               {"converged", report.converged},
               {"limit_admissible", report.limit_admissible},
               {"final_j", report.strides.empty() ? 0.0 : report.strides.back().j_value},
               {"skeleton", std::vector<int>(report.skeleton.faces.begin(), report.skeleton.faces.end())},
               {"lsc", lsc},
               {"lsc_min_margin", report.lsc.min_margin},
               {"probe", {{"trials", report.probe.trials},
                          {"admissible", report.probe.admissible},
                          {"skipped", report.probe.skipped},
                          {"max_ratio", report.probe.max_ratio}}},
               {"gauge", gauge},
               {"notes", report.notes}};
  out << summary.dump() << '\n';
}

void write_run_artifacts(const RunReport& report, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  const std::filesystem::path base(dir);
  {
    auto out = open_out((base / "report.jsonl").string());
    write_report_jsonl(out, report);
  }
  {
    auto out = open_out((base / "cascade.csv").string());
    write_cascade_csv(out, report);
  }
  {
    auto out = open_out((base / "moves.csv").string());
    write_moves_csv(out, report.moves);
  }
  export_mesh(mesh_from_skeleton(report.complex, report.skeleton), (base / "skeleton.off").string());
}

}  // namespace plateau
