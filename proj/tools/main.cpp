// plateau: grids, projections and skeleton minimization from config files.

#include "plateau/config.hpp"
#include "plateau/export.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace plateau;

enum class Level { Error, Warn, Info, Debug };
Level g_level = Level::Warn;

void log(Level lvl, const std::string& msg) {
  static const char* names[] = {"error", "warn", "info", "debug"};
  if (lvl <= g_level) std::cerr << "[" << names[static_cast<int>(lvl)] << "] " << msg << '\n';
}

struct Globals {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string level = "warn";
};

ProblemSpec load(const Globals& g) {
  if (g.config.empty()) throw ConfigError("--config is required");
  ProblemSpec spec = load_problem(g.config);
  if (g.seed) spec.seed = *g.seed;
  log(Level::Info, "loaded " + g.config);
  return spec;
}

std::string out_dir(const Globals& g) {
  if (!g.out.empty()) return g.out;
  if (const char* env = std::getenv("PLATEAU_OUT_DIR")) return env;
  return ".";
}

std::string prepare(const Globals& g) {
  const std::string dir = out_dir(g);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir);
  return dir;
}

std::string path_in(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

Skeleton all_faces(const Complex& s, int dim) {
  Skeleton k;
  for (int f : s.faces_of_dim(dim)) k.faces.insert(f);
  return k;
}

Complex stride_complex(const ProblemSpec& spec, double stride, bool merged) {
  ProblemSpec copy = spec;
  copy.patches = merged;
  return build_stride_complex(copy, stride, spec.input.empty() ? nullptr : &spec.input).first;
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_grid_build(const Globals& g, double stride) {
  const auto spec = load(g);
  const double h = stride > 0 ? stride : spec.r0;
  const Complex s = stride_complex(spec, h, false);
  const auto dir = prepare(g);
  export_mesh(mesh_from_skeleton(s, all_faces(s, s.dim() == 3 ? 2 : 1)), path_in(dir, "grid.off"));
  const auto& st = s.stats();
  print_json({{"stride", h},
              {"cells", s.cells().size()},
              {"vertices", s.vertex_points().size()},
              {"min_rotondity", st.min_rotondity},
              {"max_outer_radius", st.max_outer_radius}});
  return 0;
}

int cmd_grid_merge(const Globals& g, double stride) {
  auto spec = load(g);
  spec.patches = true;
  const double h = stride > 0 ? stride : spec.r0;
  auto [s, report] = build_stride_complex(spec, h, spec.input.empty() ? nullptr : &spec.input);
  if (!report) throw MergeDegenerate("no patch fits inside the domain at stride " + std::to_string(h));
  const auto dir = prepare(g);
  export_mesh(mesh_from_skeleton(s, all_faces(s, s.dim() == 3 ? 2 : 1)), path_in(dir, "merged.off"));
  print_json({{"stride", h},
              {"cells", s.cells().size()},
              {"gap_cells", report->gap_cell_count},
              {"steiner_points", report->steiner_points},
              {"min_rotondity", report->measured_min_rotondity},
              {"outer_radius_ratio", report->outer_radius_ratio},
              {"aligned_fill", report->aligned_fill},
              {"valid", report->valid}});
  return 0;
}

CascadeResult cascade_input(const ProblemSpec& spec, const Complex& s) {
  if (spec.input.empty()) throw ConfigError("[input] needs segments or triangles for projection");
  CenterOptions co;
  co.seed = spec.seed;
  return ff_cascade(s, spec.input, spec.d, co);
}

int cmd_project(const Globals& g) {
  const auto spec = load(g);
  const Complex s = stride_complex(spec, spec.r0, spec.patches);
  const auto cascade = cascade_input(spec, s);
  const auto dir = prepare(g);
  RunReport shim;
  StrideRecord rec;
  rec.stride = spec.r0;
  rec.cascade = cascade.ledger;
  shim.strides.push_back(rec);
  std::ofstream csv(path_in(dir, "cascade.csv"));
  write_cascade_csv(csv, shim);
  export_mesh(mesh_from_set(cascade.image), path_in(dir, "projected.off"));
  print_json({{"measure_before", spec.input.measure()},
              {"measure_after", cascade.image.measure()},
              {"outside_measure", cascade.outside_measure},
              {"levels", cascade.ledger.size()}});
  return 0;
}

int cmd_erode(const Globals& g) {
  const auto spec = load(g);
  const Complex s = stride_complex(spec, spec.r0, spec.patches);
  const auto cascade = cascade_input(spec, s);
  const auto eroded = erode(s, cascade.pieces, spec.d);
  const auto dir = prepare(g);
  export_mesh(mesh_from_skeleton(s, eroded.skeleton), path_in(dir, "eroded.off"));
  print_json({{"measure_before", eroded.measure_before},
              {"measure_after", eroded.measure_after},
              {"projections", eroded.projections},
              {"faces", eroded.skeleton.faces.size()}});
  return 0;
}

int cmd_optimize(const Globals& g) {
  auto spec = load(g);
  spec.levels = 1;
  spec.probe_trials = 0;
  const RunReport r = run(spec);
  const auto dir = prepare(g);
  std::ofstream moves(path_in(dir, "moves.csv"));
  write_moves_csv(moves, r.moves);
  export_mesh(mesh_from_skeleton(r.complex, r.skeleton), path_in(dir, "skeleton.off"));
  const auto& rec = r.strides.back();
  print_json({{"stride", rec.stride},
              {"value", rec.j_value},
              {"certificate", rec.certificate == Certificate::Exhaustive ? "exhaustive" : "local"},
              {"faces", r.skeleton.faces.size()}});
  return 0;
}

int cmd_minimize(const Globals& g) {
  const auto spec = load(g);
  const RunReport r = run(spec);
  const auto dir = prepare(g);
  write_run_artifacts(r, dir);
  log(Level::Info, "wrote run artifacts to " + dir);
  print_json({{"converged", r.converged},
              {"final_j", r.strides.back().j_value},
              {"strides", r.strides.size()},
              {"lsc_min_margin", r.lsc.min_margin},
              {"probe_max_ratio", r.probe.max_ratio}});
  return 0;
}

// Invariant suite on the first stride of the configured problem.
int cmd_verify(const Globals& g) {
  auto spec = load(g);
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
    failures += ok ? 0 : 1;
  };
  const Complex s = stride_complex(spec, spec.r0, spec.patches);
  check("complex valid", validate_complex(s).ok);
  spec.levels = 1;
  spec.probe_trials = 20;
  const RunReport r = run(spec);
  const ConstraintOracle oracle = make_oracle(spec, r.complex);
  check("optimum admissible", admissible(r.complex, r.skeleton, oracle, spec.d));
  const DensityField h = spec.density.build();
  check("value recomputes", std::abs(weighted_measure(r.complex, r.skeleton, spec.d, h) - r.strides[0].j_value) <=
                                1e-6 * std::max(1.0, r.strides[0].j_value));
  const auto again = erode(r.complex, r.skeleton, spec.d);
  check("erosion fixed point", maximal_faces(r.complex, again.skeleton.faces) ==
                                   maximal_faces(r.complex, r.skeleton.faces));
  std::stringstream buf;
  write_off(buf, mesh_from_skeleton(r.complex, r.skeleton));
  check("mesh round trip", skeleton_from_mesh(r.complex, read_off(buf)).faces == r.skeleton.faces);
  return failures == 0 ? 0 : 1;
}

int cmd_export(const Globals& g, const std::string& what) {
  const auto spec = load(g);
  const auto dir = prepare(g);
  if (what == "input") {
    export_mesh(mesh_from_set(spec.input), path_in(dir, "input.off"));
  } else if (what == "grid") {
    const Complex s = stride_complex(spec, spec.r0, spec.patches);
    export_mesh(mesh_from_skeleton(s, all_faces(s, s.dim() == 3 ? 2 : 1)), path_in(dir, "grid.off"));
  } else {
    auto copy = spec;
    copy.levels = 1;
    copy.probe_trials = 0;
    const RunReport r = run(copy);
    export_mesh(mesh_from_skeleton(r.complex, r.skeleton), path_in(dir, "skeleton.off"));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plateau: polyhedral skeleton minimization"};
  app.require_subcommand(1);
  Globals g;
  std::uint64_t seed = 0;
  app.add_option("--config", g.config, "problem config file")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "random seed override");
  app.add_option("--out", g.out, "output directory (default $PLATEAU_OUT_DIR or .)");
  app.add_option("--log-level", g.level, "error, warn, info or debug")
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}));

  double stride = 0.0;
  auto* grid = app.add_subcommand("grid", "lattice complexes");
  grid->require_subcommand(1);
  auto* build = grid->add_subcommand("build", "axis-aligned lattice over the domain");
  auto* merge_cmd = grid->add_subcommand("merge", "lattice with oriented patches merged in");
  for (auto* c : {build, merge_cmd}) c->add_option("--stride", stride, "lattice stride (default r0)");
  auto* project = app.add_subcommand("project", "cascade the input set onto the skeleton");
  auto* erode_cmd = app.add_subcommand("erode", "cascade then erode the input set");
  auto* optimize_cmd = app.add_subcommand("optimize", "optimize at the first stride");
  auto* minimize = app.add_subcommand("minimize", "full stride schedule");
  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  std::string what = "skeleton";
  auto* export_cmd = app.add_subcommand("export", "write an OFF mesh");
  export_cmd->add_option("what", what, "input, grid or skeleton")->check(CLI::IsMember({"input", "grid", "skeleton"}));

  for (auto* c : {build, merge_cmd, project, erode_cmd, optimize_cmd, minimize, verify, export_cmd}) c->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*seed_opt) g.seed = seed;
  if (g.level == "error") g_level = Level::Error;
  if (g.level == "info") g_level = Level::Info;
  if (g.level == "debug") g_level = Level::Debug;

  try {
    if (*build) return cmd_grid_build(g, stride);
    if (*merge_cmd) return cmd_grid_merge(g, stride);
    if (*project) return cmd_project(g);
    if (*erode_cmd) return cmd_erode(g);
    if (*optimize_cmd) return cmd_optimize(g);
    if (*minimize) return cmd_minimize(g);
    if (*verify) return cmd_verify(g);
    if (*export_cmd) return cmd_export(g, what);
  } catch (const plateau::Error& e) {
    log(Level::Error, e.what());
    return 1;
  } catch (const std::exception& e) {
    log(Level::Error, std::string("internal: ") + e.what());
    return 1;
  }
  return 2;
}
