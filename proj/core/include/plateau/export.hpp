#pragma once

#include "plateau/driver.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace plateau {

/// Polygon soup for OFF files. Edges are 2-index faces and isolated vertices
/// 1-index faces.
struct MeshData {
  int ambient = 3;
  std::vector<Point> vertices;
  std::vector<std::vector<int>> faces;
};

/// Vertices sorted lexicographically by coordinates; faces in face-id order.
MeshData mesh_from_skeleton(const Complex& s, const Skeleton& k);
MeshData mesh_from_set(const SimplicialSet& e);
/// Inverse of mesh_from_skeleton on the same complex. Throws ParseError when a
/// mesh face is not a face of the complex.
Skeleton skeleton_from_mesh(const Complex& s, const MeshData& mesh, double eps = 1e-9);

void write_off(std::ostream& out, const MeshData& mesh);
MeshData read_off(std::istream& in);
void export_mesh(const MeshData& mesh, const std::string& path);
MeshData import_mesh(const std::string& path);

void write_cascade_csv(std::ostream& out, const RunReport& report);
void write_moves_csv(std::ostream& out, const std::vector<MoveRecord>& moves);
void write_report_jsonl(std::ostream& out, const RunReport& report);

/// Writes report.jsonl, cascade.csv, moves.csv and skeleton.off into `dir`.
void write_run_artifacts(const RunReport& report, const std::string& dir);

}  // namespace plateau
