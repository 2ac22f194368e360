#include "fixtures.hpp"
#include "plateau/export.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace plateau;

TEST(Off, SkeletonRoundTrip) {
  const Complex s = fixture::grid2d(4, 4);
  ASSERT_EQ(s.cells().size(), 16u);
  Skeleton k;
  for (int f : s.faces_of_dim(1))
    if (f % 3 == 0) k.faces.insert(f);
  k.faces.insert(s.faces_of_dim(0).front());
  std::stringstream buf;
  write_off(buf, mesh_from_skeleton(s, k));
  const auto back = skeleton_from_mesh(s, read_off(buf));
  EXPECT_EQ(back.faces, k.faces);
}

TEST(Off, VerticesSortedAndPadded) {
  const Complex s = fixture::grid2d(1, 1);
  Skeleton k{{s.faces_of_dim(1).begin(), s.faces_of_dim(1).end()}, {}};
  const auto mesh = mesh_from_skeleton(s, k);
  EXPECT_TRUE(std::is_sorted(mesh.vertices.begin(), mesh.vertices.end(), [](const Point& a, const Point& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  }));
  std::stringstream buf;
  write_off(buf, mesh);
  std::string first;
  std::getline(buf, first);
  EXPECT_EQ(first, "OFF");
}

TEST(Off, TruncatedFile) {
  std::stringstream buf("OFF\n4 1 0\n0 0 0\n1 0 0\n");
  try {
    read_off(buf);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GT(e.line(), 0);
  }
}

TEST(Off, EmptySkeleton) {
  const Complex s = fixture::grid2d(2, 2);
  std::stringstream buf;
  write_off(buf, mesh_from_skeleton(s, {}));
  const auto mesh = read_off(buf);
  EXPECT_TRUE(mesh.vertices.empty());
  EXPECT_TRUE(mesh.faces.empty());
  EXPECT_TRUE(skeleton_from_mesh(s, mesh).faces.empty());
}

TEST(Off, ForeignFaceRejected) {
  const Complex s = fixture::grid2d(2, 2);
  MeshData mesh;
  mesh.ambient = 2;
  mesh.vertices = {make_point({0, 0}), make_point({2, 2})};
  mesh.faces = {{0, 1}};
  EXPECT_THROW(skeleton_from_mesh(s, mesh), ParseError);
}

TEST(Ledgers, CascadeAndMovesHeaders) {
  RunReport report;
  StrideRecord r;
  r.k = 0;
  r.stride = 0.5;
  r.cascade.push_back({2, 3, 1.0, 0.8, 0.8});
  report.strides.push_back(r);
  std::stringstream csv;
  write_cascade_csv(csv, report);
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "# plateau cascade ledger v1");
  std::getline(csv, header);
  EXPECT_NE(header.find("level"), std::string::npos);

  std::stringstream moves;
  write_moves_csv(moves, {{1, "remove", 4, -0.5, true}});
  std::getline(moves, header);
  EXPECT_EQ(header, "# plateau move log v1");
}
