#include "plateau/skeleton.hpp"

namespace plateau {

std::set<int> closure_of(const Complex& s, const std::set<int>& faces) {
  std::set<int> out;
  std::vector<int> stack(faces.begin(), faces.end());
  while (!stack.empty()) {
    const int f = stack.back();
    stack.pop_back();
    if (!out.insert(f).second) continue;
    for (int c : s.face(f).children) stack.push_back(c);
  }
  return out;
}

std::set<int> maximal_faces(const Complex& s, const std::set<int>& faces) {
  std::set<int> covered;
  for (int f : faces)
    for (int c : s.face(f).children)
      for (int g : s.closure(c)) covered.insert(g);
  std::set<int> out;
  for (int f : faces)
    if (!covered.count(f)) out.insert(f);
  return out;
}

std::vector<Point> face_cycle(const Complex& s, int face) { return s.face(face).geometry.vertices(); }

SimplicialSet skeleton_to_set(const Complex& s, const Skeleton& k, int d) {
  SimplicialSet out(d, s.ambient_dim());
  for (int f : k.faces) {
    if (s.face(f).dim != d) continue;
    const auto cyc = face_cycle(s, f);
    if (d == 0) {
      out.add({cyc[0]});
    } else if (d == 1) {
      out.add({cyc[0], cyc[1]});
    } else {
      for (std::size_t i = 1; i + 1 < cyc.size(); ++i) out.add({cyc[0], cyc[i], cyc[i + 1]});
    }
  }
  return out;
}

}  // namespace plateau
