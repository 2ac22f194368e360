#pragma once

#include "plateau/complex.hpp"
#include "plateau/maps.hpp"
#include "plateau/skeleton.hpp"

#include <cstdint>
#include <vector>

namespace plateau {

struct CenterChoice {
  Point center;
  double measure = 0.0;         // projected d-measure at the chosen center
  double candidate_mean = 0.0;  // mean projected measure over accepted candidates
  double original = 0.0;        // d-measure of the pieces before projection
  double ratio = 1.0;           // measure / original
  double rotondity = 1.0;       // of the face
  double k_emp = 0.0;           // (candidate_mean / original) * rotondity^(2d)
  int accepted = 0;
  int rejected = 0;
};

struct CenterOptions {
  int candidates = 64;
  std::uint64_t seed = 0;
  double clearance_fraction = 0.01;  // of the face inradius
};

/// Samples candidate centers uniformly in the ball of half the inradius around
/// the inscribed center, rejects those close to the pieces, and keeps the one
/// with the smallest projected d-measure. Throws NoCenterFound.
CenterChoice optimal_center(const Polyhedron& face, const std::vector<std::vector<Point>>& pieces, int d,
                            const CenterOptions& options = {});
CenterChoice optimal_center(const Polyhedron& face, const SimplicialSet& e, const CenterOptions& options = {});

/// Projected d-measure of the pieces under radial projection from `center`.
double projected_measure(const Polyhedron& face, const Point& center, const std::vector<std::vector<Point>>& pieces,
                         int d);

/// Convex piece of the set together with the smallest subface holding it.
struct HostedPiece {
  std::vector<Point> pts;
  int host = -1;
};

/// Cuts the set along the cells of the complex. Parts lying on a face shared by
/// several cells are kept once. Parts of dimension below d are dropped.
std::vector<HostedPiece> host_pieces(const Complex& s, const SimplicialSet& e, double* outside_measure = nullptr);
std::vector<HostedPiece> host_pieces(const Complex& s, const Skeleton& k);
SimplicialSet pieces_to_set(const std::vector<HostedPiece>& pieces, int d, int ambient_dim);
double pieces_measure(const std::vector<HostedPiece>& pieces, int d);

struct CascadeLevel {
  int level = 0;
  int faces_touched = 0;
  double measure_before = 0.0;
  double measure_after = 0.0;
  double ratio = 1.0;
};

struct CascadeResult {
  SimplicialSet image;
  std::vector<HostedPiece> pieces;
  PiecewiseMap map;
  std::vector<CascadeLevel> ledger;
  std::vector<CenterChoice> centers;
  double outside_measure = 0.0;
};

/// Pushes the set into the d-skeleton by radial projections from optimal
/// centers, one dimension at a time from n down to d + 1.
CascadeResult ff_cascade(const Complex& s, const SimplicialSet& e, int d, const CenterOptions& options = {});

struct ErosionResult {
  Skeleton skeleton;
  double measure_before = 0.0;
  double measure_after = 0.0;
  int projections = 0;
};

/// Projects partially covered faces onto their boundary until the set is a
/// union of subfaces. The set must lie in the d-skeleton.
ErosionResult erode(const Complex& s, const std::vector<HostedPiece>& pieces, int d, double cover_eps = 1e-6);
ErosionResult erode(const Complex& s, const SimplicialSet& e, double cover_eps = 1e-6);
ErosionResult erode(const Complex& s, const Skeleton& k, int d, double cover_eps = 1e-6);

struct PatchFit {
  Point center;
  Point plane_point;
  Matrix plane_basis;
  double r = 0.0;
  double u = 0.0;
  double rho = 0.0;
  double leakage = 0.0;      // fraction of the measure in B(x, r(1+rho)) outside the cone
  double local_measure = 0.0;

  ConeRegion cone() const { return ConeRegion{center, r, u, plane_point, plane_basis}; }
};

struct PatchOptions {
  double epsilon = 0.1;
  int max_patches = 16;
  double aperture = 0.25;
  double rho = 0.5;
};

/// Greedy disjoint cone-ball patches centered on simplex barycenters.
std::vector<PatchFit> fit_patches(const SimplicialSet& e, const PatchOptions& options = {});
/// Measure of the set inside B(x, r(1+rho)) and the part of it outside the cone.
std::pair<double, double> patch_leakage(const SimplicialSet& e, const PatchFit& fit);

}  // namespace plateau
