#pragma once

// Quadrature around a pole: a 2D rule in the zonal variables (polar angle on
// spheres; circle offset and polar angle on products) times a direction rule on
// the orthogonal unit sphere. Zonal integrands are evaluated once per ring.

#include <cmath>
#include <vector>

#include "conflab/manifold.hpp"

namespace conflab {

struct PolarSpec {
  int panels = 14;            // graded panels toward the pole
  int per_panel = 12;         // Gauss nodes per graded panel
  int cell_nodes = 24;        // Gauss nodes per direction in regular product cells
  int duffy_nodes = 16;       // angular nodes of the Duffy corner
  int direction_degree = -1;  // exactness of the direction rule; -1: Lmax + 4
};

class PolarRule {
 public:
  PolarRule(const ManifoldModel& m, const Point& pole, const PolarSpec& spec = {});

  int ring_count() const { return static_cast<int>(ring_w_.size()); }
  int direction_count() const { return dirs_.size(); }
  // Volume weight of node (r, d) is ring_weight(r) * direction_weight(d).
  double ring_weight(int r) const { return ring_w_[r]; }
  double direction_weight(int d) const { return dirs_.weights[d]; }
  // A point on ring r (direction along the first tangent vector).
  const Point& ring_point(int r) const { return ring_pt_[r]; }
  Point point(int r, int d) const;
  // Zonal coordinates of ring r: (0, theta) on spheres, (tau, chi) on products (internal units).
  double ring_tau(int r) const { return tau_[r]; }
  double ring_angle(int r) const { return ang_[r]; }
  // Internal distance of ring r from the pole.
  double ring_radius(int r) const { return std::hypot(tau_[r], ang_[r]); }

 private:
  void add_ring(double tau, double ang, double w);

  bool product_;
  int N_;  // ambient dimension of the sphere (factor)
  double scale_n_;
  Point pole_;
  std::vector<std::vector<double>> E_;
  SphereRule dirs_;
  std::vector<double> tau_, ang_, ring_w_;
  std::vector<Point> ring_pt_;
};

}  // namespace conflab
