#pragma once

#include <array>
#include <vector>

#include "feti/linalg.hpp"

namespace feti {

/// Plane-stress material with a SIMP-style density interpolation of the
/// Young modulus between a void value Emin and the solid value E0.
struct Material {
  double E0 = 1.0;
  double Emin = 1e-9;
  double nu = 0.3;
  double p = 3.0;
  double thickness = 1.0;

  void validate() const;
};

/// E(rho) = Emin + rho^p (E0 - Emin). Monotone nondecreasing on [0, 1];
/// throws std::domain_error outside.
double simp_modulus(double rho, const Material& mat);

/// Regular grid of nx×ny bilinear quadrilaterals, 2 DOFs per node.
/// Node (ix, iy) has id iy*(nx+1)+ix; DOFs are 2*node and 2*node+1.
struct StructuredMesh {
  int nx = 0;
  int ny = 0;
  double hx = 1.0;
  double hy = 1.0;

  int node_count() const { return (nx + 1) * (ny + 1); }
  int element_count() const { return nx * ny; }
  int dof_count() const { return 2 * node_count(); }
  int node_id(int ix, int iy) const { return iy * (nx + 1) + ix; }
  double node_x(int node) const { return (node % (nx + 1)) * hx; }
  double node_y(int node) const { return (node / (nx + 1)) * hy; }
  /// Corner nodes of element (ex, ey), counter-clockwise from lower left.
  std::array<int, 4> element_nodes(int ex, int ey) const {
    const int n0 = node_id(ex, ey);
    return {n0, n0 + 1, n0 + nx + 2, n0 + nx + 1};
  }
};

/// Per-element relative densities in [0, 1], row-major from the bottom row.
class DensityField {
 public:
  DensityField() = default;
  DensityField(int nx, int ny, double value);
  DensityField(int nx, int ny, std::vector<double> values);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int count() const { return nx_ * ny_; }
  double at(int ex, int ey) const { return values_[ey * nx_ + ex]; }
  double& at(int ex, int ey) { return values_[ey * nx_ + ex]; }
  const std::vector<double>& values() const { return values_; }

  void validate() const;

 private:
  int nx_ = 0;
  int ny_ = 0;
  std::vector<double> values_;
};

/// 8×8 plane-stress stiffness of one bilinear quad, exact 2×2 Gauss
/// quadrature. Linear in `modulus` (computed as modulus × unit matrix) and
/// bit-exactly symmetric. DOF order: (ux, uy) per node, nodes ccw.
Matrix q4_element_stiffness(const Material& mat, double modulus, double hx,
                            double hy);

/// One subdomain: local stiffness, load vector and metadata. No Dirichlet
/// data is embedded; supports are imposed by the solvers via constraints, so
/// K has the full 3-dimensional rigid-body nullspace.
struct SubdomainSystem {
  StructuredMesh mesh;
  int module_type = 0;
  DensityField density;
  SparseSymMatrix K;
  Vector f;
};

SubdomainSystem assemble_subdomain(const StructuredMesh& mesh,
                                   const DensityField& density,
                                   const Material& mat, int module_type = 0);

enum class Side { left, right, bottom, top };

/// Adds consistent nodal loads of a constant traction (per unit length) over
/// `count` boundary edge elements starting at `first`, trapezoidal lumping.
/// Throws EdgeNotOnBoundary when the chain leaves the mesh boundary.
void apply_traction(SubdomainSystem& sub, Side side, int first, int count,
                    double tx, double ty);

/// Whole-side convenience overload.
void apply_traction(SubdomainSystem& sub, Side side, double tx, double ty);

}  // namespace feti
