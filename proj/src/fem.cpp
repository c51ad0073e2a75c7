#include "feti/fem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace feti {

void Material::validate() const {
  if (!(Emin > 0.0) || !(Emin < E0))
    throw std::invalid_argument("material: need 0 < Emin < E0");
  if (!(nu >= 0.0) || !(nu < 0.5))
    throw std::invalid_argument("material: need 0 <= nu < 0.5");
  if (!(p >= 1.0)) throw std::invalid_argument("material: need p >= 1");
  if (!(thickness > 0.0))
    throw std::invalid_argument("material: need thickness > 0");
}

double simp_modulus(double rho, const Material& mat) {
  if (!(rho >= 0.0) || !(rho <= 1.0))
    throw std::domain_error("simp_modulus: rho = " + std::to_string(rho) +
                            " outside [0, 1]");
  return mat.Emin + std::pow(rho, mat.p) * (mat.E0 - mat.Emin);
}

DensityField::DensityField(int nx, int ny, double value)
    : nx_(nx), ny_(ny), values_(static_cast<std::size_t>(nx) * ny, value) {
  validate();
}

DensityField::DensityField(int nx, int ny, std::vector<double> values)
    : nx_(nx), ny_(ny), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != nx_ * ny_)
    throw std::invalid_argument("density field size mismatch");
  validate();
}

void DensityField::validate() const {
  for (double v : values_)
    if (!(v >= 0.0) || !(v <= 1.0))
      throw std::domain_error("density outside [0, 1]");
}

Matrix q4_element_stiffness(const Material& mat, double modulus, double hx,
                            double hy) {
  if (!(modulus > 0.0) || !(hx > 0.0) || !(hy > 0.0))
    throw std::invalid_argument("q4_element_stiffness: nonpositive input");

  // Unit-modulus plane-stress constitutive matrix.
  const double nu = mat.nu;
  const double c = 1.0 / (1.0 - nu * nu);
  Eigen::Matrix3d D;
  D << c, c * nu, 0.0, c * nu, c, 0.0, 0.0, 0.0, c * (1.0 - nu) / 2.0;

  static const double g = 1.0 / std::sqrt(3.0);
  static const double xi[4] = {-1.0, 1.0, 1.0, -1.0};
  static const double eta[4] = {-1.0, -1.0, 1.0, 1.0};

  Matrix k = Matrix::Zero(8, 8);
  const double det_j = hx * hy / 4.0;
  for (int gp = 0; gp < 4; ++gp) {
    const double s = g * xi[gp];
    const double t = g * eta[gp];
    Eigen::Matrix<double, 3, 8> b = Eigen::Matrix<double, 3, 8>::Zero();
    for (int a = 0; a < 4; ++a) {
      const double dn_ds = 0.25 * xi[a] * (1.0 + eta[a] * t);
      const double dn_dt = 0.25 * eta[a] * (1.0 + xi[a] * s);
      const double dn_dx = dn_ds * 2.0 / hx;
      const double dn_dy = dn_dt * 2.0 / hy;
      b(0, 2 * a) = dn_dx;
      b(1, 2 * a + 1) = dn_dy;
      b(2, 2 * a) = dn_dy;
      b(2, 2 * a + 1) = dn_dx;
    }
    k += b.transpose() * D * b * det_j;
  }
  k *= mat.thickness;

  // Enforce exact symmetry; the quadrature loop is symmetric only to roundoff.
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) k(j, i) = k(i, j);

  return modulus * k;
}

SubdomainSystem assemble_subdomain(const StructuredMesh& mesh,
                                   const DensityField& density,
                                   const Material& mat, int module_type) {
  mat.validate();
  if (density.nx() != mesh.nx || density.ny() != mesh.ny)
    throw std::invalid_argument("assemble_subdomain: density/mesh mismatch");

  const Matrix k_unit = q4_element_stiffness(mat, 1.0, mesh.hx, mesh.hy);

  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(mesh.element_count()) * 64);
  for (int ey = 0; ey < mesh.ny; ++ey) {
    for (int ex = 0; ex < mesh.nx; ++ex) {
      const double e_mod = simp_modulus(density.at(ex, ey), mat);
      const auto nodes = mesh.element_nodes(ex, ey);
      int dofs[8];
      for (int a = 0; a < 4; ++a) {
        dofs[2 * a] = 2 * nodes[a];
        dofs[2 * a + 1] = 2 * nodes[a] + 1;
      }
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
          trips.emplace_back(dofs[i], dofs[j], e_mod * k_unit(i, j));
    }
  }

  SubdomainSystem sub;
  sub.mesh = mesh;
  sub.module_type = module_type;
  sub.density = density;
  sub.K = SparseSymMatrix(mesh.dof_count(), trips);
  sub.f = Vector::Zero(mesh.dof_count());
  return sub;
}

namespace {

struct EdgeChain {
  int n_elems;      // edge elements along the side
  double h;         // element length along the side
  int node0;        // node id at chain position 0
  int node_stride;  // node id increment along the side
};

EdgeChain side_chain(const StructuredMesh& mesh, Side side) {
  switch (side) {
    case Side::bottom:
      return {mesh.nx, mesh.hx, mesh.node_id(0, 0), 1};
    case Side::top:
      return {mesh.nx, mesh.hx, mesh.node_id(0, mesh.ny), 1};
    case Side::left:
      return {mesh.ny, mesh.hy, mesh.node_id(0, 0), mesh.nx + 1};
    case Side::right:
      return {mesh.ny, mesh.hy, mesh.node_id(mesh.nx, 0), mesh.nx + 1};
  }
  throw std::logic_error("unreachable");
}

}  // namespace

void apply_traction(SubdomainSystem& sub, Side side, int first, int count,
                    double tx, double ty) {
  const EdgeChain chain = side_chain(sub.mesh, side);
  if (first < 0 || count < 0 || first + count > chain.n_elems)
    throw EdgeNotOnBoundary("traction chain [" + std::to_string(first) + ", " +
                            std::to_string(first + count) +
                            ") leaves the boundary");
  const double half = chain.h / 2.0;
  for (int e = first; e < first + count; ++e) {
    const int n0 = chain.node0 + e * chain.node_stride;
    const int n1 = n0 + chain.node_stride;
    sub.f[2 * n0] += half * tx;
    sub.f[2 * n0 + 1] += half * ty;
    sub.f[2 * n1] += half * tx;
    sub.f[2 * n1 + 1] += half * ty;
  }
}

void apply_traction(SubdomainSystem& sub, Side side, double tx, double ty) {
  const EdgeChain chain = side_chain(sub.mesh, side);
  apply_traction(sub, side, 0, chain.n_elems, tx, ty);
}

}  // namespace feti
