#pragma once

#include <vector>

#include "feti/fem.hpp"
#include "feti/linalg.hpp"

namespace feti {

/// Regular sx×sy grid of identical rectangular subdomains, each meshed with
/// nx×ny elements. Global nodes live on the merged (sx·nx+1)×(sy·ny+1) grid;
/// nodes on subdomain interfaces map to one local copy per owner.
struct Partition {
  int sx = 1;
  int sy = 1;
  int nx = 1;
  int ny = 1;
  double hx = 1.0;
  double hy = 1.0;
  std::vector<int> module_type;  // sx*sy labels, row-major (sj*sx + si)

  int subdomain_count() const { return sx * sy; }
  int sub_id(int si, int sj) const { return sj * sx + si; }
  StructuredMesh local_mesh() const { return {nx, ny, hx, hy}; }

  int global_nodes_x() const { return sx * nx + 1; }
  int global_nodes_y() const { return sy * ny + 1; }
  int global_node_count() const { return global_nodes_x() * global_nodes_y(); }
  int global_node_id(int gx, int gy) const { return gy * global_nodes_x() + gx; }
  int global_node_gx(int gnode) const { return gnode % global_nodes_x(); }
  int global_node_gy(int gnode) const { return gnode / global_nodes_x(); }

  long long total_subdomain_dofs() const {
    return 2LL * (nx + 1) * (ny + 1) * subdomain_count();
  }

  struct NodeOwner {
    int sub;
    int local_node;
  };
  /// Owners of a global node in ascending subdomain order (1, 2 or 4 of them).
  std::vector<NodeOwner> owners_of_node(int gx, int gy) const;
};

/// Builds the regular partition. `module_assignment` must hold sx*sy labels;
/// throws DimensionMismatch otherwise.
Partition build_partition(int sx, int sy, int nx, int ny, double hx, double hy,
                          std::vector<int> module_assignment);

struct DirichletBc {
  int gnode;
  int dir;  // 0 = x, 1 = y
  double value;
};

enum class RowKind { interface_pair, dirichlet };

/// One signed Boolean constraint row. Interface rows carry exactly one +1 and
/// one -1 on two subdomain copies of the same global DOF and have zero gap;
/// Dirichlet rows carry a single +1 and the prescribed value as gap.
struct ConstraintRow {
  RowKind kind;
  int sub_plus;
  int dof_plus;
  int sub_minus = -1;
  int dof_minus = -1;
  double gap = 0.0;
  int multiplicity = 1;  // subdomains sharing the underlying global DOF
  int gnode = -1;
  int dir = 0;
};

struct BEntry {
  int row;
  int dof;
  double sign;
};

class ConstraintSet {
 public:
  ConstraintSet() = default;
  ConstraintSet(const Partition& partition, std::vector<ConstraintRow> rows);

  int row_count() const { return static_cast<int>(rows_.size()); }
  int interface_row_count() const { return n_interface_; }
  int dirichlet_row_count() const { return row_count() - n_interface_; }
  int subdomain_count() const { return partition_.subdomain_count(); }
  const std::vector<ConstraintRow>& rows() const { return rows_; }
  const Partition& partition() const { return partition_; }
  const std::vector<BEntry>& subdomain_entries(int s) const {
    return per_sub_[s];
  }

  Vector gap() const;  // c

  /// B u = sum_s B^s u^s over per-subdomain displacement vectors.
  Vector apply_B(const std::vector<Vector>& u) const;
  /// Accumulates B^s u^s into `acc`.
  void accumulate_Bs(int s, const Vector& u_s, Vector& acc) const;
  /// (B^s)^T lambda as a dense local vector.
  Vector apply_BsT(int s, const Vector& lambda) const;

 private:
  Partition partition_;
  std::vector<ConstraintRow> rows_;
  std::vector<std::vector<BEntry>> per_sub_;
  int n_interface_ = 0;
};

/// Pairwise interface constraints for every shared DOF (all m(m-1)/2
/// redundant pairs at a DOF owned by m subdomains) plus Dirichlet rows. A
/// prescribed DOF gets one Dirichlet row per owning copy and no interface
/// pairs; the copies are tied through the common prescribed value, which
/// keeps the scaling admissibility identity intact with unit Dirichlet
/// weights. Throws NodeNotFound for out-of-range Dirichlet entries.
ConstraintSet build_constraints(const Partition& partition,
                                const std::vector<DirichletBc>& dirichlet);

/// Translations and the in-plane rotation about the mesh centroid, as a
/// dof_count×3 basis. Annihilated by any assembled subdomain stiffness.
Matrix rigid_body_modes(const StructuredMesh& mesh);

/// Natural coarse space G = -R^T B^T, e = -R^T f with redundant rows of G
/// filtered through the rank-revealing Cholesky of G G^T.
struct CoarseSpace {
  Matrix G;   // full 3*N_s × m
  Vector e;   // full 3*N_s
  std::vector<int> kept;  // independent row subset (sorted)
  Matrix G_kept;
  Vector e_kept;
  Eigen::LLT<Matrix> ggt;
  Matrix R_local;  // shared rigid-mode basis (identical local meshes)

  const Matrix& rigid_modes(int /*s*/) const { return R_local; }

  /// P v = v - G^T (G G^T)^{-1} G v on the filtered rows.
  void project(Vector& v) const;
  void project_block(Matrix& w) const;
  /// lambda0 = G^T (G G^T)^{-1} e, the minimum-norm point with G lambda = e.
  Vector initial_lambda() const;
  /// max_i |(G lambda - e)_i| over all (unfiltered) rows.
  double constraint_residual_inf(const Vector& lambda) const;
  /// Least-squares rigid-mode coefficients minimizing |G^T alpha - rho|.
  Vector alpha_for(const Vector& rho) const;
};

CoarseSpace build_coarse_space(const ConstraintSet& constraints,
                               const std::vector<SubdomainSystem>& subs);

/// FETI-DP primal set: both DOFs of every subdomain-corner node.
struct CornerSet {
  std::vector<int> corner_nodes;  // sorted global node ids

  bool is_corner(int gnode) const;
};

CornerSet select_corners(const Partition& partition);

/// Diagonal weights of the scaled jump operators, one value per constraint
/// row and side. Both scalings satisfy the admissibility identity
/// sum_s (B^s (W^s B^s)^T) B^j = B^j.
struct ScalingWeights {
  std::vector<double> plus;
  std::vector<double> minus;
};

/// 1/multiplicity on both sides of interface rows; 1 on Dirichlet rows.
ScalingWeights multiplicity_scaling(const ConstraintSet& constraints);

/// Stiffness (k-) scaling: the weight on one side of a pair equals the
/// opposite subdomain's stiffness diagonal over the sum of the diagonals of
/// all owners of the DOF. Falls back to multiplicity scaling when the
/// diagonals match. Throws ZeroStiffnessDiagonal on a nonpositive diagonal.
ScalingWeights k_scaling(const ConstraintSet& constraints,
                         const std::vector<SubdomainSystem>& subs);

/// max deviation of the admissibility identity, evaluated cluster-by-cluster
/// (rows touching one global DOF interact only with rows of the same DOF).
double admissibility_error(const ConstraintSet& constraints,
                           const ScalingWeights& weights);

}  // namespace feti
