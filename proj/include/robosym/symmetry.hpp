#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "robosym/group.hpp"
#include "robosym/representation.hpp"
#include "robosym/rigid_body.hpp"

namespace robosym {

/// Action of one group generator on the robot: the linear part of the
/// Euclidean isometry, the permutation of branch instances per branch type,
/// and the per-branch joint-space matrix (optional; solved from joint axis
/// geometry when absent).
struct GeneratorAction {
  Eigen::Matrix3d spatial;
  std::map<std::string, std::vector<int>> branch_perm;
  std::map<std::string, Eigen::MatrixXd> joint_rep;
};

struct SymmetrySpec {
  FiniteGroup group;
  std::vector<GeneratorAction> generators;  // aligned with group.generators()
};

/// Per-element expansion of a SymmetrySpec.
struct ElementAction {
  Eigen::Matrix3d spatial;
  std::map<std::string, std::vector<int>> branch_perm;
  std::map<std::string, Eigen::MatrixXd> joint_rep;
};

struct MorphologicalSymmetryGroup {
  SymmetrySpec spec;
  bool verified = false;
  Representation joint_space_rep;
  std::vector<ElementAction> elements;    // indexed by group element
  std::vector<double> evidence;           // max verification residual per element
  std::vector<std::string> branch_types;  // types covered, model order

  const FiniteGroup& group() const { return spec.group; }
  Eigen::Matrix3d spatial(Element g) const { return elements[g].spatial; }
  /// Branch-instance permutation representation for one branch type.
  Representation branch_perm_rep(const std::string& type_id) const;
  /// Spatial action as a representation (vector or pseudovector kind).
  Representation spatial_vector_rep(bool pseudo) const;
};

/// Joint-space representation rho_M: block structure over branch types with
/// instance permutation (x) per-branch joint action; block layout follows
/// the model's joint ordering.
Representation build_joint_space_rep(const RobotModel& model, const SymmetrySpec& spec);

/// Expands generator data to all elements and assembles the joint-space
/// representation. Joint reps missing from the spec are solved from the
/// model's zero-configuration joint axes.
MorphologicalSymmetryGroup expand_symmetry(const RobotModel& model, const SymmetrySpec& spec);

/// All signed 3x3 permutation matrices preserving the given diagonal
/// inertia. Degenerate flags repeated moments (continuous symmetries exist
/// but are out of scope).
struct InertiaCandidates {
  std::vector<Eigen::Matrix3d> matrices;
  bool degenerate = false;
};
InertiaCandidates base_inertia_candidates(const Eigen::Vector3d& inertia_diag);

/// Samples random joint states and checks, per group element, the per-body
/// velocity constraint (linear and pseudovector-corrected angular) and
/// joint-space kinetic-energy invariance.
struct VerifyResult {
  bool verified = false;
  std::vector<double> per_element;  // max residual per element
  double max_residual = 0.0;
};
VerifyResult verify_candidate(const RobotModel& model, const SymmetrySpec& candidate,
                              int n_samples, double tol, uint64_t rng_seed);

/// Full identification pipeline: inertia candidates, branch-permutation and
/// joint-axis matching, numeric verification, closure. Never fails on an
/// asymmetric robot; the result is then the trivial group.
MorphologicalSymmetryGroup identify(const RobotModel& model, int n_samples = 100,
                                    double tol = 1e-8, uint64_t rng_seed = 0);

/// Mass-matrix equivariance residuals and isotypic off-block norms of the
/// joint-space mass matrix on random configurations.
struct EquivarianceReport {
  std::vector<double> mass_matrix_residual;  // max over samples, per element
  double max_mass_matrix_residual = 0.0;
  double max_offblock_norm = 0.0;
  bool passed = false;
  double tol = 0.0;
};
EquivarianceReport verify_equivariance_suite(const RobotModel& model,
                                             const MorphologicalSymmetryGroup& msg,
                                             int n_samples, double tol, uint64_t rng_seed);

SymmetrySpec load_symmetry_spec(const std::string& path);
void save_symmetry_spec(const SymmetrySpec& spec, const RobotModel& model,
                        const std::string& path);

}  // namespace robosym
