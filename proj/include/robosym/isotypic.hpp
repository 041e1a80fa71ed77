#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "robosym/group.hpp"
#include "robosym/representation.hpp"

namespace robosym {

/// One real irreducible representation, described by its character. The
/// Frobenius-Schur count c is 1 for real-type irreps and 2 for merged
/// complex-conjugate pairs; the character inner product satisfies
/// (1/|G|) sum_g chi_i(g) chi_j(g) = delta_ij * c_i.
struct RealIrrep {
  int id;
  int dim;
  int frobenius_schur;
  std::vector<double> character;
};

struct IrrepTable {
  FiniteGroup group;
  std::vector<RealIrrep> irreps;
};

/// Analytic real character table for cyclic groups, dihedral groups, and
/// direct products thereof. Abstract groups are matched against that family
/// first; anything outside it raises unsupported-group.
IrrepTable real_character_table(const FiniteGroup& group);

struct IsotypicSubspace {
  int irrep_id;
  int multiplicity;
  int dim;        // multiplicity * irrep dim
  int row_begin;  // first row of T belonging to this subspace
};

/// Orthogonal change of basis T block-diagonalizing a representation into
/// isotypic components: T rho(g) T^t is block diagonal for every g, with one
/// block per subspace, ordered trivial irrep first then by irrep id.
class IsotypicDecomposition {
 public:
  IsotypicDecomposition(Eigen::MatrixXd T, std::vector<IsotypicSubspace> subspaces,
                        bool verified_source);

  const Eigen::MatrixXd& basis() const { return T_; }
  const std::vector<IsotypicSubspace>& subspaces() const { return subspaces_; }
  int dim() const { return static_cast<int>(T_.rows()); }
  int subspace_count() const { return static_cast<int>(subspaces_.size()); }

  /// Rows of T belonging to subspace k.
  Eigen::MatrixXd subspace_rows(int k) const;

  /// Whether the source representation came from a verified symmetry group.
  bool verified_source() const { return verified_source_; }

 private:
  Eigen::MatrixXd T_;
  std::vector<IsotypicSubspace> subspaces_;
  bool verified_source_;
};

/// Character-projector decomposition of an orthogonal representation.
IsotypicDecomposition decompose(const Representation& rep, bool verified_source = false);

/// Coordinates of x inside subspace k of the isotypic basis.
Eigen::VectorXd project_component(const IsotypicDecomposition& dec, const Eigen::VectorXd& x,
                                  int k);

/// Frobenius norm of everything outside the diagonal blocks of M in the
/// isotypic basis layout.
double offblock_norm(const Eigen::MatrixXd& M, const std::vector<IsotypicSubspace>& subspaces);

/// T as row-major CSV plus a JSON sidecar with per-subspace metadata.
void write_isotypic(const IsotypicDecomposition& dec, const std::string& csv_path,
                    const std::string& json_path);

}  // namespace robosym
