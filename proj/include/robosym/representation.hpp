#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "robosym/group.hpp"

namespace robosym {

/// Matrix representation of a finite group: one invertible dim x dim matrix
/// per element, acting on column vectors from the left (x -> rho(g) x). All
/// |G| matrices are cached eagerly and the homomorphism property is
/// validated at construction.
class Representation {
 public:
  Representation(FiniteGroup group, std::vector<Eigen::MatrixXd> matrices);

  const FiniteGroup& group() const { return group_; }
  int dim() const { return dim_; }
  const Eigen::MatrixXd& matrix(Element g) const;
  const Eigen::MatrixXd& inverse_matrix(Element g) const { return matrix(group_.inverse(g)); }

  bool orthogonal() const { return orthogonal_; }
  /// Entries in {0, +1, -1} with exactly one nonzero per row and column.
  bool signed_permutation() const { return signed_permutation_; }

 private:
  FiniteGroup group_;
  int dim_;
  std::vector<Eigen::MatrixXd> matrices_;
  bool orthogonal_;
  bool signed_permutation_;
};

/// Builds the full representation from one matrix per group generator by
/// composing generator matrices along Cayley-table words.
Representation from_generators(const FiniteGroup& group,
                               const std::vector<Eigen::MatrixXd>& generator_matrices);

/// k x k permutation matrices from a per-element permutation of k labels;
/// label_action[g][i] is the image of label i under g.
Representation permutation_rep(const FiniteGroup& group,
                               const std::vector<std::vector<int>>& label_action);

Representation trivial_rep(const FiniteGroup& group, int dim);

/// G acting on R^|G| by left translation of the element-indexed coordinates.
Representation regular_rep(const FiniteGroup& group);

Representation direct_sum(const Representation& a, const Representation& b);
Representation direct_sum_copies(const Representation& a, int copies);
Representation kron(const Representation& a, const Representation& b);

/// Change of basis: matrices become T rho(g) T^t. T must be orthogonal.
Representation conjugate_by_basis(const Representation& rep, const Eigen::MatrixXd& T);

/// Conjugate action g |> A = rho(g) A rho(g)^-1.
Eigen::MatrixXd conj_action(const Representation& rep, Element g, const Eigen::MatrixXd& A);

/// max over g of the entrywise norm of rho_out(g) W - W rho_in(g).
double equivariance_residual(const Eigen::MatrixXd& W, const Representation& rep_in,
                             const Representation& rep_out);
bool is_equivariant_map(const Eigen::MatrixXd& W, const Representation& rep_in,
                        const Representation& rep_out, double tol);

/// Group-averaging projector onto the space of equivariant matrices:
/// W -> (1/|G|) sum_g rho_out(g)^-1 W rho_in(g). Idempotent.
Eigen::MatrixXd average_equivariant(const Representation& rep_in, const Representation& rep_out,
                                    const Eigen::MatrixXd& W);

/// Orthonormal (Frobenius) basis of {W : rho_out(g) W = W rho_in(g) for all
/// g}, stored sparsely. For signed-permutation representation pairs the
/// basis elements are entry-position orbits of the averaging projector; the
/// general case applies the projector to the full coordinate basis and
/// extracts a rank-revealing span.
class EquivariantBasis {
 public:
  struct Entry {
    int row;
    int col;
    double value;
  };

  EquivariantBasis(int rows, int cols, std::vector<std::vector<Entry>> elements)
      : rows_(rows), cols_(cols), elements_(std::move(elements)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int size() const { return static_cast<int>(elements_.size()); }

  Eigen::MatrixXd dense(int k) const;
  /// W = sum_p coeffs[p] * B_p
  Eigen::MatrixXd realize(const Eigen::VectorXd& coeffs) const;
  /// coeffs[p] = <M, B_p>_F
  Eigen::VectorXd project(const Eigen::MatrixXd& M) const;

 private:
  int rows_;
  int cols_;
  std::vector<std::vector<Entry>> elements_;
};

EquivariantBasis solve_equivariant_basis(const Representation& rep_in,
                                         const Representation& rep_out);
std::vector<Eigen::MatrixXd> equivariant_basis(const Representation& rep_in,
                                               const Representation& rep_out);

enum class SpatialKind { vector, pseudovector, homogeneous };

/// Representation of spatial isometries (R_g, t_g):
///   vector        -> R_g
///   pseudovector  -> det(R_g) R_g   (axial quantities flip under reflections)
///   homogeneous   -> [[R_g, t_g], [0, 1]]
Representation spatial_rep(
    const FiniteGroup& group, SpatialKind kind,
    const std::vector<std::pair<Eigen::MatrixXd, Eigen::VectorXd>>& generator_isometries);

/// Trace of each element's matrix.
std::vector<double> character(const Representation& rep);

/// Exhaustive homomorphism check over all element pairs (test oracle).
double homomorphism_residual(const Representation& rep);

}  // namespace robosym
