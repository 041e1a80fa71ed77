#include "robosym/representation.hpp"

#include <cmath>
#include <map>
#include <queue>

#include "robosym/error.hpp"

namespace robosym {

namespace {

constexpr double kHomomorphismTol = 1e-8;

bool matrix_is_orthogonal(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  return (m.transpose() * m - Eigen::MatrixXd::Identity(m.cols(), m.cols()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

bool matrix_is_signed_permutation(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) return false;
  int n = static_cast<int>(m.rows());
  std::vector<int> col_hits(n, 0);
  for (int r = 0; r < n; ++r) {
    int nonzero = 0;
    for (int c = 0; c < n; ++c) {
      double v = m(r, c);
      if (v == 0.0) continue;
      if (std::abs(std::abs(v) - 1.0) > 1e-12) return false;
      ++nonzero;
      ++col_hits[c];
    }
    if (nonzero != 1) return false;
  }
  for (int c = 0; c < n; ++c)
    if (col_hits[c] != 1) return false;
  return true;
}

}  // namespace

Representation::Representation(FiniteGroup group, std::vector<Eigen::MatrixXd> matrices)
    : group_(std::move(group)), matrices_(std::move(matrices)) {
  require(static_cast<int>(matrices_.size()) == group_.order(), ErrorCode::invalid_argument,
          "need one matrix per group element");
  require(!matrices_.empty() && matrices_[0].rows() == matrices_[0].cols(),
          ErrorCode::invalid_argument, "representation matrices must be square");
  dim_ = static_cast<int>(matrices_[0].rows());
  for (const auto& m : matrices_)
    require(m.rows() == dim_ && m.cols() == dim_, ErrorCode::invalid_argument,
            "representation matrices must share one dimension");
  if (dim_ > 0) {
    double id_err =
        (matrices_[0] - Eigen::MatrixXd::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
    require(id_err <= kHomomorphismTol, ErrorCode::invalid_argument,
            "identity element must map to the identity matrix");
    // rho(a.g) = rho(a) rho(g) for every a and generator g implies the full
    // homomorphism property by induction over generator words.
    for (Element a = 0; a < group_.order(); ++a) {
      for (Element g : group_.generators()) {
        double err = (matrices_[group_.compose(a, g)] - matrices_[a] * matrices_[g])
                         .cwiseAbs()
                         .maxCoeff();
        require(err <= kHomomorphismTol, ErrorCode::inconsistent_generators,
                "matrices do not satisfy the homomorphism property");
      }
    }
  }
  orthogonal_ = true;
  signed_permutation_ = true;
  for (const auto& m : matrices_) {
    orthogonal_ = orthogonal_ && matrix_is_orthogonal(m, 1e-10);
    signed_permutation_ = signed_permutation_ && matrix_is_signed_permutation(m);
  }
}

const Eigen::MatrixXd& Representation::matrix(Element g) const {
  require(g >= 0 && g < group_.order(), ErrorCode::invalid_argument,
          "element index out of range");
  return matrices_[g];
}

Representation from_generators(const FiniteGroup& group,
                               const std::vector<Eigen::MatrixXd>& generator_matrices) {
  require(generator_matrices.size() == group.generators().size(), ErrorCode::invalid_argument,
          "need one matrix per group generator");
  require(!generator_matrices.empty(), ErrorCode::invalid_argument,
          "group exposes no generators");
  int dim = static_cast<int>(generator_matrices[0].rows());
  for (const auto& m : generator_matrices) {
    require(m.rows() == dim && m.cols() == dim, ErrorCode::invalid_argument,
            "generator matrices must be square and share one dimension");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    require(lu.isInvertible(), ErrorCode::invalid_argument, "generator matrix is singular");
  }

  std::vector<Eigen::MatrixXd> mats(group.order());
  std::vector<bool> known(group.order(), false);
  mats[0] = Eigen::MatrixXd::Identity(dim, dim);
  known[0] = true;
  std::queue<Element> todo;
  todo.push(0);
  while (!todo.empty()) {
    Element a = todo.front();
    todo.pop();
    for (size_t gi = 0; gi < group.generators().size(); ++gi) {
      Element g = group.generators()[gi];
      Element b = group.compose(a, g);
      Eigen::MatrixXd candidate = mats[a] * generator_matrices[gi];
      if (!known[b]) {
        mats[b] = std::move(candidate);
        known[b] = true;
        todo.push(b);
      } else {
        double err = (mats[b] - candidate).cwiseAbs().maxCoeff();
        require(err <= kHomomorphismTol, ErrorCode::inconsistent_generators,
                "generator matrices are inconsistent with the group relations");
      }
    }
  }
  for (bool k : known)
    require(k, ErrorCode::invalid_argument, "generators do not generate the group");
  return Representation(group, std::move(mats));
}

Representation permutation_rep(const FiniteGroup& group,
                               const std::vector<std::vector<int>>& label_action) {
  require(static_cast<int>(label_action.size()) == group.order(), ErrorCode::invalid_argument,
          "need one permutation per group element");
  int k = static_cast<int>(label_action[0].size());
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(group.order());
  for (const auto& perm : label_action) {
    require(static_cast<int>(perm.size()) == k, ErrorCode::invalid_argument,
            "permutations must share one label count");
    std::vector<bool> hit(k, false);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      require(perm[i] >= 0 && perm[i] < k && !hit[perm[i]], ErrorCode::invalid_argument,
              "label action is not a bijection");
      hit[perm[i]] = true;
      m(perm[i], i) = 1.0;
    }
    mats.push_back(std::move(m));
  }
  // Action must itself be a homomorphism.
  for (Element a = 0; a < group.order(); ++a)
    for (Element b = 0; b < group.order(); ++b)
      for (int i = 0; i < k; ++i)
        require(label_action[group.compose(a, b)][i] == label_action[a][label_action[b][i]],
                ErrorCode::inconsistent_action, "label action is not a homomorphism");
  return Representation(group, std::move(mats));
}

Representation trivial_rep(const FiniteGroup& group, int dim) {
  require(dim >= 0, ErrorCode::invalid_argument, "trivial representation needs dim >= 0");
  std::vector<Eigen::MatrixXd> mats(group.order(), Eigen::MatrixXd::Identity(dim, dim));
  return Representation(group, std::move(mats));
}

Representation regular_rep(const FiniteGroup& group) {
  std::vector<std::vector<int>> action(group.order(), std::vector<int>(group.order()));
  for (Element g = 0; g < group.order(); ++g)
    for (Element h = 0; h < group.order(); ++h) action[g][h] = group.compose(g, h);
  return permutation_rep(group, action);
}

Representation direct_sum(const Representation& a, const Representation& b) {
  require(a.group() == b.group(), ErrorCode::invalid_argument,
          "direct sum needs matching groups");
  int n = a.dim() + b.dim();
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(a.group().order());
  for (Element g = 0; g < a.group().order(); ++g) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    m.topLeftCorner(a.dim(), a.dim()) = a.matrix(g);
    m.bottomRightCorner(b.dim(), b.dim()) = b.matrix(g);
    mats.push_back(std::move(m));
  }
  return Representation(a.group(), std::move(mats));
}

Representation direct_sum_copies(const Representation& a, int copies) {
  require(copies >= 1, ErrorCode::invalid_argument, "need at least one copy");
  int n = a.dim() * copies;
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(a.group().order());
  for (Element g = 0; g < a.group().order(); ++g) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int c = 0; c < copies; ++c)
      m.block(c * a.dim(), c * a.dim(), a.dim(), a.dim()) = a.matrix(g);
    mats.push_back(std::move(m));
  }
  return Representation(a.group(), std::move(mats));
}

namespace {

Eigen::MatrixXd kronecker(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

Representation kron(const Representation& a, const Representation& b) {
  require(a.group() == b.group(), ErrorCode::invalid_argument,
          "Kronecker product needs matching groups");
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(a.group().order());
  for (Element g = 0; g < a.group().order(); ++g)
    mats.push_back(kronecker(a.matrix(g), b.matrix(g)));
  return Representation(a.group(), std::move(mats));
}

Representation conjugate_by_basis(const Representation& rep, const Eigen::MatrixXd& T) {
  require(T.rows() == rep.dim() && T.cols() == rep.dim(), ErrorCode::invalid_argument,
          "basis change must match representation dimension");
  require(matrix_is_orthogonal(T, 1e-10), ErrorCode::invalid_argument,
          "basis change matrix must be orthogonal");
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(rep.group().order());
  for (Element g = 0; g < rep.group().order(); ++g)
    mats.push_back(T * rep.matrix(g) * T.transpose());
  return Representation(rep.group(), std::move(mats));
}

Eigen::MatrixXd conj_action(const Representation& rep, Element g, const Eigen::MatrixXd& A) {
  require(A.rows() == rep.dim() && A.cols() == rep.dim(), ErrorCode::invalid_argument,
          "conjugate action needs a square matrix of the representation dimension");
  return rep.matrix(g) * A * rep.inverse_matrix(g);
}

double equivariance_residual(const Eigen::MatrixXd& W, const Representation& rep_in,
                             const Representation& rep_out) {
  require(rep_in.group() == rep_out.group(), ErrorCode::invalid_argument,
          "representations must share one group");
  require(W.cols() == rep_in.dim() && W.rows() == rep_out.dim(), ErrorCode::invalid_argument,
          "map dimensions do not match the representations");
  if (W.size() == 0) return 0.0;
  double worst = 0.0;
  for (Element g = 0; g < rep_in.group().order(); ++g) {
    double err = (rep_out.matrix(g) * W - W * rep_in.matrix(g)).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
  }
  return worst;
}

bool is_equivariant_map(const Eigen::MatrixXd& W, const Representation& rep_in,
                        const Representation& rep_out, double tol) {
  return equivariance_residual(W, rep_in, rep_out) <= tol;
}

Eigen::MatrixXd average_equivariant(const Representation& rep_in, const Representation& rep_out,
                                    const Eigen::MatrixXd& W) {
  require(rep_in.group() == rep_out.group(), ErrorCode::invalid_argument,
          "representations must share one group");
  require(W.cols() == rep_in.dim() && W.rows() == rep_out.dim(), ErrorCode::invalid_argument,
          "map dimensions do not match the representations");
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(W.rows(), W.cols());
  for (Element g = 0; g < rep_in.group().order(); ++g)
    acc += rep_out.inverse_matrix(g) * W * rep_in.matrix(g);
  return acc / static_cast<double>(rep_in.group().order());
}

Eigen::MatrixXd EquivariantBasis::dense(int k) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows_, cols_);
  for (const Entry& e : elements_.at(k)) m(e.row, e.col) = e.value;
  return m;
}

Eigen::MatrixXd EquivariantBasis::realize(const Eigen::VectorXd& coeffs) const {
  require(coeffs.size() == size(), ErrorCode::invalid_argument,
          "coefficient count does not match basis size");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows_, cols_);
  for (int k = 0; k < size(); ++k)
    for (const Entry& e : elements_[k]) m(e.row, e.col) += coeffs[k] * e.value;
  return m;
}

Eigen::VectorXd EquivariantBasis::project(const Eigen::MatrixXd& M) const {
  require(M.rows() == rows_ && M.cols() == cols_, ErrorCode::invalid_argument,
          "matrix dimensions do not match basis");
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(size());
  for (int k = 0; k < size(); ++k) {
    double acc = 0.0;
    for (const Entry& e : elements_[k]) acc += M(e.row, e.col) * e.value;
    coeffs[k] = acc;
  }
  return coeffs;
}

namespace {

struct SignedPermAction {
  // image[i] = target index, sign[i] = factor, for columns of the matrix.
  std::vector<int> image;
  std::vector<double> sign;
};

SignedPermAction column_action(const Eigen::MatrixXd& m) {
  int n = static_cast<int>(m.rows());
  SignedPermAction act;
  act.image.assign(n, -1);
  act.sign.assign(n, 0.0);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      if (m(r, c) != 0.0) {
        act.image[c] = r;
        act.sign[c] = m(r, c);
      }
  return act;
}

SignedPermAction row_action(const Eigen::MatrixXd& m) {
  int n = static_cast<int>(m.rows());
  SignedPermAction act;
  act.image.assign(n, -1);
  act.sign.assign(n, 0.0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (m(r, c) != 0.0) {
        act.image[r] = c;
        act.sign[r] = m(r, c);
      }
  return act;
}

/// Orbit basis for signed-permutation representation pairs. The averaging
/// projector maps the coordinate matrix E_ij to a signed sum over the orbit
/// of the entry position (i, j); distinct surviving orbits give disjoint,
/// orthonormal basis elements.
EquivariantBasis orbit_basis(const Representation& rep_in, const Representation& rep_out) {
  int m = rep_out.dim();
  int n = rep_in.dim();
  int order = rep_in.group().order();

  // Position maps per element: (i, j) -> (out_inv_row(i), in_col_of_row(j)).
  std::vector<SignedPermAction> out_inv(order), in_row(order);
  for (Element g = 0; g < order; ++g) {
    out_inv[g] = column_action(rep_out.inverse_matrix(g));
    in_row[g] = row_action(rep_in.matrix(g));
  }

  std::vector<bool> visited(static_cast<size_t>(m) * n, false);
  std::vector<std::vector<EquivariantBasis::Entry>> elements;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      size_t seed = static_cast<size_t>(j) * m + i;
      if (visited[seed]) continue;
      std::map<size_t, double> orbit;
      bool zero = false;
      for (Element g = 0; g < order; ++g) {
        int oi = out_inv[g].image[i];
        int oj = in_row[g].image[j];
        double s = out_inv[g].sign[i] * in_row[g].sign[j];
        size_t pos = static_cast<size_t>(oj) * m + oi;
        auto [it, inserted] = orbit.emplace(pos, s);
        if (!inserted && it->second != s) zero = true;
      }
      for (const auto& [pos, s] : orbit) visited[pos] = true;
      if (zero) continue;
      double scale = 1.0 / std::sqrt(static_cast<double>(orbit.size()));
      std::vector<EquivariantBasis::Entry> entries;
      entries.reserve(orbit.size());
      for (const auto& [pos, s] : orbit)
        entries.push_back({static_cast<int>(pos % m), static_cast<int>(pos / m), s * scale});
      elements.push_back(std::move(entries));
    }
  }
  return EquivariantBasis(m, n, std::move(elements));
}

/// General path: averaging projector applied to every coordinate matrix,
/// then a pivoted Gram-Schmidt span with singular values thresholded at
/// 1e-8 relative to the largest. The candidate columns are exactly the
/// columns of the projector, so pivot norms are its singular values for
/// orthogonal representations.
EquivariantBasis projector_basis(const Representation& rep_in, const Representation& rep_out) {
  int m = rep_out.dim();
  int n = rep_in.dim();
  int total = m * n;
  require(total <= 20000, ErrorCode::invalid_argument,
          "dense equivariant basis request too large");

  std::vector<Eigen::MatrixXd> candidates;
  candidates.reserve(total);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(m, n);
      e(i, j) = 1.0;
      candidates.push_back(average_equivariant(rep_in, rep_out, e));
    }

  std::vector<double> norms(total);
  double max_norm = 0.0;
  for (int k = 0; k < total; ++k) {
    norms[k] = candidates[k].norm();
    max_norm = std::max(max_norm, norms[k]);
  }
  double threshold = 1e-8 * max_norm;

  std::vector<std::vector<EquivariantBasis::Entry>> elements;
  while (true) {
    int best = -1;
    for (int k = 0; k < total; ++k)
      if (norms[k] > threshold && (best == -1 || norms[k] > norms[best])) best = k;
    if (best == -1) break;
    Eigen::MatrixXd q = candidates[best] / norms[best];
    for (int k = 0; k < total; ++k) {
      if (norms[k] <= 0.0) continue;
      double dot = (q.array() * candidates[k].array()).sum();
      candidates[k] -= dot * q;
      norms[k] = candidates[k].norm();
    }
    std::vector<EquivariantBasis::Entry> entries;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < m; ++i)
        if (std::abs(q(i, j)) > 1e-14) entries.push_back({i, j, q(i, j)});
    elements.push_back(std::move(entries));
  }
  return EquivariantBasis(m, n, std::move(elements));
}

}  // namespace

EquivariantBasis solve_equivariant_basis(const Representation& rep_in,
                                         const Representation& rep_out) {
  require(rep_in.group() == rep_out.group(), ErrorCode::invalid_argument,
          "representations must share one group");
  if (rep_in.signed_permutation() && rep_out.signed_permutation())
    return orbit_basis(rep_in, rep_out);
  return projector_basis(rep_in, rep_out);
}

std::vector<Eigen::MatrixXd> equivariant_basis(const Representation& rep_in,
                                               const Representation& rep_out) {
  EquivariantBasis basis = solve_equivariant_basis(rep_in, rep_out);
  std::vector<Eigen::MatrixXd> out;
  out.reserve(basis.size());
  for (int k = 0; k < basis.size(); ++k) out.push_back(basis.dense(k));
  return out;
}

Representation spatial_rep(
    const FiniteGroup& group, SpatialKind kind,
    const std::vector<std::pair<Eigen::MatrixXd, Eigen::VectorXd>>& generator_isometries) {
  require(generator_isometries.size() == group.generators().size(), ErrorCode::invalid_argument,
          "need one isometry per group generator");
  std::vector<Eigen::MatrixXd> gen_mats;
  for (const auto& [R, t] : generator_isometries) {
    int d = static_cast<int>(R.rows());
    require(d == 2 || d == 3, ErrorCode::invalid_argument, "spatial dimension must be 2 or 3");
    require(t.size() == d, ErrorCode::invalid_argument,
            "translation dimension must match rotation");
    require(matrix_is_orthogonal(R, 1e-10), ErrorCode::invalid_argument,
            "spatial rotation/reflection must be orthogonal");
    switch (kind) {
      case SpatialKind::vector:
        gen_mats.push_back(R);
        break;
      case SpatialKind::pseudovector: {
        double det = R.determinant();
        gen_mats.push_back((det >= 0.0 ? 1.0 : -1.0) * R);
        break;
      }
      case SpatialKind::homogeneous: {
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d + 1, d + 1);
        h.topLeftCorner(d, d) = R;
        h.topRightCorner(d, 1) = t;
        h(d, d) = 1.0;
        gen_mats.push_back(std::move(h));
        break;
      }
    }
  }
  return from_generators(group, gen_mats);
}

std::vector<double> character(const Representation& rep) {
  std::vector<double> chi(rep.group().order());
  for (Element g = 0; g < rep.group().order(); ++g) chi[g] = rep.matrix(g).trace();
  return chi;
}

double homomorphism_residual(const Representation& rep) {
  double worst = 0.0;
  for (Element a = 0; a < rep.group().order(); ++a)
    for (Element b = 0; b < rep.group().order(); ++b) {
      double err = (rep.matrix(rep.group().compose(a, b)) - rep.matrix(a) * rep.matrix(b))
                       .cwiseAbs()
                       .maxCoeff();
      worst = std::max(worst, err);
    }
  return worst;
}

}  // namespace robosym
