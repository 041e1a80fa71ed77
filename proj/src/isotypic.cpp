#include "robosym/isotypic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "robosym/csv.hpp"
#include "robosym/error.hpp"

namespace robosym {

namespace {

using Complex = std::complex<double>;

struct ComplexIrrep {
  int dim;
  std::vector<Complex> chi;
};

/// Complex irreducible characters of one construction factor.
std::vector<ComplexIrrep> factor_irreps(const GroupFactor& factor) {
  std::vector<ComplexIrrep> out;
  if (factor.kind == GroupFactor::Kind::cyclic) {
    int n = factor.n;
    for (int k = 0; k < n; ++k) {
      ComplexIrrep ir{1, std::vector<Complex>(n)};
      for (int j = 0; j < n; ++j) {
        double angle = 2.0 * std::numbers::pi * k * j / n;
        ir.chi[j] = Complex(std::cos(angle), std::sin(angle));
      }
      out.push_back(std::move(ir));
    }
    return out;
  }
  // Dihedral of order 2n; element f*n + k is s^f r^k. All dihedral
  // characters are real-valued.
  int n = factor.n;
  int order = 2 * n;
  auto idx = [n](int f, int k) { return f * n + k; };
  {
    ComplexIrrep trivial{1, std::vector<Complex>(order, 1.0)};
    out.push_back(std::move(trivial));
    ComplexIrrep sign{1, std::vector<Complex>(order)};
    for (int f = 0; f < 2; ++f)
      for (int k = 0; k < n; ++k) sign.chi[idx(f, k)] = f == 0 ? 1.0 : -1.0;
    out.push_back(std::move(sign));
  }
  if (n % 2 == 0) {
    ComplexIrrep alt{1, std::vector<Complex>(order)};
    ComplexIrrep alt_sign{1, std::vector<Complex>(order)};
    for (int f = 0; f < 2; ++f)
      for (int k = 0; k < n; ++k) {
        double rot = (k % 2 == 0) ? 1.0 : -1.0;
        alt.chi[idx(f, k)] = rot;
        alt_sign.chi[idx(f, k)] = (f == 0 ? rot : -rot);
      }
    out.push_back(std::move(alt));
    out.push_back(std::move(alt_sign));
  }
  for (int m = 1; 2 * m < n; ++m) {
    ComplexIrrep two{2, std::vector<Complex>(order)};
    for (int k = 0; k < n; ++k) {
      two.chi[idx(0, k)] = 2.0 * std::cos(2.0 * std::numbers::pi * m * k / n);
      two.chi[idx(1, k)] = 0.0;
    }
    out.push_back(std::move(two));
  }
  return out;
}

std::vector<ComplexIrrep> product_irreps(const std::vector<GroupFactor>& factors) {
  std::vector<ComplexIrrep> acc{{1, {Complex(1.0)}}};  // trivial group
  for (const GroupFactor& factor : factors) {
    std::vector<ComplexIrrep> fi = factor_irreps(factor);
    int fo = factor.kind == GroupFactor::Kind::cyclic ? factor.n : 2 * factor.n;
    std::vector<ComplexIrrep> next;
    next.reserve(acc.size() * fi.size());
    for (const ComplexIrrep& a : acc)
      for (const ComplexIrrep& b : fi) {
        ComplexIrrep prod{a.dim * b.dim, {}};
        prod.chi.reserve(a.chi.size() * fo);
        // Left-factor-major flattening matches direct_product element order.
        for (const Complex& ca : a.chi)
          for (const Complex& cb : b.chi) prod.chi.push_back(ca * cb);
        next.push_back(std::move(prod));
      }
    acc = std::move(next);
  }
  return acc;
}

bool chi_close(const std::vector<Complex>& a, const std::vector<Complex>& b, bool conj) {
  for (size_t i = 0; i < a.size(); ++i) {
    Complex rhs = conj ? std::conj(b[i]) : b[i];
    if (std::abs(a[i] - rhs) > 1e-9) return false;
  }
  return true;
}

IrrepTable build_table(const FiniteGroup& group, const FiniteGroup& canonical,
                       const std::vector<Element>& to_group) {
  std::vector<ComplexIrrep> complex_irreps = product_irreps(canonical.factors());
  int order = group.order();

  struct Pending {
    int dim;
    int fs;
    std::vector<double> chi;  // indexed by canonical element
  };
  std::vector<Pending> reals;
  std::vector<bool> used(complex_irreps.size(), false);
  for (size_t i = 0; i < complex_irreps.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const ComplexIrrep& ir = complex_irreps[i];
    bool real_valued = true;
    for (const Complex& c : ir.chi) real_valued = real_valued && std::abs(c.imag()) < 1e-9;
    if (real_valued) {
      // Frobenius-Schur indicator distinguishes real from quaternionic type.
      double indicator = 0.0;
      for (Element g = 0; g < order; ++g) indicator += ir.chi[canonical.compose(g, g)].real();
      indicator /= order;
      if (std::abs(indicator - 1.0) < 1e-9) {
        Pending p{ir.dim, 1, {}};
        p.chi.resize(order);
        for (Element g = 0; g < order; ++g) p.chi[g] = ir.chi[g].real();
        reals.push_back(std::move(p));
      } else {
        fail(ErrorCode::unsupported_group,
             "quaternionic-type irreducible encountered; group outside the supported family");
      }
      continue;
    }
    // Complex type: merge with the conjugate partner into one real irrep.
    bool merged = false;
    for (size_t j = i + 1; j < complex_irreps.size(); ++j) {
      if (used[j] || complex_irreps[j].dim != ir.dim) continue;
      if (chi_close(complex_irreps[j].chi, ir.chi, true)) {
        used[j] = true;
        merged = true;
        break;
      }
    }
    require(merged, ErrorCode::unsupported_group, "unpaired complex character");
    Pending p{2 * ir.dim, 2, {}};
    p.chi.resize(order);
    for (Element g = 0; g < order; ++g) p.chi[g] = 2.0 * ir.chi[g].real();
    reals.push_back(std::move(p));
  }

  // Map characters from canonical element indices onto the target group and
  // order them deterministically: trivial first, then by dimension and
  // character values.
  for (Pending& p : reals) {
    std::vector<double> mapped(order);
    for (Element h = 0; h < order; ++h) mapped[to_group[h]] = p.chi[h];
    p.chi = std::move(mapped);
  }
  auto is_trivial = [order](const Pending& p) {
    if (p.dim != 1) return false;
    for (double v : p.chi)
      if (std::abs(v - 1.0) > 1e-9) return false;
    return true;
  };
  std::sort(reals.begin(), reals.end(), [&](const Pending& a, const Pending& b) {
    bool ta = is_trivial(a), tb = is_trivial(b);
    if (ta != tb) return ta;
    if (a.dim != b.dim) return a.dim < b.dim;
    for (int g = 0; g < order; ++g) {
      double da = std::round(a.chi[g] * 1e9), db = std::round(b.chi[g] * 1e9);
      if (da != db) return da > db;
    }
    return false;
  });

  IrrepTable table{group, {}};
  double dim_sum = 0.0;
  for (size_t k = 0; k < reals.size(); ++k) {
    table.irreps.push_back(
        {static_cast<int>(k), reals[k].dim, reals[k].fs, std::move(reals[k].chi)});
    dim_sum += static_cast<double>(reals[k].dim) * reals[k].dim / reals[k].fs;
  }
  require(std::abs(dim_sum - order) < 1e-6, ErrorCode::unsupported_group,
          "character table failed the dimension sum identity");
  for (const RealIrrep& a : table.irreps)
    for (const RealIrrep& b : table.irreps) {
      double ip = 0.0;
      for (Element g = 0; g < order; ++g) ip += a.character[g] * b.character[g];
      ip /= order;
      double expected = (a.id == b.id) ? static_cast<double>(a.frobenius_schur) : 0.0;
      require(std::abs(ip - expected) < 1e-8, ErrorCode::unsupported_group,
              "character table failed orthogonality");
    }
  return table;
}

}  // namespace

IrrepTable real_character_table(const FiniteGroup& group) {
  if (!group.factors().empty()) {
    std::vector<Element> identity_map(group.order());
    for (Element g = 0; g < group.order(); ++g) identity_map[g] = g;
    return build_table(group, group, identity_map);
  }
  std::optional<FamilyMatch> match = match_family(group);
  require(match.has_value(), ErrorCode::unsupported_group,
          "group '" + group.name() + "' is not a product of cyclic and dihedral groups");
  return build_table(group, match->canonical, match->to_abstract);
}

IsotypicDecomposition::IsotypicDecomposition(Eigen::MatrixXd T,
                                             std::vector<IsotypicSubspace> subspaces,
                                             bool verified_source)
    : T_(std::move(T)), subspaces_(std::move(subspaces)), verified_source_(verified_source) {
  int n = static_cast<int>(T_.rows());
  require(T_.cols() == n, ErrorCode::invalid_argument, "basis must be square");
  double orth = (T_ * T_.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  require(orth <= 1e-10, ErrorCode::decomposition_failure, "basis is not orthogonal");
  int total = 0;
  for (const auto& s : subspaces_) {
    require(s.row_begin == total, ErrorCode::invalid_argument, "subspace rows must be contiguous");
    total += s.dim;
  }
  require(total == n, ErrorCode::invalid_argument, "subspace dimensions must sum to n");
}

Eigen::MatrixXd IsotypicDecomposition::subspace_rows(int k) const {
  require(k >= 0 && k < subspace_count(), ErrorCode::invalid_argument,
          "subspace index out of range");
  return T_.middleRows(subspaces_[k].row_begin, subspaces_[k].dim);
}

Eigen::VectorXd project_component(const IsotypicDecomposition& dec, const Eigen::VectorXd& x,
                                  int k) {
  require(x.size() == dec.dim(), ErrorCode::invalid_argument,
          "vector dimension does not match decomposition");
  return dec.subspace_rows(k) * x;
}

double offblock_norm(const Eigen::MatrixXd& M, const std::vector<IsotypicSubspace>& subspaces) {
  Eigen::MatrixXd residual = M;
  for (const auto& s : subspaces)
    residual.block(s.row_begin, s.row_begin, s.dim, s.dim).setZero();
  return residual.norm();
}

IsotypicDecomposition decompose(const Representation& rep, bool verified_source) {
  require(rep.orthogonal(), ErrorCode::invalid_argument,
          "isotypic decomposition needs an orthogonal representation");
  const FiniteGroup& group = rep.group();
  IrrepTable table = real_character_table(group);
  int n = rep.dim();
  int order = group.order();
  std::vector<double> rep_chi = character(rep);

  Eigen::MatrixXd T(n, n);
  std::vector<IsotypicSubspace> subspaces;
  int row = 0;
  for (const RealIrrep& irrep : table.irreps) {
    double m_raw = 0.0;
    for (Element g = 0; g < order; ++g) m_raw += irrep.character[g] * rep_chi[g];
    m_raw /= static_cast<double>(irrep.frobenius_schur) * order;
    double m_round = std::round(m_raw);
    require(std::abs(m_raw - m_round) < 1e-6, ErrorCode::decomposition_failure,
            "non-integer multiplicity for irrep " + std::to_string(irrep.id));
    int multiplicity = static_cast<int>(m_round);
    if (multiplicity == 0) continue;

    double scale =
        static_cast<double>(irrep.dim) / (irrep.frobenius_schur * static_cast<double>(order));
    Eigen::MatrixXd projector = Eigen::MatrixXd::Zero(n, n);
    for (Element g = 0; g < order; ++g) projector += scale * irrep.character[g] * rep.matrix(g);
    double idem = (projector * projector - projector).cwiseAbs().maxCoeff();
    require(idem <= 1e-8, ErrorCode::decomposition_failure,
            "projector for irrep " + std::to_string(irrep.id) + " is not idempotent");

    // Deterministic pivoted Gram-Schmidt over the projector columns, seeded
    // with the coordinate basis in index order; largest residual norm wins,
    // lowest index breaks ties.
    int want = multiplicity * irrep.dim;
    std::vector<Eigen::VectorXd> cols(n);
    std::vector<double> norms(n);
    for (int j = 0; j < n; ++j) {
      cols[j] = projector.col(j);
      norms[j] = cols[j].norm();
    }
    int found = 0;
    for (; found < want; ++found) {
      int best = 0;
      for (int j = 1; j < n; ++j)
        if (norms[j] > norms[best]) best = j;
      require(norms[best] > 1e-8, ErrorCode::decomposition_failure,
              "projector rank deficient for irrep " + std::to_string(irrep.id));
      Eigen::VectorXd q = cols[best] / norms[best];
      for (int j = 0; j < n; ++j) {
        if (norms[j] == 0.0) continue;
        cols[j] -= q.dot(cols[j]) * q;
        norms[j] = cols[j].norm();
      }
      T.row(row + found) = q.transpose();
    }
    double leftover = *std::max_element(norms.begin(), norms.end());
    require(leftover < 1e-8, ErrorCode::decomposition_failure,
            "projector rank exceeds character multiplicity for irrep " +
                std::to_string(irrep.id));

    subspaces.push_back({irrep.id, multiplicity, want, row});
    row += want;
  }
  require(row == n, ErrorCode::decomposition_failure, "subspace dimensions do not sum to n");

  IsotypicDecomposition dec(std::move(T), std::move(subspaces), verified_source);
  for (Element g = 0; g < order; ++g) {
    Eigen::MatrixXd iso = dec.basis() * rep.matrix(g) * dec.basis().transpose();
    require(offblock_norm(iso, dec.subspaces()) < 1e-8, ErrorCode::decomposition_failure,
            "representation is not block-diagonal in the isotypic basis");
  }
  return dec;
}

void write_isotypic(const IsotypicDecomposition& dec, const std::string& csv_path,
                    const std::string& json_path) {
  std::vector<std::string> header;
  for (int j = 0; j < dec.dim(); ++j) header.push_back("t_" + std::to_string(j));
  csv::write(csv_path, header, dec.basis());

  nlohmann::json meta;
  meta["dim"] = dec.dim();
  meta["subspaces"] = nlohmann::json::array();
  for (const auto& s : dec.subspaces()) {
    meta["subspaces"].push_back({{"irrep_id", s.irrep_id},
                                 {"multiplicity", s.multiplicity},
                                 {"dim", s.dim},
                                 {"row_begin", s.row_begin},
                                 {"row_end", s.row_begin + s.dim}});
  }
  std::ofstream out(json_path);
  require(out.good(), ErrorCode::io_error, "cannot write '" + json_path + "'");
  out << meta.dump(2) << '\n';
}

}  // namespace robosym
