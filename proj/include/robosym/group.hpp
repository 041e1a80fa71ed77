#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace robosym {

using Element = int;

/// Construction provenance of a group, kept so character tables can be
/// generated analytically. Abstract groups (e.g. from symmetry
/// identification) have an empty factor list and are matched against this
/// family on demand.
struct GroupFactor {
  enum class Kind { cyclic, dihedral };
  Kind kind;
  int n;  // cyclic: order n; dihedral: order 2n
};

/// Finite group stored as an explicit Cayley table. Element 0 is always the
/// identity. Immutable after construction; all four group axioms are
/// verified exhaustively at construction time.
class FiniteGroup {
 public:
  FiniteGroup(std::vector<Element> cayley, std::vector<Element> generators,
              std::vector<std::string> element_names, std::string name,
              std::vector<GroupFactor> factors);

  int order() const { return order_; }
  Element identity() const { return 0; }

  Element compose(Element a, Element b) const;
  Element inverse(Element a) const;
  int element_order(Element a) const;

  const std::vector<Element>& generators() const { return generators_; }
  const std::string& element_name(Element a) const;
  const std::string& name() const { return name_; }
  const std::vector<GroupFactor>& factors() const { return factors_; }

  /// Structural equality: identical Cayley tables.
  bool operator==(const FiniteGroup& other) const {
    return order_ == other.order_ && cayley_ == other.cayley_;
  }

 private:
  void check_element(Element a) const;
  void validate_axioms() const;

  int order_;
  std::vector<Element> cayley_;  // row-major order x order
  std::vector<Element> inverse_;
  std::vector<Element> generators_;
  std::vector<std::string> element_names_;
  std::string name_;
  std::vector<GroupFactor> factors_;
};

FiniteGroup make_cyclic(int n);
FiniteGroup make_dihedral(int n);
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// Parses group literals like "C2", "C3", "D6", "C2xC2", "K4" (alias of
/// "C2xC2"). Case-insensitive; 'x' separates direct-product factors. "Dn"
/// denotes the dihedral group of order n, so "D6" is the symmetry group of
/// a triangle.
FiniteGroup parse_group(std::string_view literal);

/// Isomorphism match of an abstract group against direct products of cyclic
/// and dihedral groups. Returns the constructed group plus the element map
/// canonical -> abstract, or nullopt if the group is outside the family.
struct FamilyMatch {
  FiniteGroup canonical;
  std::vector<Element> to_abstract;
};
std::optional<FamilyMatch> match_family(const FiniteGroup& g);

}  // namespace robosym
