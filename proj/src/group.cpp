#include "robosym/group.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include "robosym/error.hpp"

namespace robosym {

FiniteGroup::FiniteGroup(std::vector<Element> cayley, std::vector<Element> generators,
                         std::vector<std::string> element_names, std::string name,
                         std::vector<GroupFactor> factors)
    : cayley_(std::move(cayley)),
      generators_(std::move(generators)),
      element_names_(std::move(element_names)),
      name_(std::move(name)),
      factors_(std::move(factors)) {
  int order = 0;
  while (order * order < static_cast<int>(cayley_.size())) ++order;
  require(order * order == static_cast<int>(cayley_.size()) && order > 0,
          ErrorCode::invalid_argument, "Cayley table is not square");
  order_ = order;
  if (element_names_.empty()) {
    for (int i = 0; i < order_; ++i)
      element_names_.push_back(i == 0 ? "e" : "g" + std::to_string(i));
  }
  require(static_cast<int>(element_names_.size()) == order_, ErrorCode::invalid_argument,
          "element name count does not match order");
  validate_axioms();
  inverse_.assign(order_, -1);
  for (Element a = 0; a < order_; ++a) {
    for (Element b = 0; b < order_; ++b) {
      if (cayley_[a * order_ + b] == 0) {
        inverse_[a] = b;
        break;
      }
    }
    require(inverse_[a] >= 0, ErrorCode::invalid_argument, "element without inverse");
  }
  for (Element g : generators_) check_element(g);
}

void FiniteGroup::check_element(Element a) const {
  require(a >= 0 && a < order_, ErrorCode::invalid_argument,
          "element index " + std::to_string(a) + " out of range for order " +
              std::to_string(order_));
}

void FiniteGroup::validate_axioms() const {
  // Closure.
  for (Element v : cayley_)
    require(v >= 0 && v < order_, ErrorCode::invalid_argument, "Cayley entry out of range");
  // Identity at index 0.
  for (Element g = 0; g < order_; ++g) {
    require(cayley_[0 * order_ + g] == g && cayley_[g * order_ + 0] == g,
            ErrorCode::invalid_argument, "element 0 is not the identity");
  }
  // Associativity; order is at most 48 in this artifact so the cubic check
  // is cheap.
  for (Element a = 0; a < order_; ++a)
    for (Element b = 0; b < order_; ++b)
      for (Element c = 0; c < order_; ++c)
        require(cayley_[cayley_[a * order_ + b] * order_ + c] ==
                    cayley_[a * order_ + cayley_[b * order_ + c]],
                ErrorCode::invalid_argument, "Cayley table is not associative");
}

Element FiniteGroup::compose(Element a, Element b) const {
  check_element(a);
  check_element(b);
  return cayley_[a * order_ + b];
}

Element FiniteGroup::inverse(Element a) const {
  check_element(a);
  return inverse_[a];
}

int FiniteGroup::element_order(Element a) const {
  check_element(a);
  int n = 1;
  Element x = a;
  while (x != 0) {
    x = compose(x, a);
    ++n;
  }
  return n;
}

const std::string& FiniteGroup::element_name(Element a) const {
  check_element(a);
  return element_names_[a];
}

FiniteGroup make_cyclic(int n) {
  require(n >= 1, ErrorCode::invalid_argument, "cyclic group needs n >= 1");
  std::vector<Element> cayley(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) cayley[a * n + b] = (a + b) % n;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i)
    names.push_back(i == 0 ? "e" : (i == 1 ? "r" : "r" + std::to_string(i)));
  std::vector<Element> generators{n == 1 ? 0 : 1};
  return FiniteGroup(std::move(cayley), std::move(generators), std::move(names),
                     "C" + std::to_string(n), {{GroupFactor::Kind::cyclic, n}});
}

FiniteGroup make_dihedral(int n) {
  require(n >= 1, ErrorCode::invalid_argument, "dihedral group needs n >= 1");
  // Element f*n + k encodes s^f r^k with r^n = e, s^2 = e, s r s = r^-1.
  int order = 2 * n;
  auto index = [n](int f, int k) { return f * n + ((k % n) + n) % n; };
  std::vector<Element> cayley(order * order);
  for (int f1 = 0; f1 < 2; ++f1)
    for (int k1 = 0; k1 < n; ++k1)
      for (int f2 = 0; f2 < 2; ++f2)
        for (int k2 = 0; k2 < n; ++k2) {
          // (s^f1 r^k1)(s^f2 r^k2) = s^(f1 xor f2) r^(k2 + (-1)^f2 k1)
          int f = f1 ^ f2;
          int k = k2 + (f2 ? -k1 : k1);
          cayley[index(f1, k1) * order + index(f2, k2)] = index(f, k);
        }
  std::vector<std::string> names;
  for (int f = 0; f < 2; ++f)
    for (int k = 0; k < n; ++k) {
      std::string nm;
      if (f == 0)
        nm = (k == 0) ? "e" : (k == 1 ? "r" : "r" + std::to_string(k));
      else
        nm = (k == 0) ? "s" : "sr" + std::to_string(k);
      names.push_back(nm);
    }
  std::vector<Element> generators;
  if (n >= 2) generators.push_back(index(0, 1));  // r
  generators.push_back(index(1, 0));              // s
  return FiniteGroup(std::move(cayley), std::move(generators), std::move(names),
                     "D" + std::to_string(order), {{GroupFactor::Kind::dihedral, n}});
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  int ng = g.order();
  int nh = h.order();
  int order = ng * nh;
  // Flattened index (i, j) -> i*|H| + j, left factor major.
  std::vector<Element> cayley(order * order);
  for (int i1 = 0; i1 < ng; ++i1)
    for (int j1 = 0; j1 < nh; ++j1)
      for (int i2 = 0; i2 < ng; ++i2)
        for (int j2 = 0; j2 < nh; ++j2)
          cayley[(i1 * nh + j1) * order + (i2 * nh + j2)] =
              g.compose(i1, i2) * nh + h.compose(j1, j2);
  std::vector<std::string> names;
  for (int i = 0; i < ng; ++i)
    for (int j = 0; j < nh; ++j) {
      if (i == 0 && j == 0)
        names.push_back("e");
      else
        names.push_back("(" + g.element_name(i) + "," + h.element_name(j) + ")");
    }
  std::vector<Element> generators;
  for (Element gen : g.generators()) generators.push_back(gen * nh + 0);
  for (Element gen : h.generators()) generators.push_back(0 * nh + gen);
  std::vector<GroupFactor> factors;
  if (!g.factors().empty() && !h.factors().empty()) {
    factors = g.factors();
    factors.insert(factors.end(), h.factors().begin(), h.factors().end());
  }
  return FiniteGroup(std::move(cayley), std::move(generators), std::move(names),
                     g.name() + "x" + h.name(), std::move(factors));
}

namespace {

std::string to_upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return out;
}

FiniteGroup parse_single_group(const std::string& token) {
  require(!token.empty(), ErrorCode::invalid_argument, "empty group literal");
  if (token == "K4") return direct_product(make_cyclic(2), make_cyclic(2));
  char head = token[0];
  require(token.size() >= 2 && (head == 'C' || head == 'D'), ErrorCode::invalid_argument,
          "unknown group literal '" + token + "'");
  int n = 0;
  for (size_t i = 1; i < token.size(); ++i) {
    require(std::isdigit(static_cast<unsigned char>(token[i])), ErrorCode::invalid_argument,
            "unknown group literal '" + token + "'");
    n = n * 10 + (token[i] - '0');
  }
  require(n >= 1, ErrorCode::invalid_argument, "group literal needs order >= 1");
  if (head == 'C') return make_cyclic(n);
  // "Dn" is the dihedral group of order n.
  require(n % 2 == 0, ErrorCode::invalid_argument,
          "dihedral literal 'D" + std::to_string(n) + "' must have even order");
  return make_dihedral(n / 2);
}

}  // namespace

FiniteGroup parse_group(std::string_view literal) {
  std::string upper = to_upper(literal);
  std::vector<std::string> tokens;
  std::string token;
  for (char c : upper) {
    if (c == 'X') {
      tokens.push_back(token);
      token.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      token.push_back(c);
    }
  }
  tokens.push_back(token);
  FiniteGroup result = parse_single_group(tokens[0]);
  for (size_t i = 1; i < tokens.size(); ++i)
    result = direct_product(result, parse_single_group(tokens[i]));
  return result;
}

namespace {

std::multiset<int> order_profile(const FiniteGroup& g) {
  std::multiset<int> profile;
  for (Element a = 0; a < g.order(); ++a) profile.insert(g.element_order(a));
  return profile;
}

/// Tries to extend candidate-generator images to a full isomorphism.
/// Elements of `canonical` are expressed as generator words by BFS; a
/// choice of images then determines the whole map, which is checked for
/// bijectivity and the homomorphism property.
bool try_images(const FiniteGroup& canonical, const FiniteGroup& target,
                const std::vector<Element>& images, std::vector<Element>& mapping) {
  int n = canonical.order();
  mapping.assign(n, -1);
  mapping[0] = 0;
  std::vector<Element> queue{0};
  const auto& gens = canonical.generators();
  while (!queue.empty()) {
    Element a = queue.back();
    queue.pop_back();
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      Element b = canonical.compose(a, gens[gi]);
      Element image = target.compose(mapping[a], images[gi]);
      if (mapping[b] == -1) {
        mapping[b] = image;
        queue.push_back(b);
      } else if (mapping[b] != image) {
        return false;
      }
    }
  }
  std::vector<bool> seen(n, false);
  for (Element a = 0; a < n; ++a) {
    if (mapping[a] < 0 || seen[mapping[a]]) return false;
    seen[mapping[a]] = true;
  }
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (mapping[canonical.compose(a, b)] != target.compose(mapping[a], mapping[b])) return false;
  return true;
}

bool find_isomorphism(const FiniteGroup& canonical, const FiniteGroup& target,
                      std::vector<Element>& mapping) {
  const auto& gens = canonical.generators();
  std::vector<std::vector<Element>> choices(gens.size());
  for (size_t gi = 0; gi < gens.size(); ++gi) {
    int want = canonical.element_order(gens[gi]);
    for (Element a = 0; a < target.order(); ++a)
      if (target.element_order(a) == want) choices[gi].push_back(a);
    if (choices[gi].empty()) return false;
  }
  std::vector<Element> images(gens.size(), 0);
  std::function<bool(size_t)> search = [&](size_t depth) -> bool {
    if (depth == gens.size()) return try_images(canonical, target, images, mapping);
    for (Element choice : choices[depth]) {
      images[depth] = choice;
      if (search(depth + 1)) return true;
    }
    return false;
  };
  return search(0);
}

void enumerate_factorizations(int order, int min_factor_order,
                              std::vector<std::vector<FiniteGroup>>& out,
                              std::vector<FiniteGroup>& stack) {
  if (order == 1) {
    if (!stack.empty()) out.push_back(stack);
    return;
  }
  for (int k = std::max(2, min_factor_order); k <= order; ++k) {
    if (order % k != 0) continue;
    stack.push_back(make_cyclic(k));
    enumerate_factorizations(order / k, k, out, stack);
    stack.pop_back();
    if (k % 2 == 0 && k >= 6) {  // D1 == C2 and D2 == C2xC2 come from cyclic factors
      stack.push_back(make_dihedral(k / 2));
      enumerate_factorizations(order / k, k, out, stack);
      stack.pop_back();
    }
  }
}

}  // namespace

std::optional<FamilyMatch> match_family(const FiniteGroup& g) {
  if (g.order() == 1) {
    std::vector<Element> id{0};
    return FamilyMatch{make_cyclic(1), std::move(id)};
  }
  std::multiset<int> profile = order_profile(g);

  std::vector<std::vector<FiniteGroup>> factorizations;
  std::vector<FiniteGroup> stack;
  enumerate_factorizations(g.order(), 2, factorizations, stack);
  // Prefer few factors ("C6" before "C2xC3").
  std::stable_sort(factorizations.begin(), factorizations.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });

  for (const auto& factors : factorizations) {
    FiniteGroup candidate = factors[0];
    for (size_t i = 1; i < factors.size(); ++i) candidate = direct_product(candidate, factors[i]);
    if (order_profile(candidate) != profile) continue;
    std::vector<Element> mapping;
    if (find_isomorphism(candidate, g, mapping))
      return FamilyMatch{std::move(candidate), std::move(mapping)};
  }
  return std::nullopt;
}

}  // namespace robosym
