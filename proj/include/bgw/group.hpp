#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bgw {

using Element = std::uint32_t;
using ClassIndex = std::uint32_t;

struct GroupLimits {
  std::size_t max_order = 100000;
  /// Cayley tables are stored densely; this bounds n*n.
  std::size_t max_table_entries = std::size_t{1} << 28;
  /// Cayley input is checked for associativity exhaustively up to this order.
  std::size_t associativity_check_bound = 512;
};

/// A finite group given by its full multiplication table. The identity is
/// always element 0.
class GroupTable {
 public:
  static constexpr Element identity = 0;

  std::size_t order() const { return order_; }
  Element mul(Element x, Element y) const { return mult_[std::size_t{x} * order_ + y]; }
  Element inv(Element x) const { return inv_[x]; }
  std::span<const Element> row(Element x) const {
    return {mult_.data() + std::size_t{x} * order_, order_};
  }
  /// x y x^{-1} y^{-1}
  Element commutator(Element x, Element y) const { return mul(mul(x, y), mul(inv_[x], inv_[y])); }
  Element conjugate(Element g, Element x) const { return mul(mul(g, x), inv_[g]); }

  const std::vector<std::string>& element_names() const { return names_; }
  const std::string& name(Element x) const { return names_[x]; }
  std::vector<std::vector<std::size_t>> cayley_table() const;
  bool is_abelian() const;
  std::size_t element_order(Element x) const;

 private:
  friend GroupTable make_group_table(std::size_t, std::vector<Element>, std::vector<std::string>);
  std::size_t order_ = 1;
  std::vector<Element> mult_{0};
  std::vector<Element> inv_{0};
  std::vector<std::string> names_{"e"};
};

/// Wraps an already validated table whose identity sits at index 0.
GroupTable make_group_table(std::size_t order, std::vector<Element> mult,
                            std::vector<std::string> names);

/// A permutation of {0..d-1}; image[i] is where i goes.
struct Permutation {
  std::vector<std::size_t> image;

  std::size_t degree() const { return image.size(); }
  /// (p * q)(i) = p(q(i))
  Permutation operator*(const Permutation& q) const;
  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;
  bool is_identity() const;
  /// Disjoint cycle notation, "()" for the identity.
  std::string cycle_notation() const;
};

/// Parses "(0 1)(2 3 4)"; cycles must be disjoint. The degree is
/// max(min_degree, largest point + 1).
Permutation parse_cycles(std::string_view text, std::size_t min_degree = 0);

GroupTable build_from_cayley(const std::vector<std::vector<std::size_t>>& table,
                             const GroupLimits& limits = {});
GroupTable build_from_generators(const std::vector<Permutation>& generators,
                                 const GroupLimits& limits = {});

enum class GroupFamily { Symmetric, Cyclic, Dihedral, Quaternion };

GroupFamily parse_group_family(std::string_view name);
/// S n (order n!), Z n, D n (order 2n), Q8 (param ignored).
GroupTable named_group(GroupFamily family, int param, const GroupLimits& limits = {});
GroupTable named_group(std::string_view name, int param, const GroupLimits& limits = {});

/// Element (x, y) has index x * |H| + y.
GroupTable direct_product(const GroupTable& g, const GroupTable& h, const GroupLimits& limits = {});

struct ConjugacyData {
  std::vector<std::vector<Element>> classes;
  std::vector<ClassIndex> class_of;
  std::vector<Element> representative;
  std::vector<std::size_t> class_size;
  std::vector<std::size_t> centralizer_order;
  std::vector<ClassIndex> inverse_class;
  std::size_t group_order = 1;

  std::size_t num_classes() const { return classes.size(); }
  std::size_t class_centralizer(ClassIndex k) const { return centralizer_order[representative[k]]; }
};

/// Classes are numbered by their smallest element, so class 0 is {identity}.
ConjugacyData conjugacy_data(const GroupTable& g);

std::size_t joint_centralizer_order(const GroupTable& g, std::span<const Element> elems);

/// Resolves a class label: all-digit strings are class indices, anything else
/// must name an element whose class is returned.
ClassIndex resolve_class_label(const GroupTable& g, const ConjugacyData& cd, std::string_view label);

}  // namespace bgw
