#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "omni/bits.hpp"

namespace omni {

/// A finite group given by its multiplication table. Element 0 is always the
/// identity; the table is validated (identity law, Latin rows/columns,
/// associativity) on construction.
class Group {
 public:
  Group(std::string name, int order, std::vector<int> table);

  int order() const { return order_; }
  const std::string& name() const { return name_; }
  bool is_abelian() const { return abelian_; }

  int mul(int a, int b) const { return table_[a * order_ + b]; }
  int inverse(int a) const { return inverse_[a]; }
  std::span<const int> row(int a) const { return {table_.data() + a * order_, static_cast<std::size_t>(order_)}; }
  const std::vector<int>& table() const { return table_; }

  /// Returns a copy carrying a different display name.
  Group renamed(std::string name) const;

 private:
  std::string name_;
  int order_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  bool abelian_ = true;
};

/// Sorted element list of a subgroup; always contains 0.
struct Subgroup {
  std::vector<int> elements;

  int order() const { return static_cast<int>(elements.size()); }
  Mask mask() const { return mask_of(elements); }
  bool contains(int x) const;
  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

// Constructors.
Group trivial_group();
Group cyclic(int n);
Group dihedral(int order);
Group dicyclic(int order);
Group direct_product(const Group& g, const Group& h);
Group direct_product(const Group& g, const Group& h, std::string name);
/// `action[b]` is the automorphism of g by which element b of h acts; the
/// product is (a,b)(c,d) = (a * action[b](c), bd).
Group semidirect_product(const Group& g, const Group& h, const std::vector<std::vector<int>>& action,
                         std::string name = {});
/// Closure of permutations of {0..degree-1} under composition.
Group permutation_group(std::string name, const std::vector<std::vector<int>>& generators);
Group special_linear_2_3();

// Queries.
std::vector<int> element_orders(const Group& g);
int element_order(const Group& g, int x);
bool sylow2_cyclic(const Group& g);
Mask generated_subgroup(const Group& g, Mask generators);
std::vector<Subgroup> all_subgroups(const Group& g);
std::vector<Subgroup> subgroups(const Group& g, int order);
bool is_subgroup(const Group& g, Mask elements);
bool is_normal(const Group& g, const Subgroup& h);
/// Restriction of the table to a subgroup, relabelled so that the i-th
/// smallest element of `h` becomes element i.
Group subgroup_as_group(const Group& g, const Subgroup& h);
std::optional<Subgroup> index2_subgroup_with_transversal(const Group& g);
Subgroup center(const Group& g);
Subgroup derived_subgroup(const Group& g);

/// Isomorphism invariants used to tell catalog entries apart.
struct GroupInvariants {
  std::vector<int> order_counts;  // order_counts[k] = #elements of order k
  int center_size = 0;
  bool abelian = false;
  int derived_size = 0;
  int distinct_squares = 0;
  int commuting_pairs = 0;

  friend bool operator==(const GroupInvariants&, const GroupInvariants&) = default;
};

GroupInvariants invariants(const Group& g);
std::string describe(const GroupInvariants& inv);

/// One representative per isomorphism class of groups of order n, 1 <= n <= 24.
std::vector<Group> catalog(int n);
/// Looks a catalog group up by name (e.g. "Z2xZ10", "Q8", "Z5:Z4").
Group find_group(const std::string& name);

// Group file: first line n, then n rows of n indices; identity is 0.
Group read_group(std::istream& in, std::string name = "file");
void write_group(std::ostream& out, const Group& g);

}  // namespace omni
