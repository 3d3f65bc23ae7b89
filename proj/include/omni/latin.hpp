#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "omni/bits.hpp"

namespace omni {

class Group;

/// One entry (row, column, symbol) of a Latin square.
struct Triple {
  int row = 0;
  int col = 0;
  int sym = 0;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// An n x n grid over symbols 0..n-1 in which every row and column is a
/// permutation. Instances are only created through `validate`, so the Latin
/// property always holds.
class LatinSquare {
 public:
  static LatinSquare validate(int order, std::vector<int> grid);
  static LatinSquare validate(const std::vector<std::vector<int>>& rows);

  int order() const { return order_; }
  int at(int r, int c) const { return grid_[r * order_ + c]; }
  std::span<const int> row(int r) const { return {grid_.data() + r * order_, static_cast<std::size_t>(order_)}; }
  const std::vector<int>& cells() const { return grid_; }

  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;

 private:
  LatinSquare(int order, std::vector<int> grid) : order_(order), grid_(std::move(grid)) {}

  int order_ = 0;
  std::vector<int> grid_;
};

LatinSquare cayley_table(const Group& g);

/// Swaps the two symbols of the intercalate on rows {r1,r2} x columns {c1,c2}.
LatinSquare turn_intercalate(const LatinSquare& l, int r1, int r2, int c1, int c2);

/// grid'[row_perm[r]][col_perm[c]] = sym_perm[grid[r][c]]
LatinSquare apply_isotopy(const LatinSquare& l, std::span<const int> row_perm, std::span<const int> col_perm,
                          std::span<const int> sym_perm);

/// Permutes the roles of (row, column, symbol). `roles[k]` names which source
/// coordinate becomes coordinate k; `roles` is a permutation of {0,1,2}.
LatinSquare conjugate(const LatinSquare& l, std::array<int, 3> roles);

/// Rows X and columns Y of a square, together with the set Z of symbols that
/// occur in X x Y.
struct SubmatrixWindow {
  Mask rows = 0;
  Mask cols = 0;
  Mask symbols = 0;
};

SubmatrixWindow window(const LatinSquare& l, Mask rows, Mask cols);
bool is_subsquare(const LatinSquare& l, const SubmatrixWindow& w);

/// Complete species invariant for n <= 7: the lexicographically least reduced
/// grid over all conjugates, first-row choices and column orders.
std::vector<std::uint8_t> species_key(const LatinSquare& l);

/// All reduced squares (first row and first column 0..n-1) of order n, in
/// lexicographic order.
void for_each_reduced_square(int n, const std::function<void(const LatinSquare&)>& visit);

struct SpeciesClass {
  std::vector<std::uint8_t> key;
  LatinSquare representative;  // first reduced square met in the class
  std::uint64_t reduced_count = 0;
};

/// Buckets every reduced square of order n (n <= 6) by species.
std::vector<SpeciesClass> species_census(int n);

// Square file: first line n, then n rows of n symbols.
LatinSquare read_square(std::istream& in);
void write_square(std::ostream& out, const LatinSquare& l);
LatinSquare load_square(const std::string& path);
void save_square(const std::string& path, const LatinSquare& l);

/// Canonical bytes: order followed by the row-major symbols.
std::vector<std::uint8_t> canonical_bytes(const LatinSquare& l);
/// "fnv1a64:<16 hex digits>" over `canonical_bytes`.
std::string square_hash(const LatinSquare& l);

}  // namespace omni
