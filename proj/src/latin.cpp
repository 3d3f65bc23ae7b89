#include "omni/latin.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string_view>
#include <unordered_map>

#include "omni/error.hpp"
#include "omni/group.hpp"

namespace omni {

namespace {

void require_permutation(std::span<const int> p, int n, const char* what) {
  if (static_cast<int>(p.size()) != n) throw Error(Errc::not_a_permutation, std::string(what) + " has wrong length");
  Mask seen = 0;
  for (int x : p) {
    if (x < 0 || x >= n || has(seen, x)) throw Error(Errc::not_a_permutation, std::string(what) + " is not a permutation");
    seen |= bit(x);
  }
}

// Calls `visit` with every reduced grid obtainable from some conjugate of `l`
// by choosing which row comes first and the column order; symbols are renamed
// so the first row reads 0..n-1 and rows are ordered by their first symbol.
template <class Visit>
void visit_normal_forms(const LatinSquare& l, Visit visit) {
  const int n = l.order();
  static constexpr std::array<std::array<int, 3>, 6> kRoles{
      {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 0, 1}, {1, 2, 0}, {2, 1, 0}}};
  std::vector<std::uint8_t> form(n * n + 1);
  form[0] = static_cast<std::uint8_t>(n);
  std::vector<int> perm(n), rename(n), row_with_first(n);
  for (const auto& roles : kRoles) {
    const LatinSquare m = conjugate(l, roles);
    for (int first = 0; first < n; ++first) {
      std::iota(perm.begin(), perm.end(), 0);
      do {
        for (int j = 0; j < n; ++j) rename[m.at(first, perm[j])] = j;
        for (int i = 0; i < n; ++i) row_with_first[rename[m.at(i, perm[0])]] = i;
        for (int k = 0; k < n; ++k) {
          const int src = row_with_first[k];
          for (int j = 0; j < n; ++j) form[1 + k * n + j] = static_cast<std::uint8_t>(rename[m.at(src, perm[j])]);
        }
        visit(form);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
}

}  // namespace

LatinSquare LatinSquare::validate(int order, std::vector<int> grid) {
  if (order < 1) throw Error(Errc::not_square, "order must be positive");
  if (order > kMaxOrder) throw Error(Errc::order_too_large, "order above 64 is not supported", order);
  if (static_cast<int>(grid.size()) != order * order) throw Error(Errc::not_square, "grid is not n x n");
  for (int s : grid)
    if (s < 0 || s >= order) throw Error(Errc::symbol_out_of_range, "symbol out of range", s);
  for (int r = 0; r < order; ++r) {
    Mask seen = 0;
    for (int c = 0; c < order; ++c) {
      const int s = grid[r * order + c];
      if (has(seen, s)) throw Error(Errc::duplicate_in_row, "duplicate symbol in row " + std::to_string(r), r);
      seen |= bit(s);
    }
  }
  for (int c = 0; c < order; ++c) {
    Mask seen = 0;
    for (int r = 0; r < order; ++r) {
      const int s = grid[r * order + c];
      if (has(seen, s)) throw Error(Errc::duplicate_in_column, "duplicate symbol in column " + std::to_string(c), c);
      seen |= bit(s);
    }
  }
  return LatinSquare(order, std::move(grid));
}

LatinSquare LatinSquare::validate(const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<int> grid;
  grid.reserve(n * n);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw Error(Errc::not_square, "grid is not square");
    grid.insert(grid.end(), r.begin(), r.end());
  }
  return validate(n, std::move(grid));
}

LatinSquare cayley_table(const Group& g) { return LatinSquare::validate(g.order(), g.table()); }

LatinSquare turn_intercalate(const LatinSquare& l, int r1, int r2, int c1, int c2) {
  const int n = l.order();
  auto in = [n](int i) { return i >= 0 && i < n; };
  if (!in(r1) || !in(r2) || !in(c1) || !in(c2) || r1 == r2 || c1 == c2)
    throw Error(Errc::not_an_intercalate, "intercalate cells out of range or repeated");
  const int a = l.at(r1, c1), b = l.at(r1, c2);
  if (a == b || l.at(r2, c2) != a || l.at(r2, c1) != b) throw Error(Errc::not_an_intercalate, "cells do not form an intercalate");
  std::vector<int> grid = l.cells();
  grid[r1 * n + c1] = b;
  grid[r1 * n + c2] = a;
  grid[r2 * n + c1] = a;
  grid[r2 * n + c2] = b;
  return LatinSquare::validate(n, std::move(grid));
}

LatinSquare apply_isotopy(const LatinSquare& l, std::span<const int> row_perm, std::span<const int> col_perm,
                          std::span<const int> sym_perm) {
  const int n = l.order();
  require_permutation(row_perm, n, "row permutation");
  require_permutation(col_perm, n, "column permutation");
  require_permutation(sym_perm, n, "symbol permutation");
  std::vector<int> grid(n * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) grid[row_perm[r] * n + col_perm[c]] = sym_perm[l.at(r, c)];
  return LatinSquare::validate(n, std::move(grid));
}

LatinSquare conjugate(const LatinSquare& l, std::array<int, 3> roles) {
  const int n = l.order();
  std::vector<int> grid(n * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const int t[3] = {r, c, l.at(r, c)};
      grid[t[roles[0]] * n + t[roles[1]]] = t[roles[2]];
    }
  return LatinSquare::validate(n, std::move(grid));
}

SubmatrixWindow window(const LatinSquare& l, Mask rows, Mask cols) {
  SubmatrixWindow w{rows, cols, 0};
  for (int r : elements_of(rows))
    for (int c : elements_of(cols)) w.symbols |= bit(l.at(r, c));
  return w;
}

bool is_subsquare(const LatinSquare& l, const SubmatrixWindow& w) {
  const int k = popcount(w.rows);
  if (k == 0 || popcount(w.cols) != k || popcount(w.symbols) != k) return false;
  // each window row holds k distinct symbols from a k-set, so it is a permutation of it
  for (int r : elements_of(w.rows)) {
    Mask seen = 0;
    for (int c : elements_of(w.cols)) seen |= bit(l.at(r, c));
    if (seen != w.symbols) return false;
  }
  for (int c : elements_of(w.cols)) {
    Mask seen = 0;
    for (int r : elements_of(w.rows)) seen |= bit(l.at(r, c));
    if (seen != w.symbols) return false;
  }
  return true;
}

std::vector<std::uint8_t> species_key(const LatinSquare& l) {
  if (l.order() > 7) throw Error(Errc::order_too_large, "species_key supports order <= 7", l.order());
  std::vector<std::uint8_t> best;
  visit_normal_forms(l, [&](const std::vector<std::uint8_t>& form) {
    if (best.empty() || form < best) best = form;
  });
  return best;
}

void for_each_reduced_square(int n, const std::function<void(const LatinSquare&)>& visit) {
  if (n < 1 || n > 9) throw Error(Errc::order_too_large, "reduced-square enumeration supports 1 <= n <= 9", n);
  std::vector<int> grid(n * n);
  std::vector<Mask> row_used(n), col_used(n);
  for (int j = 0; j < n; ++j) {
    grid[j] = j;
    grid[j * n] = j;
    row_used[0] |= bit(j);
    col_used[j] |= bit(j);
    row_used[j] |= bit(j);
    if (j > 0) col_used[0] |= bit(j);
  }
  // cells (1,1) .. (n-1,n-1) in row-major order
  std::function<void(int)> fill = [&](int cell) {
    if (cell == (n - 1) * (n - 1)) {
      visit(LatinSquare::validate(n, grid));
      return;
    }
    const int r = 1 + cell / (n - 1), c = 1 + cell % (n - 1);
    for (Mask free = low_bits(n) & ~row_used[r] & ~col_used[c]; free; free &= free - 1) {
      const int s = lowest(free);
      grid[r * n + c] = s;
      row_used[r] |= bit(s);
      col_used[c] |= bit(s);
      fill(cell + 1);
      row_used[r] &= ~bit(s);
      col_used[c] &= ~bit(s);
    }
  };
  if (n == 1) {
    visit(LatinSquare::validate(1, {0}));
    return;
  }
  fill(0);
}

std::vector<SpeciesClass> species_census(int n) {
  if (n > 6) throw Error(Errc::order_too_large, "species census supports order <= 6", n);
  std::vector<SpeciesClass> classes;
  std::unordered_map<std::string, int> form_class;
  for_each_reduced_square(n, [&](const LatinSquare& l) {
    std::vector<std::uint8_t> bytes(l.cells().size() + 1);
    bytes[0] = static_cast<std::uint8_t>(n);
    std::copy(l.cells().begin(), l.cells().end(), bytes.begin() + 1);
    const std::string probe(bytes.begin(), bytes.end());
    if (auto it = form_class.find(probe); it != form_class.end()) {
      ++classes[it->second].reduced_count;
      return;
    }
    const int id = static_cast<int>(classes.size());
    std::vector<std::uint8_t> best;
    visit_normal_forms(l, [&](const std::vector<std::uint8_t>& form) {
      form_class.emplace(std::string(form.begin(), form.end()), id);
      if (best.empty() || form < best) best = form;
    });
    classes.push_back(SpeciesClass{std::move(best), l, 1});
  });
  return classes;
}

LatinSquare read_square(std::istream& in) {
  int n = 0;
  if (!(in >> n) || n < 1) throw Error(Errc::malformed, "square file: missing or bad order");
  if (n > kMaxOrder) throw Error(Errc::order_too_large, "square order above 64", n);
  std::vector<int> grid(n * n);
  for (int& v : grid)
    if (!(in >> v)) throw Error(Errc::malformed, "square file: truncated grid");
  return LatinSquare::validate(n, std::move(grid));
}

void write_square(std::ostream& out, const LatinSquare& l) {
  out << l.order() << '\n';
  for (int r = 0; r < l.order(); ++r) {
    for (int c = 0; c < l.order(); ++c) out << (c ? " " : "") << l.at(r, c);
    out << '\n';
  }
}

LatinSquare load_square(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open " + path);
  return read_square(in);
}

void save_square(const std::string& path, const LatinSquare& l) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot write " + path);
  write_square(out, l);
}

std::vector<std::uint8_t> canonical_bytes(const LatinSquare& l) {
  std::vector<std::uint8_t> out;
  out.reserve(l.cells().size() + 1);
  out.push_back(static_cast<std::uint8_t>(l.order()));
  for (int s : l.cells()) out.push_back(static_cast<std::uint8_t>(s));
  return out;
}

std::string square_hash(const LatinSquare& l) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : canonical_bytes(l)) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace omni
