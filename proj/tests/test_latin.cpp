#include <doctest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "omni/constructions.hpp"
#include "omni/error.hpp"
#include "omni/group.hpp"
#include "omni/latin.hpp"
#include "oracle.hpp"
#include "figure_fixtures.hpp"

using namespace omni;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::io;
}

std::vector<int> random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST_CASE("validate") {
  CHECK(fixture::order6_figure().order() == 6);
  CHECK(LatinSquare::validate({{0, 1}, {1, 0}}).at(1, 0) == 1);
  CHECK(code_of([] { LatinSquare::validate({{0, 1}, {0, 1}}); }) == Errc::duplicate_in_column);
  CHECK(code_of([] { LatinSquare::validate({{0, 0}, {1, 1}}); }) == Errc::duplicate_in_row);
  CHECK(code_of([] { LatinSquare::validate({{0, 2}, {2, 0}}); }) == Errc::symbol_out_of_range);
  CHECK(code_of([] { LatinSquare::validate({{0, 1}, {1}}); }) == Errc::not_square);
  try {
    LatinSquare::validate({{0, 1, 2}, {1, 2, 0}, {1, 0, 2}});
  } catch (const Error& e) {
    CHECK(e.index() == 0);
  }
  const LatinSquare l = fixture::order8_figure();
  CHECK(LatinSquare::validate(l.order(), l.cells()) == l);
}

TEST_CASE("turning an intercalate") {
  const Group k8 = direct_product(cyclic(2), direct_product(cyclic(2), cyclic(2)));
  const LatinSquare l = cayley_table(k8);
  // turn on rows and columns {identity, y}
  const int y = 2;
  const LatinSquare t = turn_intercalate(l, 0, y, 0, y);
  CHECK(t.at(0, 0) == y);
  CHECK(t.at(y, y) == y);
  CHECK(t.at(0, y) == 0);
  CHECK(t.at(y, 0) == 0);
  int changed = 0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) changed += t.at(i, j) != l.at(i, j);
  CHECK(changed == 4);
  CHECK(turn_intercalate(t, 0, y, 0, y) == l);
  CHECK(oracle::latin(8, t.cells()));
  CHECK(code_of([&] { turn_intercalate(cayley_table(cyclic(5)), 0, 1, 0, 1); }) == Errc::not_an_intercalate);
  CHECK(code_of([&] { turn_intercalate(l, 0, 0, 0, 1); }) == Errc::not_an_intercalate);
}

TEST_CASE("isotopies and conjugates keep the Latin property") {
  std::mt19937_64 rng(7);
  const LatinSquare l = fixture::order6_figure();
  std::vector<int> id(6);
  std::iota(id.begin(), id.end(), 0);
  CHECK(apply_isotopy(l, id, id, id) == l);
  std::vector<int> swap = id;
  std::swap(swap[1], swap[4]);
  CHECK(apply_isotopy(apply_isotopy(l, swap, id, id), swap, id, id) == l);
  for (int t = 0; t < 50; ++t) {
    const auto r = random_perm(6, rng), c = random_perm(6, rng), s = random_perm(6, rng);
    const LatinSquare m = apply_isotopy(l, r, c, s);
    CHECK(oracle::latin(6, m.cells()));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) CHECK(m.at(r[i], c[j]) == s[l.at(i, j)]);
  }
  std::vector<int> bad{0, 0, 1, 2, 3, 4};
  CHECK(code_of([&] { apply_isotopy(l, bad, id, id); }) == Errc::not_a_permutation);
  const LatinSquare tr = conjugate(l, {1, 0, 2});
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(tr.at(i, j) == l.at(j, i));
  for (auto roles : std::vector<std::array<int, 3>>{{0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}})
    CHECK(oracle::latin(6, conjugate(l, roles).cells()));
}

TEST_CASE("windows and subsquares") {
  const LatinSquare z6 = cayley_table(cyclic(6)), z5 = cayley_table(cyclic(5));
  const Mask even = mask_of({0, 2, 4});
  CHECK(window(z6, even, even).symbols == even);
  CHECK(is_subsquare(z6, window(z6, even, even)));
  CHECK(window(z5, bit(0), mask_of({0, 1})).symbols == mask_of({0, 1}));
  CHECK(!is_subsquare(z5, window(z5, mask_of({0, 1}), mask_of({0, 1}))));
  const LatinSquare m6 = build_m(1);
  CHECK(is_subsquare(m6, window(m6, mask_of({3, 4, 5}), mask_of({3, 4, 5}))));

  // |Z| >= max(|X|, |Y|) on random windows of Cayley tables
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto gs = catalog(1 + static_cast<int>(rng() % 24));
    const Group& g = gs[rng() % gs.size()];
    const int n = g.order();
    const Mask x = (rng() & low_bits(n)) | bit(0), y = (rng() & low_bits(n)) | bit(n - 1);
    const SubmatrixWindow w = window(cayley_table(g), x, y);
    CHECK(popcount(w.symbols) >= std::max(popcount(x), popcount(y)));
  }
}

TEST_CASE("species census of order 6") {
  const auto census = species_census(6);
  CHECK(census.size() == 12);
  std::uint64_t total = 0;
  for (const auto& c : census) total += c.reduced_count;
  CHECK(total == 9408);
  CHECK(species_census(4).size() == 2);
  CHECK(species_census(5).size() == 2);
  CHECK(species_census(3).size() == 1);
  CHECK(code_of([] { species_key(cayley_table(cyclic(8))); }) == Errc::order_too_large);
}

TEST_CASE("species key is invariant under isotopy and conjugation") {
  std::mt19937_64 rng(5);
  std::vector<LatinSquare> pool;
  for (int n : {4, 5, 6}) for_each_reduced_square(n, [&](const LatinSquare& l) { pool.push_back(l); });
  const std::array<std::array<int, 3>, 6> roles{{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}}};
  for (int t = 0; t < 100; ++t) {
    const LatinSquare& l = pool[rng() % pool.size()];
    const int n = l.order();
    LatinSquare m = apply_isotopy(l, random_perm(n, rng), random_perm(n, rng), random_perm(n, rng));
    m = conjugate(m, roles[rng() % 6]);
    CHECK(species_key(m) == species_key(l));
  }
}

TEST_CASE("square files and hashes") {
  const LatinSquare l = build_l_star({1, 0});
  std::stringstream s;
  write_square(s, l);
  const std::string first = s.str();
  const LatinSquare back = read_square(s);
  CHECK(back == l);
  std::stringstream again;
  write_square(again, back);
  CHECK(again.str() == first);
  CHECK(square_hash(l) == square_hash(back));
  CHECK(square_hash(l) != square_hash(build_l({1, 0})));
  std::stringstream spaced("  2\n0   1\n\n 1 0 \n");
  CHECK(square_hash(read_square(spaced)) == square_hash(LatinSquare::validate({{0, 1}, {1, 0}})));
  CHECK(canonical_bytes(l).size() == 1 + 64);
  std::stringstream trunc("3\n0 1 2\n1 2");
  CHECK(code_of([&] { read_square(trunc); }) == Errc::malformed);
  std::stringstream bad("2\n0 1\n0 1\n");
  CHECK(code_of([&] { read_square(bad); }) == Errc::duplicate_in_column);
}
