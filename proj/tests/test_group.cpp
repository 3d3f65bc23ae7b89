#include <doctest.h>

#include <sstream>

#include "omni/error.hpp"
#include "omni/group.hpp"
#include "omni/latin.hpp"
#include "oracle.hpp"

using namespace omni;

TEST_CASE("catalog sizes follow the census of small groups") {
  const int census[] = {1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15};
  for (int n = 1; n <= 24; ++n) CHECK_MESSAGE(catalog(n).size() == census[n - 1], "order " << n);
  CHECK_THROWS_AS(catalog(0), Error);
  CHECK_THROWS_AS(catalog(25), Error);
}

TEST_CASE("every catalog group satisfies the axioms and tabulates a Latin square") {
  for (int n = 1; n <= 24; ++n)
    for (const Group& g : catalog(n)) {
      CHECK_MESSAGE(oracle::group_axioms(g), g.name());
      CHECK(cayley_table(g).order() == n);
    }
}

TEST_CASE("catalog entries are pairwise non-isomorphic") {
  for (int n = 1; n <= 24; ++n) {
    const auto gs = catalog(n);
    for (std::size_t i = 0; i < gs.size(); ++i)
      for (std::size_t j = i + 1; j < gs.size(); ++j) {
        CHECK_MESSAGE(!(invariants(gs[i]) == invariants(gs[j])), gs[i].name() << " " << gs[j].name());
        if (n <= 16) CHECK_MESSAGE(!oracle::isomorphic(gs[i], gs[j]), gs[i].name() << " ~ " << gs[j].name());
      }
  }
}

TEST_CASE("isomorphism oracle recognises relabelled copies") {
  CHECK(oracle::isomorphic(dicyclic(8), find_group("Q8")));
  CHECK(oracle::isomorphic(direct_product(cyclic(2), cyclic(3)), cyclic(6)));
  CHECK(!oracle::isomorphic(dihedral(8), dicyclic(8)));
}

TEST_CASE("sylow2_cyclic agrees with a closure-built Sylow subgroup") {
  for (int n = 1; n <= 24; ++n)
    for (const Group& g : catalog(n)) CHECK_MESSAGE(sylow2_cyclic(g) == oracle::sylow2_cyclic(g), g.name());
  CHECK(sylow2_cyclic(cyclic(6)));
  CHECK(!sylow2_cyclic(direct_product(cyclic(2), cyclic(2))));
  CHECK(!sylow2_cyclic(cyclic(5)));
}

TEST_CASE("element orders") {
  CHECK(element_orders(cyclic(6)) == std::vector<int>{1, 6, 3, 2, 3, 6});
  CHECK(element_orders(trivial_group()) == std::vector<int>{1});
  const auto d8 = element_orders(dihedral(8));
  CHECK(*std::max_element(d8.begin(), d8.end()) == 4);
  const auto q8 = element_orders(dicyclic(8));
  CHECK(std::count(q8.begin(), q8.end(), 2) == 1);
  CHECK(!dicyclic(8).is_abelian());
}

TEST_CASE("subgroups match exhaustive subset closure") {
  for (int n = 1; n <= 16; ++n)
    for (const Group& g : catalog(n)) {
      const auto brute = oracle::subgroups(g);
      std::size_t total = 0;
      for (int k = 1; k <= n; ++k) {
        const auto subs = subgroups(g, k);
        std::size_t expect = 0;
        for (auto s : brute) expect += std::popcount(s) == k;
        CHECK_MESSAGE(subs.size() == expect, g.name() << " order " << k);
        for (const Subgroup& h : subs) {
          CHECK(h.order() == k);
          CHECK(std::find(brute.begin(), brute.end(), static_cast<std::uint32_t>(h.mask())) != brute.end());
        }
        total += subs.size();
      }
      CHECK(all_subgroups(g).size() == total);
    }
  CHECK(subgroups(cyclic(6), 3) == std::vector<Subgroup>{Subgroup{{0, 2, 4}}});
  CHECK(subgroups(cyclic(5), 2).empty());
  CHECK(subgroups(direct_product(cyclic(2), cyclic(2)), 2).size() == 3);
  CHECK(subgroups(dicyclic(16), 8).size() >= 1);
  bool cyclic8 = false;
  for (const Subgroup& h : subgroups(dicyclic(16), 8))
    for (int x : h.elements) cyclic8 = cyclic8 || element_order(dicyclic(16), x) == 8;
  CHECK(cyclic8);
}

TEST_CASE("normality and the centre by brute force") {
  for (int n : {6, 8, 12, 16, 18, 24})
    for (const Group& g : catalog(n)) {
      for (const Subgroup& h : all_subgroups(g)) {
        bool normal = true;
        for (int x = 0; x < n && normal; ++x)
          for (int e : h.elements) normal = normal && h.contains(g.mul(g.mul(x, e), g.inverse(x)));
        CHECK(is_normal(g, h) == normal);
      }
      std::vector<int> z;
      for (int a = 0; a < n; ++a) {
        bool central = true;
        for (int b = 0; b < n; ++b) central = central && g.mul(a, b) == g.mul(b, a);
        if (central) z.push_back(a);
      }
      CHECK(center(g).elements == z);
    }
}

TEST_CASE("index-2 subgroups with a transversal") {
  const Group k8 = direct_product(cyclic(2), direct_product(cyclic(2), cyclic(2)));
  const auto h = index2_subgroup_with_transversal(k8);
  REQUIRE(h);
  CHECK(h->order() == 4);
  CHECK(!sylow2_cyclic(subgroup_as_group(k8, *h)));
  CHECK(!index2_subgroup_with_transversal(cyclic(12)));
  CHECK(!index2_subgroup_with_transversal(cyclic(5)));
  // an index-2 subgroup qualifies iff its Sylow 2-subgroups are not cyclic
  for (int n = 2; n <= 24; n += 2)
    for (const Group& g : catalog(n)) {
      bool any = false;
      for (const Subgroup& s : subgroups(g, n / 2)) any = any || !oracle::sylow2_cyclic(subgroup_as_group(g, s));
      CHECK_MESSAGE(index2_subgroup_with_transversal(g).has_value() == any, g.name());
    }
}

TEST_CASE("semidirect products") {
  const Group z5 = cyclic(5), z4 = cyclic(4);
  std::vector<std::vector<int>> act(4);
  for (int b = 0; b < 4; ++b) {
    int mult = 1;
    for (int i = 0; i < b; ++i) mult = mult * 2 % 5;
    for (int x = 0; x < 5; ++x) act[b].push_back(x * mult % 5);
  }
  const Group hol = semidirect_product(z5, z4, act);
  CHECK(hol.order() == 20);
  CHECK(oracle::group_axioms(hol));
  CHECK(center(hol).order() == 1);

  std::vector<std::vector<int>> flip(8);
  for (int b = 0; b < 8; ++b)
    for (int x = 0; x < 3; ++x) flip[b].push_back(b % 2 ? (3 - x) % 3 : x);
  const Group z3z8 = semidirect_product(cyclic(3), cyclic(8), flip);
  CHECK(oracle::group_axioms(z3z8));
  CHECK(sylow2_cyclic(z3z8));
  CHECK(!z3z8.is_abelian());

  std::vector<std::vector<int>> id(3, std::vector<int>{0, 1, 2, 3});
  CHECK(oracle::isomorphic(semidirect_product(cyclic(4), cyclic(3), id), direct_product(cyclic(4), cyclic(3))));

  std::vector<std::vector<int>> bad(2, std::vector<int>{0, 2, 1, 3});
  CHECK_THROWS_AS(semidirect_product(cyclic(4), cyclic(2), bad), Error);
}

TEST_CASE("group files round trip and reject non-groups") {
  for (const Group& g : catalog(12)) {
    std::stringstream s;
    write_group(s, g);
    const Group back = read_group(s, g.name());
    CHECK(back.table() == g.table());
  }
  std::stringstream bad("3\n0 1 2\n1 0 2\n2 2 0\n");
  CHECK_THROWS_AS(read_group(bad), Error);
  std::stringstream trunc("2\n0 1\n1");
  CHECK_THROWS_AS(read_group(trunc), Error);
  CHECK_THROWS_AS(find_group("Z99"), Error);
  CHECK(find_group("Q8").order() == 8);
}

TEST_CASE("Cayley table of Z5 is the shifted rows") {
  const LatinSquare l = cayley_table(cyclic(5));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(l.at(i, j) == (i + j) % 5);
  CHECK(cayley_table(trivial_group()).at(0, 0) == 0);
}
