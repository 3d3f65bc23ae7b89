#include "omni/group.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "omni/error.hpp"

namespace omni {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

void require_group_table(int n, const std::vector<int>& t) {
  if (n < 1) throw Error(Errc::bad_order, "group order must be positive");
  if (static_cast<int>(t.size()) != n * n) throw Error(Errc::not_a_group, "table size is not n*n");
  for (int x : t)
    if (x < 0 || x >= n) throw Error(Errc::not_a_group, "table entry out of range");
  for (int i = 0; i < n; ++i) {
    if (t[i] != i || t[i * n] != i) throw Error(Errc::not_a_group, "element 0 is not the identity", i);
  }
  std::vector<char> seen(n);
  for (int r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < n; ++c) {
      if (seen[t[r * n + c]]++) throw Error(Errc::not_a_group, "row is not a permutation", r);
    }
  }
  for (int c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int r = 0; r < n; ++r) {
      if (seen[t[r * n + c]]++) throw Error(Errc::not_a_group, "column is not a permutation", c);
    }
  }
  auto assoc = [&](int a, int b, int c) { return t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]]; };
  if (n <= 64) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (!assoc(a, b, c)) throw Error(Errc::not_a_group, "table is not associative");
  } else {
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    auto next = [&] {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      return static_cast<int>((state >> 33) % static_cast<std::uint64_t>(n));
    };
    for (int k = 0; k < 200000; ++k)
      if (!assoc(next(), next(), next())) throw Error(Errc::not_a_group, "table is not associative");
  }
}

// Builds a group from concrete elements closed under `mul`; the identity is
// placed first and the rest follow in breadth-first discovery order.
template <class Elem, class Mul>
Group close_under(std::string name, const Elem& identity, const std::vector<Elem>& gens, Mul mul) {
  std::vector<Elem> elems{identity};
  std::map<Elem, int> index{{identity, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const Elem& g : gens) {
      Elem p = mul(elems[i], g);
      if (index.emplace(p, static_cast<int>(elems.size())).second) elems.push_back(p);
    }
  }
  const int n = static_cast<int>(elems.size());
  std::vector<int> table(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a * n + b] = index.at(mul(elems[a], elems[b]));
  return Group(std::move(name), n, std::move(table));
}

std::vector<std::vector<int>> power_action(const Group& g, int h_order, const std::vector<int>& gen_image) {
  // action[b] = gen_image^b
  std::vector<std::vector<int>> action(h_order);
  std::vector<int> id(g.order());
  std::iota(id.begin(), id.end(), 0);
  action[0] = id;
  for (int b = 1; b < h_order; ++b) {
    action[b].resize(g.order());
    for (int x = 0; x < g.order(); ++x) action[b][x] = gen_image[action[b - 1][x]];
  }
  return action;
}

std::vector<int> multiply_cyclic(int n, int k) {
  std::vector<int> img(n);
  for (int x = 0; x < n; ++x) img[x] = mod(x * k, n);
  return img;
}

}  // namespace

const char* to_string(Errc code) {
  switch (code) {
    case Errc::duplicate_in_row: return "duplicate-in-row";
    case Errc::duplicate_in_column: return "duplicate-in-column";
    case Errc::symbol_out_of_range: return "symbol-out-of-range";
    case Errc::not_square: return "not-square";
    case Errc::not_an_intercalate: return "not-an-intercalate";
    case Errc::not_a_permutation: return "not-a-permutation";
    case Errc::order_too_large: return "order-too-large";
    case Errc::bad_order: return "bad-order";
    case Errc::not_automorphism: return "not-automorphism";
    case Errc::not_homomorphism: return "not-homomorphism";
    case Errc::not_a_group: return "not-a-group";
    case Errc::not_abelian: return "non-abelian-input";
    case Errc::identity_missing: return "identity-missing";
    case Errc::precondition: return "preconditions-violated";
    case Errc::length_out_of_range: return "length-out-of-range";
    case Errc::witness_verification_failed: return "witness-verification-failed";
    case Errc::malformed: return "malformed";
    case Errc::unknown_group: return "unknown-group";
    case Errc::io: return "io";
  }
  return "unknown";
}

Group::Group(std::string name, int order, std::vector<int> table)
    : name_(std::move(name)), order_(order), table_(std::move(table)) {
  require_group_table(order_, table_);
  inverse_.assign(order_, 0);
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      if (mul(a, b) == 0) inverse_[a] = b;
      if (mul(a, b) != mul(b, a)) abelian_ = false;
    }
  }
}

Group Group::renamed(std::string name) const {
  Group g = *this;
  g.name_ = std::move(name);
  return g;
}

bool Subgroup::contains(int x) const { return std::binary_search(elements.begin(), elements.end(), x); }

Group trivial_group() { return Group("Z1", 1, {0}); }

Group cyclic(int n) {
  if (n < 1) throw Error(Errc::bad_order, "cyclic group order must be positive");
  std::vector<int> t(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i * n + j] = (i + j) % n;
  return Group("Z" + std::to_string(n), n, std::move(t));
}

Group dihedral(int order) {
  if (order < 2 || order % 2 != 0) throw Error(Errc::bad_order, "dihedral group order must be even", order);
  const int k = order / 2;
  // r^i -> i, s r^i -> k + i
  std::vector<int> t(order * order);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b) {
      const bool sa = a >= k, sb = b >= k;
      const int i = a % k, j = b % k;
      int v;
      if (!sa && !sb) v = mod(i + j, k);
      else if (!sa && sb) v = k + mod(j - i, k);
      else if (sa && !sb) v = k + mod(i + j, k);
      else v = mod(j - i, k);
      t[a * order + b] = v;
    }
  }
  return Group("D" + std::to_string(order), order, std::move(t));
}

Group dicyclic(int order) {
  if (order < 4 || order % 4 != 0) throw Error(Errc::bad_order, "dicyclic group order must be a multiple of 4", order);
  const int m = order / 2;  // a has order 2k = m, x^2 = a^k
  const int k = order / 4;
  std::vector<int> t(order * order);
  for (int p = 0; p < order; ++p) {
    for (int q = 0; q < order; ++q) {
      const bool xp = p >= m, xq = q >= m;
      const int i = p % m, j = q % m;
      int v;
      if (!xp && !xq) v = mod(i + j, m);
      else if (!xp && xq) v = m + mod(i + j, m);
      else if (xp && !xq) v = m + mod(i - j, m);
      else v = mod(i - j + k, m);
      t[p * order + q] = v;
    }
  }
  std::string name = order == 8 ? "Q8" : order == 16 ? "Q16" : "Dic" + std::to_string(order);
  return Group(std::move(name), order, std::move(t));
}

Group direct_product(const Group& g, const Group& h) { return direct_product(g, h, g.name() + "x" + h.name()); }

Group direct_product(const Group& g, const Group& h, std::string name) {
  const int ng = g.order(), nh = h.order(), n = ng * nh;
  std::vector<int> t(n * n);
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < nh; ++b)
      for (int c = 0; c < ng; ++c)
        for (int d = 0; d < nh; ++d) t[(a * nh + b) * n + (c * nh + d)] = g.mul(a, c) * nh + h.mul(b, d);
  return Group(std::move(name), n, std::move(t));
}

Group semidirect_product(const Group& g, const Group& h, const std::vector<std::vector<int>>& action,
                         std::string name) {
  const int ng = g.order(), nh = h.order(), n = ng * nh;
  if (static_cast<int>(action.size()) != nh) throw Error(Errc::not_homomorphism, "action must have one map per element of h");
  for (int b = 0; b < nh; ++b) {
    const auto& phi = action[b];
    if (static_cast<int>(phi.size()) != ng) throw Error(Errc::not_automorphism, "action map has wrong size", b);
    std::vector<char> seen(ng);
    for (int x : phi) {
      if (x < 0 || x >= ng || seen[x]++) throw Error(Errc::not_automorphism, "action map is not a permutation", b);
    }
    for (int x = 0; x < ng; ++x)
      for (int y = 0; y < ng; ++y)
        if (phi[g.mul(x, y)] != g.mul(phi[x], phi[y])) throw Error(Errc::not_automorphism, "action map is not an automorphism", b);
  }
  for (int b1 = 0; b1 < nh; ++b1)
    for (int b2 = 0; b2 < nh; ++b2)
      for (int x = 0; x < ng; ++x)
        if (action[h.mul(b1, b2)][x] != action[b1][action[b2][x]])
          throw Error(Errc::not_homomorphism, "action is not a homomorphism into Aut(g)");
  std::vector<int> t(n * n);
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < nh; ++b)
      for (int c = 0; c < ng; ++c)
        for (int d = 0; d < nh; ++d) t[(a * nh + b) * n + (c * nh + d)] = g.mul(a, action[b][c]) * nh + h.mul(b, d);
  if (name.empty()) name = g.name() + ":" + h.name();
  return Group(std::move(name), n, std::move(t));
}

Group permutation_group(std::string name, const std::vector<std::vector<int>>& generators) {
  if (generators.empty()) return trivial_group().renamed(std::move(name));
  const std::size_t degree = generators.front().size();
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  // (p*q)(i) = p(q(i))
  return close_under(std::move(name), id, generators, [](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
    return r;
  });
}

Group special_linear_2_3() {
  using M = std::array<int, 4>;
  auto mul = [](const M& a, const M& b) {
    return M{(a[0] * b[0] + a[1] * b[2]) % 3, (a[0] * b[1] + a[1] * b[3]) % 3, (a[2] * b[0] + a[3] * b[2]) % 3,
             (a[2] * b[1] + a[3] * b[3]) % 3};
  };
  return close_under(std::string("SL(2,3)"), M{1, 0, 0, 1}, {M{1, 1, 0, 1}, M{0, 2, 1, 0}}, mul);
}

int element_order(const Group& g, int x) {
  int k = 1;
  for (int y = x; y != 0; y = g.mul(y, x)) ++k;
  return k;
}

std::vector<int> element_orders(const Group& g) {
  std::vector<int> out(g.order());
  for (int x = 0; x < g.order(); ++x) out[x] = element_order(g, x);
  return out;
}

bool sylow2_cyclic(const Group& g) {
  int two_part = 1;
  for (int n = g.order(); n % 2 == 0; n /= 2) two_part *= 2;
  if (two_part == 1) return false;
  for (int x = 0; x < g.order(); ++x)
    if (element_order(g, x) == two_part) return true;
  return false;
}

Mask generated_subgroup(const Group& g, Mask generators) {
  if (g.order() > kMaxOrder) throw Error(Errc::order_too_large, "subgroup queries need order <= 64");
  Mask closed = bit(0);
  std::vector<int> frontier{0};
  const std::vector<int> gens = elements_of(generators);
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier)
      for (int s : gens) {
        const int y = g.mul(x, s);
        if (!has(closed, y)) {
          closed |= bit(y);
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return closed;
}

bool is_subgroup(const Group& g, Mask elements) {
  if (!has(elements, 0)) return false;
  for (int a : elements_of(elements))
    for (int b : elements_of(elements))
      if (!has(elements, g.mul(a, g.inverse(b)))) return false;
  return true;
}

std::vector<Subgroup> all_subgroups(const Group& g) {
  std::set<Mask> found{bit(0)};
  std::vector<Mask> queue{bit(0)};
  const Mask all = low_bits(g.order());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Mask s = queue[i];
    for (int x : elements_of(all & ~s)) {
      const Mask t = generated_subgroup(g, s | bit(x));
      if (found.insert(t).second) queue.push_back(t);
    }
  }
  std::vector<Subgroup> out;
  for (Mask m : found) out.push_back(Subgroup{elements_of(m)});
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.order() != b.order() ? a.order() < b.order() : a.elements < b.elements;
  });
  return out;
}

std::vector<Subgroup> subgroups(const Group& g, int order) {
  std::vector<Subgroup> out;
  if (order < 1 || g.order() % order != 0) return out;
  for (auto& s : all_subgroups(g))
    if (s.order() == order) out.push_back(std::move(s));
  return out;
}

bool is_normal(const Group& g, const Subgroup& h) {
  const Mask m = h.mask();
  for (int x = 0; x < g.order(); ++x)
    for (int e : h.elements)
      if (!has(m, g.mul(g.mul(x, e), g.inverse(x)))) return false;
  return true;
}

Group subgroup_as_group(const Group& g, const Subgroup& h) {
  const int k = h.order();
  std::vector<int> local(g.order(), -1);
  for (int i = 0; i < k; ++i) local[h.elements[i]] = i;
  std::vector<int> t(k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const int v = local[g.mul(h.elements[i], h.elements[j])];
      if (v < 0) throw Error(Errc::precondition, "element set is not closed under the product");
      t[i * k + j] = v;
    }
  return Group(g.name() + "|H", k, std::move(t));
}

std::optional<Subgroup> index2_subgroup_with_transversal(const Group& g) {
  if (g.order() % 2 != 0) return std::nullopt;
  for (auto& h : subgroups(g, g.order() / 2)) {
    if (!is_normal(g, h)) throw Error(Errc::precondition, "index-2 subgroup that is not normal");
    if (!sylow2_cyclic(subgroup_as_group(g, h))) return h;
  }
  return std::nullopt;
}

Subgroup center(const Group& g) {
  Subgroup z;
  for (int x = 0; x < g.order(); ++x) {
    bool central = true;
    for (int y = 0; y < g.order() && central; ++y) central = g.mul(x, y) == g.mul(y, x);
    if (central) z.elements.push_back(x);
  }
  return z;
}

Subgroup derived_subgroup(const Group& g) {
  Mask commutators = bit(0);
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      commutators |= bit(g.mul(g.mul(g.inverse(a), g.inverse(b)), g.mul(a, b)));
  return Subgroup{elements_of(generated_subgroup(g, commutators))};
}

GroupInvariants invariants(const Group& g) {
  GroupInvariants inv;
  inv.order_counts.assign(g.order() + 1, 0);
  for (int o : element_orders(g)) ++inv.order_counts[o];
  inv.center_size = center(g).order();
  inv.abelian = g.is_abelian();
  inv.derived_size = derived_subgroup(g).order();
  std::vector<char> sq(g.order());
  for (int x = 0; x < g.order(); ++x) sq[g.mul(x, x)] = 1;
  inv.distinct_squares = static_cast<int>(std::count(sq.begin(), sq.end(), 1));
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) inv.commuting_pairs += g.mul(a, b) == g.mul(b, a);
  return inv;
}

std::string describe(const GroupInvariants& inv) {
  std::ostringstream os;
  os << "orders{";
  bool first = true;
  for (std::size_t k = 1; k < inv.order_counts.size(); ++k) {
    if (inv.order_counts[k] == 0) continue;
    os << (first ? "" : ",") << k << ":" << inv.order_counts[k];
    first = false;
  }
  os << "} center=" << inv.center_size << " abelian=" << (inv.abelian ? "yes" : "no") << " derived=" << inv.derived_size
     << " squares=" << inv.distinct_squares << " commuting=" << inv.commuting_pairs;
  return os.str();
}

std::vector<Group> catalog(int n) {
  if (n < 1 || n > 24) throw Error(Errc::bad_order, "catalog covers orders 1..24", n);
  const auto Z = [](int k) { return cyclic(k); };
  const auto x = [](const Group& a, const Group& b) { return direct_product(a, b); };
  std::vector<Group> out;
  switch (n) {
    case 1: out = {trivial_group()}; break;
    case 4: out = {Z(4), x(Z(2), Z(2))}; break;
    case 6: out = {Z(6), dihedral(6)}; break;
    case 8: out = {Z(8), x(Z(4), Z(2)), x(Z(2), x(Z(2), Z(2))).renamed("Z2xZ2xZ2"), dihedral(8), dicyclic(8)}; break;
    case 9: out = {Z(9), x(Z(3), Z(3))}; break;
    case 10: out = {Z(10), dihedral(10)}; break;
    case 12:
      out = {Z(12), x(Z(2), Z(6)), permutation_group("A4", {{1, 2, 0, 3}, {1, 0, 3, 2}}), dihedral(12), dicyclic(12)};
      break;
    case 14: out = {Z(14), dihedral(14)}; break;
    case 16: {
      const Group z4z2 = x(Z(4), Z(2));  // index 2i+j for (i in Z4, j in Z2)
      std::vector<int> shear(8), pauli(8);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j) {
          shear[i * 2 + j] = i * 2 + (j + i) % 2;  // c a c = a b
          pauli[i * 2 + j] = ((i + 2 * j) % 4) * 2 + j;  // c b c = a^2 b
        }
      out = {Z(16),
             x(Z(8), Z(2)),
             x(Z(4), Z(4)),
             x(Z(4), x(Z(2), Z(2))).renamed("Z4xZ2xZ2"),
             x(Z(2), x(Z(2), x(Z(2), Z(2)))).renamed("Z2^4"),
             dihedral(16),
             dicyclic(16),
             semidirect_product(Z(8), Z(2), power_action(Z(8), 2, multiply_cyclic(8, 3)), "SD16"),
             semidirect_product(Z(8), Z(2), power_action(Z(8), 2, multiply_cyclic(8, 5)), "M16"),
             x(dihedral(8), Z(2)),
             x(dicyclic(8), Z(2)),
             semidirect_product(Z(4), Z(4), power_action(Z(4), 4, multiply_cyclic(4, -1)), "Z4:Z4"),
             semidirect_product(z4z2, Z(2), power_action(z4z2, 2, shear), "(Z4xZ2):Z2"),
             semidirect_product(z4z2, Z(2), power_action(z4z2, 2, pauli), "Pauli")};
      break;
    }
    case 18: {
      const Group z3z3 = x(Z(3), Z(3));
      std::vector<int> inv(9);
      for (int e = 0; e < 9; ++e) inv[e] = z3z3.inverse(e);
      out = {Z(18), x(Z(3), Z(6)), dihedral(18), x(Z(3), dihedral(6)),
             semidirect_product(z3z3, Z(2), power_action(z3z3, 2, inv), "(Z3xZ3):Z2")};
      break;
    }
    case 20:
      out = {Z(20), x(Z(2), Z(10)), dihedral(20), dicyclic(20),
             semidirect_product(Z(5), Z(4), power_action(Z(5), 4, multiply_cyclic(5, 2)), "Z5:Z4")};
      break;
    case 21:
      out = {Z(21), semidirect_product(Z(7), Z(3), power_action(Z(7), 3, multiply_cyclic(7, 2)), "Z7:Z3")};
      break;
    case 22: out = {Z(22), dihedral(22)}; break;
    case 24: {
      const Group d8 = dihedral(8);
      std::vector<std::vector<int>> klein_kernel(8);
      for (int b = 0; b < 8; ++b) {
        // kernel <r^2, s> = {0, 2, 4, 6}; the rest act on Z3 by inversion
        klein_kernel[b] = b % 2 == 0 ? std::vector<int>{0, 1, 2} : std::vector<int>{0, 2, 1};
      }
      const Group a4 = permutation_group("A4", {{1, 2, 0, 3}, {1, 0, 3, 2}});
      out = {Z(24),
             x(Z(2), Z(12)),
             x(Z(2), x(Z(2), Z(6))).renamed("Z2xZ2xZ6"),
             permutation_group("S4", {{1, 0, 2, 3}, {1, 2, 3, 0}}),
             special_linear_2_3(),
             semidirect_product(Z(3), Z(8), power_action(Z(3), 8, multiply_cyclic(3, -1)), "Z3:Z8"),
             dicyclic(24),
             dihedral(24),
             x(Z(2), dicyclic(12)),
             x(Z(2), a4),
             x(Z(3), d8),
             x(Z(3), dicyclic(8)),
             x(Z(4), dihedral(6)),
             x(Z(2), x(Z(2), dihedral(6))).renamed("Z2xZ2xD6"),
             semidirect_product(Z(3), d8, klein_kernel, "Z3:D8")};
      break;
    }
    default:
      // orders 2,3,5,7,11,13,15,17,19,23 have only the cyclic group
      out = {Z(n)};
  }
  return out;
}

Group find_group(const std::string& name) {
  for (int n = 1; n <= 24; ++n)
    for (auto& g : catalog(n))
      if (g.name() == name) return g;
  throw Error(Errc::unknown_group, "no catalog group named '" + name + "'");
}

Group read_group(std::istream& in, std::string name) {
  int n = 0;
  if (!(in >> n) || n < 1) throw Error(Errc::malformed, "group file: missing or bad order");
  std::vector<int> t(n * n);
  for (int& v : t)
    if (!(in >> v)) throw Error(Errc::malformed, "group file: truncated table");
  return Group(std::move(name), n, std::move(t));
}

void write_group(std::ostream& out, const Group& g) {
  out << g.order() << '\n';
  for (int a = 0; a < g.order(); ++a) {
    for (int b = 0; b < g.order(); ++b) out << (b ? " " : "") << g.mul(a, b);
    out << '\n';
  }
}

}  // namespace omni
