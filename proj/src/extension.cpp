#include "omni/extension.hpp"

#include "omni/error.hpp"

namespace omni {

Mask product_set(const Group& g, Mask x, Mask y) {
  Mask z = 0;
  for (int a : elements_of(x))
    for (int b : elements_of(y)) z |= bit(g.mul(a, b));
  return z;
}

ProductWindow product_window(const Group& g, Mask x, Mask y) { return {x, y, product_set(g, x, y)}; }

Subgroup stabilizer(const Group& g, Mask z) {
  if (z == 0) throw Error(Errc::precondition, "stabilizer of the empty set");
  Subgroup h;
  for (int e = 0; e < g.order(); ++e)
    if (product_set(g, bit(e), z) == z) h.elements.push_back(e);
  return h;
}

bool kneser_check(const Group& g, Mask x, Mask y) {
  if (!g.is_abelian()) throw Error(Errc::not_abelian, "Kneser's inequality is for abelian groups");
  const Mask z = product_set(g, x, y);
  return popcount(z) >= popcount(x) + popcount(y) - stabilizer(g, z).order();
}

OlsonCase olson_check(const Group& g, Mask x, Mask y) {
  if (!has(x, 0)) throw Error(Errc::identity_missing, "X must contain the identity");
  const Mask z = product_set(g, x, y);
  if (product_set(g, x, z) == z) return OlsonCase::absorbing;
  if (2 * popcount(z) >= popcount(x) + 2 * popcount(y)) return OlsonCase::bounded;
  throw Error(Errc::witness_verification_failed, "neither disjunct of Olson's theorem holds");
}

namespace {

std::optional<SubmatrixWindow> as_subsquare(const Group& g, Mask rows, Mask cols) {
  const LatinSquare l = cayley_table(g);
  const SubmatrixWindow w = window(l, rows, cols);
  if (!is_subsquare(l, w)) return std::nullopt;
  return w;
}

}  // namespace

std::optional<SubmatrixWindow> extend_abelian(const Group& g, Mask x, Mask y) {
  if (!g.is_abelian()) throw Error(Errc::not_abelian, "extend_abelian needs an abelian group");
  const Mask z = product_set(g, x, y);
  const Mask h = stabilizer(g, z).mask();
  const Mask xs = product_set(g, x, h), ys = product_set(g, y, h);
  if (popcount(xs) != popcount(z) || popcount(ys) != popcount(z)) return std::nullopt;
  return as_subsquare(g, xs, ys);
}

std::optional<SubmatrixWindow> extend_general(const Group& g, Mask x, Mask y) {
  if (x == 0 || y == 0) throw Error(Errc::precondition, "empty window");
  const int a = g.inverse(lowest(x));
  const Mask x0 = product_set(g, bit(a), x);
  const Mask z0 = product_set(g, x0, y);
  const Mask h = generated_subgroup(g, x0);
  if (product_set(g, h, z0) != z0 || popcount(z0) != popcount(h)) return std::nullopt;
  return as_subsquare(g, product_set(g, bit(g.inverse(a)), h), z0);
}

namespace {

void check_normal(const Group& g, const Subgroup& h) {
  if (!is_subgroup(g, h.mask()) || !is_normal(g, h)) throw Error(Errc::precondition, "H must be a normal subgroup");
}

}  // namespace

ProductWindow counterexample_ex41(const Group& g, const Subgroup& h, int elem) {
  check_normal(g, h);
  const int g2 = g.mul(elem, elem);
  if (h.contains(elem) || h.contains(g2)) throw Error(Errc::precondition, "need g, g^2 outside H");
  const Mask hm = h.mask(), gh = product_set(g, bit(elem), hm);
  const ProductWindow w = product_window(g, hm, hm | gh);
  if ((product_set(g, bit(g2), hm) & ~(hm | gh)) == 0)
    throw Error(Errc::witness_verification_failed, "g^2 H lies inside H u gH");
  return w;
}

ProductWindow counterexample_ex42(const Group& g, const Subgroup& h, int elem) {
  check_normal(g, h);
  const int g2 = g.mul(elem, elem), g3 = g.mul(g2, elem);
  if (h.contains(elem) || h.contains(g2) || h.contains(g3))
    throw Error(Errc::precondition, "need g, g^2, g^3 outside H");
  const Mask hm = h.mask();
  const Mask gh = product_set(g, bit(elem), hm), gih = product_set(g, bit(g.inverse(elem)), hm);
  const ProductWindow w = product_window(g, hm | gh, hm | gih);
  if ((product_set(g, bit(g2), hm) & ~(hm | gh | gih)) == 0)
    throw Error(Errc::witness_verification_failed, "g^2 H lies inside H u gH u g^-1 H");
  return w;
}

bool ryser_embeddable(const std::vector<std::vector<int>>& r, int n) {
  if (r.empty() || r.front().empty() || n < 1) throw Error(Errc::malformed, "empty matrix");
  const int rows = static_cast<int>(r.size()), cols = static_cast<int>(r.front().size());
  std::vector<int> count(n, 0);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(r[i].size()) != cols) throw Error(Errc::malformed, "ragged matrix", i);
    for (int j = 0; j < cols; ++j) {
      const int s = r[i][j];
      if (s < 0 || s >= n) throw Error(Errc::malformed, "symbol out of range", s);
      ++count[s];
      for (int k = 0; k < j; ++k)
        if (r[i][k] == s) throw Error(Errc::malformed, "repeated symbol in a row", i);
      for (int k = 0; k < i; ++k)
        if (r[k][j] == s) throw Error(Errc::malformed, "repeated symbol in a column", j);
    }
  }
  if (rows > n || cols > n) return false;
  for (int c : count)
    if (c < rows + cols - n) return false;
  return true;
}

}  // namespace omni
