#include "omni/constructions.hpp"

#include <algorithm>
#include <functional>

#include "omni/error.hpp"
#include "omni/group.hpp"

namespace omni {

namespace {

// Arithmetic in Z2^2 x Z_K, K = 2m+q.
struct Alg {
  int K;
  int idx(int coset, int e) const { return coset * K + ((e % K) + K) % K; }
  int coset(int a) const { return a / K; }
  int power(int a) const { return a % K; }
  int mul(int a, int b) const { return idx(coset(a) ^ coset(b), power(a) + power(b)); }
  int x(int e) const { return idx(0, e); }
  int gen(Gen g) const { return idx(g == Gen::y ? 1 : 2, 0); }
  int y() const { return idx(1, 0); }
  int z() const { return idx(2, 0); }
  int yz() const { return idx(3, 0); }
};

// Collects triples, checking each against the square.
class Builder {
 public:
  explicit Builder(const LatinSquare& l) : l_(l) {}

  void add(int r, int c, int s) {
    if (l_.at(r, c) != s)
      throw Error(Errc::witness_verification_failed, "cell does not carry the expected symbol", r * l_.order() + c);
    t_.push_back({r, c, s});
  }
  void add_cell(int r, int c) { t_.push_back({r, c, l_.at(r, c)}); }
  std::vector<Triple>& triples() { return t_; }

 private:
  const LatinSquare& l_;
  std::vector<Triple> t_;
};

PartialTransversal checked(const LatinSquare& l, std::vector<Triple> t, int length) {
  PartialTransversal out = make_transversal(std::move(t));
  verify_maximal_witness(l, out, length);
  return out;
}

// Transversals of L as cells (g, theta(g) h): theta combines a complete
// mapping of the 2-part Z2^2 x Z_t with the identity on the odd part Z_o,
// h is a right translation. Returns the first column map accepted by `ok`.
std::optional<std::vector<int>> l_transversal(const Alg& a, const std::function<bool(const std::vector<int>&)>& ok) {
  const int K = a.K;
  int t = 1;
  while (K % (2 * t) == 0) t *= 2;
  const int o = K / t, np = 4 * t, n = 4 * K;
  auto pmul = [t](int x, int y) { return ((x / t) ^ (y / t)) * t + (x % t + y % t) % t; };
  auto crt = [&](int f, int u) {
    for (int e = f; e < K; e += t)
      if (e % o == u) return e;
    return -1;
  };
  std::vector<int> theta(np, -1);
  std::vector<char> col_used(np, 0), sym_used(np, 0);
  std::optional<std::vector<int>> found;
  std::function<bool(int)> dfs = [&](int g) -> bool {
    if (g == np) {
      std::vector<int> base(n);
      for (int x = 0; x < n; ++x) {
        const int c = a.coset(x), e = a.power(x);
        const int img = theta[c * t + e % t];
        base[x] = a.idx(img / t, crt(img % t, e % o));
      }
      for (int h = 0; h < n; ++h) {
        std::vector<int> col(n);
        for (int x = 0; x < n; ++x) col[x] = a.mul(base[x], h);
        if (ok(col)) {
          found = std::move(col);
          return true;
        }
      }
      return false;
    }
    for (int c = 0; c < np; ++c) {
      const int s = pmul(g, c);
      if (col_used[c] || sym_used[s]) continue;
      theta[g] = c;
      col_used[c] = sym_used[s] = 1;
      if (dfs(g + 1)) return true;
      col_used[c] = sym_used[s] = 0;
    }
    return false;
  };
  dfs(0);
  return found;
}

}  // namespace

void check_params(const LStarParams& p) {
  if (p.m < 1 || (p.q != 0 && p.q != 1)) throw Error(Errc::precondition, "L* needs m >= 1 and q in {0,1}");
}

int l_star_element(const LStarParams& p, int coset, int e) { return Alg{p.cyclic_part()}.idx(coset, e); }

LatinSquare build_l(const LStarParams& p) {
  check_params(p);
  const Alg a{p.cyclic_part()};
  const int n = p.order();
  std::vector<int> grid(n * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) grid[r * n + c] = a.mul(r, c);
  return LatinSquare::validate(n, std::move(grid));
}

LatinSquare build_l_star(const LStarParams& p) {
  const Alg a{p.cyclic_part()};
  return turn_intercalate(build_l(p), 0, a.y(), 0, a.y());
}

TkqParams tkq_params(const LStarParams& p, int k) {
  check_params(p);
  if (k < 1 - p.q || k > 4 * p.m + p.q - 2) throw Error(Errc::precondition, "k outside [1-q, 4m+q-2]", k);
  TkqParams t;
  t.k = k;
  t.j = (k + p.q - 1) / 2;
  t.w = k % 2 == 0 ? Gen::y : Gen::z;
  t.v = t.w == Gen::y ? Gen::z : Gen::y;
  return t;
}

std::vector<Triple> u_w(const LStarParams& p, Gen wg) {
  check_params(p);
  const Alg a{p.cyclic_part()};
  const int m = p.m, q = p.q, w = a.gen(wg);
  std::vector<Triple> u;
  auto put = [&](int r, int c) { u.push_back({r, c, a.mul(r, c)}); };
  for (int i = 1; i <= m - 1 + q; ++i) put(a.x(i), a.x(i));
  for (int i = 0; i <= m - 1; ++i) put(a.mul(w, a.x(i + 1)), a.mul(w, a.x(i)));
  for (int i = 0; i <= m - 1; ++i) put(a.x(m + q + i), a.mul(w, a.x(m + q + i)));
  for (int i = 0; i <= m - 1; ++i) put(a.mul(w, a.x(m + 1 + q + i)), a.x(m + q + i));
  return u;
}

std::vector<Triple> choose_k(const LStarParams& p, const TkqParams& t) {
  const Alg a{p.cyclic_part()};
  const int m = p.m, w = a.gen(t.w);
  const std::vector<int> bad_rows{0, a.x(m), a.x(-m), a.mul(w, a.x(m + 1))};
  const std::vector<int> bad_cols{0, a.x(m), a.mul(w, a.x(m))};
  const std::vector<int> bad_syms{0, a.x(2 * m), w};
  auto in = [](const std::vector<int>& v, int e) { return std::find(v.begin(), v.end(), e) != v.end(); };
  std::vector<Triple> k;
  for (const Triple& u : u_w(p, t.w)) {
    if (static_cast<int>(k.size()) == t.j) break;
    if (a.coset(u.sym) != 0 || in(bad_rows, u.row) || in(bad_cols, u.col) || in(bad_syms, u.sym)) continue;
    bool clash = false;
    for (const Triple& o : k) {
      // rows of rho and sigma images, columns of gamma and sigma images
      if (u.row == a.mul(o.row, a.x(m)) || u.row == a.mul(o.row, a.x(-m))) clash = true;
      if (u.col == a.mul(o.col, a.mul(w, a.x(m))) || u.col == a.mul(o.col, a.mul(w, a.x(-m)))) clash = true;
    }
    if (!clash) k.push_back(u);
  }
  if (static_cast<int>(k.size()) < t.j) throw Error(Errc::precondition, "U_w has too few eligible triples for K", t.k);
  return k;
}

PartialTransversal t_kq(const LStarParams& p, int k) {
  const TkqParams t = tkq_params(p, k);
  const Alg a{p.cyclic_part()};
  const int m = p.m, q = p.q;
  const int v = a.gen(t.v), w = a.gen(t.w), vw = a.mul(v, w);
  const LatinSquare l = build_l_star(p);
  const std::vector<Triple> uw = u_w(p, t.w);
  const std::vector<Triple> kset = choose_k(p, t);

  Builder b(l);
  for (const Triple& u : uw)
    if (std::find(kset.begin(), kset.end(), u) == kset.end()) b.add(u.row, u.col, u.sym);
  for (const Triple& u : kset) {
    b.add(u.row, a.mul(u.col, v), a.mul(u.sym, v));    // gamma_v
    b.add(a.mul(vw, u.row), u.col, a.mul(vw, u.sym));  // rho_vw
    if (a.coset(u.row) == 0)                           // sigma_w
      b.add(a.mul(a.mul(a.x(-m), a.yz()), u.row), a.mul(u.col, a.mul(a.x(m), a.yz())), u.sym);
    else
      b.add(a.mul(a.mul(a.x(m), a.yz()), u.row), a.mul(u.col, a.mul(a.x(-m), a.yz())), u.sym);
  }
  const bool odd = k % 2 != 0;
  if (odd && q == 0) {
    b.add(0, 0, a.y());
    b.add(a.mul(a.x(m), a.yz()), a.mul(a.x(m), a.yz()), 0);
  } else if (odd) {
    b.add(0, 0, a.y());
    b.add(a.mul(a.x(m + 1), a.z()), a.mul(a.x(m), a.z()), 0);
    b.add(a.yz(), a.y(), a.z());
  } else if (q == 0) {
    b.add(0, a.z(), a.z());
    b.add(a.mul(a.x(m), a.yz()), a.mul(a.x(m), a.yz()), 0);
    b.add(a.yz(), 0, a.yz());
  } else {
    b.add(0, 0, a.y());
    b.add(a.mul(a.x(m + 1), a.y()), a.mul(a.x(m), a.y()), 0);
  }
  return checked(l, std::move(b.triples()), 4 * m + 2 * q + k);
}

bool l_star_lengths_tile(const LStarParams& p) {
  check_params(p);
  const int n = p.order(), m = p.m, q = p.q;
  std::vector<int> hits(n + 1, 0);
  ++hits[n];
  ++hits[n - 1];
  if (q == 0) ++hits[4 * m];
  if (q == 1) ++hits[8 * m + 2];
  for (int k = 1 - q; k <= 4 * m + q - 2; ++k) ++hits[4 * m + 2 * q + k];
  for (int len = 0; len <= n; ++len) {
    const bool in_range = len >= min_maximal_length(n);
    if (hits[len] != (in_range ? 1 : 0)) return false;
  }
  return true;
}

PartialTransversal l_star_witness(const LStarParams& p, int length) {
  check_params(p);
  const Alg a{p.cyclic_part()};
  const int n = p.order(), m = p.m, q = p.q, y = a.y();
  if (length < min_maximal_length(n) || length > n)
    throw Error(Errc::length_out_of_range, "length outside [ceil(n/2), n]", length);
  const LatinSquare ls = build_l_star(p);
  const auto budget = SearchBudget::unlimited();

  if (length == n || length == n - 1) {
    // length n: avoid the four turned cells; length n-1: pass through (1,1)
    // but avoid the other three, then drop (1,1,1)
    const bool full = length == n;
    auto col = l_transversal(a, [&](const std::vector<int>& cm) {
      if (full) return cm[0] != 0 && cm[0] != y && cm[y] != 0 && cm[y] != y;
      return cm[0] == 0 && cm[y] != y;
    });
    if (!col) throw Error(Errc::witness_verification_failed, "no suitable transversal of L");
    std::vector<Triple> t;
    for (int r = full ? 0 : 1; r < n; ++r) t.push_back({r, (*col)[r], ls.at(r, (*col)[r])});
    return checked(ls, std::move(t), length);
  }
  if (q == 0 && length == 4 * m) {
    SearchConstraints c;
    Mask block = 0;
    for (int e = 0; e < a.K; ++e) block |= bit(a.idx(2, e)) | bit(a.idx(3, e));
    c.allowed_rows = c.allowed_cols = block;
    SearchResult r = find_partial_transversal(ls, 4 * m, budget, c);
    if (!r.witness) throw Error(Errc::witness_verification_failed, "zH u yzH block has no transversal");
    return checked(ls, r.witness->triples, 4 * m);
  }
  if (q == 1 && length == 8 * m + 2) {
    Builder b(ls);
    for (int i = 1; i <= 2 * m; ++i) {
      b.add(a.x(i), a.x(i), a.x(2 * i));
      b.add(a.mul(a.x(i), a.z()), a.mul(a.x(i), a.yz()), a.mul(a.x(2 * i), a.y()));
      b.add(a.mul(a.x(i), a.yz()), a.mul(a.x(i), a.y()), a.mul(a.x(2 * i), a.z()));
      b.add(a.mul(a.x(i), a.y()), a.mul(a.x(i + 1), a.z()), a.mul(a.x(2 * i + 1), a.yz()));
    }
    b.add(0, 0, a.y());
    b.add(a.y(), a.yz(), a.z());
    return checked(ls, std::move(b.triples()), length);
  }
  return t_kq(p, length - 4 * m - 2 * q);
}

LatinSquare build_m(int m) {
  if (m < 0) throw Error(Errc::precondition, "m must be non-negative", m);
  const int n = 4 * m + 2, h = 2 * m + 1;
  if (n > kMaxOrder) throw Error(Errc::order_too_large, "order exceeds 64", n);
  std::vector<int> grid(n * n);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) {
      grid[i * n + j] = (2 * (i + j)) % n;
      grid[i * n + h + j] = (2 * (i + j) + 1) % n;
      grid[(h + i) * n + j] = (2 * (i + j) + 1) % n;
      grid[(h + i) * n + h + j] = (2 * (i + j) + 2) % n;
    }
  return LatinSquare::validate(n, std::move(grid));
}

LatinSquare build_m_star(int m) {
  const int h = 2 * m + 1;
  return turn_intercalate(build_m(m), 0, h + m, 0, h + m);
}

std::optional<int> congruence_solution(int a, int m) {
  if (m < 1 || a < 0 || a > 4 * m + 1) throw Error(Errc::precondition, "need m >= 1 and 0 <= a <= 4m+1", a);
  if (a % 4 != 2) return std::nullopt;
  return m - (a - 2) / 4;
}

PartialTransversal m_star_witness(int m, int length) {
  if (m < 1) throw Error(Errc::precondition, "M* witnesses need m >= 1", m);
  const LatinSquare l = build_m_star(m);
  const int n = 4 * m + 2, h = 2 * m + 1;
  if (length < 2 * m + 2 || length > n)
    throw Error(Errc::length_out_of_range, "M* witnesses exist for 2m+2 <= length <= 4m+2", length);
  if (length == n) {
    SearchResult r = find_maximal_of_length(l, n, SearchBudget::unlimited());
    if (!r.witness) throw Error(Errc::witness_verification_failed, "M* transversal not found");
    return *r.witness;
  }
  auto md = [h](int i) { return ((i % h) + h) % h; };
  Builder b(l);
  auto A = [&](int i, int j) { b.add_cell(md(i), md(j)); };
  auto B = [&](int i, int j) { b.add_cell(md(i), h + md(j)); };
  auto C = [&](int i, int j) { b.add_cell(h + md(i), md(j)); };
  auto D = [&](int i, int j) { b.add_cell(h + md(i), h + md(j)); };

  if ((length - 2 * m) % 2 == 1) {
    const int k = (length - 2 * m - 3) / 2;
    for (int i = 0; i <= k; ++i) A(i, i + k + 1);
    for (int j = 0; j <= k; ++j) D(j + k + 1, j);
    for (int i = 0; i <= k; ++i) C(i, i);
    for (int j = k + 1; j <= 2 * m; ++j) B(j, j);
    return checked(l, std::move(b.triples()), length);
  }

  const int k = (length - 2 * m - 2) / 2;
  for (int i = 1; i <= k; ++i) C(i, i);
  C(m, 0);
  for (int j = k + 1; j <= 2 * m; ++j) B(j, j);
  B(0, 0);
  const std::size_t outer = b.triples().size();
  if (m % 2 == 0) {
    for (int i = 1; i <= k; ++i) A(i, i + m);
    for (int j = 1; j <= std::min(k, m / 2 - 1); ++j) D(j + m, j);
    for (int j = m / 2; j <= k; ++j) D(j + m + 2, j);
  } else {
    for (int i = 1; i <= std::min(k, (m - 1) / 2); ++i) A(i, i + m);
    for (int j = (m + 1) / 2; j <= k; ++j) A(j, j + m + 1);
    for (int j = 1; j <= std::min(k, (m - 1) / 2); ++j) D(j + m, j);
    for (int i = (m + 1) / 2; i <= k; ++i) D(i + m + 1, i);
  }
  // T' must live on symbols H \ {0}
  for (std::size_t i = outer; i < b.triples().size(); ++i) {
    const int s = b.triples()[i].sym;
    if (s == 0 || s % 2 != 0) throw Error(Errc::witness_verification_failed, "T' symbol outside H \\ {0}", s);
  }
  return checked(l, std::move(b.triples()), length);
}

PartialTransversal every_second_witness(const LatinSquare& l, const SubmatrixWindow& a,
                                        const PartialTransversal& near, int x) {
  const int n = l.order();
  if (n % 2 != 0) throw Error(Errc::precondition, "order must be even");
  const int h = n / 2;
  if (popcount(a.rows) != h || popcount(a.cols) != h || !is_subsquare(l, window(l, a.rows, a.cols)))
    throw Error(Errc::precondition, "window is not a subsquare of order n/2");
  if (x < 1 || 8 * x > n) throw Error(Errc::precondition, "need 1 <= x <= n/8", x);
  const Mask syms = window(l, a.rows, a.cols).symbols;
  if (near.length() != h - 1 || !is_partial_transversal(l, near.triples) || (near.used_rows() & ~a.rows) ||
      (near.used_cols() & ~a.cols))
    throw Error(Errc::precondition, "not a near-transversal of the subsquare");
  const int s = lowest(syms & ~near.used_syms());

  const Mask all = low_bits(n);
  const Mask drows = all & ~a.rows, dcols = all & ~a.cols;
  std::vector<Triple> t;
  Mask rows = 0, cols = 0, used = 0;
  auto take = [&](int r, int c) {
    t.push_back({r, c, l.at(r, c)});
    rows |= bit(r);
    cols |= bit(c);
    used |= bit(l.at(r, c));
  };
  // T' in D: first the cell carrying s, then greedily up to length x
  for (int r : elements_of(drows)) {
    if (!t.empty()) break;
    for (int c : elements_of(dcols))
      if (l.at(r, c) == s) {
        take(r, c);
        break;
      }
  }
  for (int r : elements_of(drows & ~rows)) {
    if (static_cast<int>(t.size()) == x) break;
    for (int c : elements_of(dcols & ~cols))
      if (!has(used, l.at(r, c))) {
        take(r, c);
        break;
      }
  }
  if (static_cast<int>(t.size()) != x) throw Error(Errc::witness_verification_failed, "greedy T' in D fell short");
  for (const Triple& u : near.triples)
    if (!has(used, u.sym)) take(u.row, u.col);
  // one triple of B in each free row of A u B, one of C in each free column
  for (int r : elements_of(a.rows & ~rows)) {
    for (int c : elements_of(dcols & ~cols))
      if (!has(used, l.at(r, c))) {
        take(r, c);
        break;
      }
  }
  for (int c : elements_of(a.cols & ~cols)) {
    for (int r : elements_of(drows & ~rows))
      if (!has(used, l.at(r, c))) {
        take(r, c);
        break;
      }
  }
  return checked(l, std::move(t), h + 2 * x);
}

PartialTransversal three_fifths_witness(const Group& g, const Subgroup& nrm) {
  const int n = g.order();
  if (nrm.order() * 5 != n) throw Error(Errc::precondition, "subgroup does not have index 5");
  if (!is_subgroup(g, nrm.mask()) || !is_normal(g, nrm)) throw Error(Errc::precondition, "subgroup is not normal");
  const Group sub = subgroup_as_group(g, nrm);
  SearchResult r = find_partial_transversal(cayley_table(sub), sub.order(), SearchBudget::unlimited());
  if (!r.witness) throw Error(Errc::precondition, "the normal subgroup's table has no transversal");
  int gen = 0;
  while (nrm.contains(gen)) ++gen;
  std::vector<int> pw(5, 0);
  for (int i = 1; i < 5; ++i) pw[i] = g.mul(pw[i - 1], gen);
  // shaded cells of the Z5 pattern, as (row coset, column coset)
  const int blocks[3][2] = {{2, 3}, {3, 4}, {4, 2}};
  std::vector<Triple> t;
  for (const auto& bl : blocks)
    for (const Triple& u : r.witness->triples) {
      const int row = g.mul(pw[bl[0]], nrm.elements[u.row]);
      const int col = g.mul(nrm.elements[u.col], pw[bl[1]]);
      t.push_back({row, col, g.mul(row, col)});
    }
  return checked(cayley_table(g), std::move(t), 3 * n / 5);
}

LatinSquare exceptional_order8(Order8Example which) {
  if (which == Order8Example::mu8)
    return LatinSquare::validate({{0, 1, 2, 3, 4, 5, 6, 7},
                                  {1, 0, 3, 2, 5, 4, 7, 6},
                                  {2, 3, 0, 1, 6, 7, 4, 5},
                                  {3, 2, 1, 0, 7, 6, 5, 4},
                                  {4, 5, 6, 7, 3, 2, 1, 0},
                                  {5, 4, 7, 6, 0, 1, 2, 3},
                                  {6, 7, 4, 5, 2, 3, 0, 1},
                                  {7, 6, 5, 4, 1, 0, 3, 2}});
  return LatinSquare::validate({{0, 1, 2, 3, 4, 5, 6, 7},
                                {1, 2, 3, 0, 5, 6, 7, 4},
                                {2, 3, 0, 1, 6, 7, 4, 5},
                                {3, 0, 1, 2, 7, 4, 5, 6},
                                {7, 6, 5, 4, 0, 3, 2, 1},
                                {6, 5, 4, 7, 3, 2, 1, 0},
                                {5, 4, 7, 6, 2, 1, 0, 3},
                                {4, 7, 6, 5, 1, 0, 3, 2}});
}

}  // namespace omni
