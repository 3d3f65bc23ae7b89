#pragma once

#include <optional>
#include <vector>

#include "omni/engine.hpp"
#include "omni/latin.hpp"

namespace omni {

class Group;
struct Subgroup;

/// Order n = 8m+4q square built on Z2^2 x Z_{2m+q}. Element index is
/// coset*(2m+q) + e for x^e in coset 1, y, z, yz (cosets 0..3).
struct LStarParams {
  int m = 1;
  int q = 0;

  int order() const { return 8 * m + 4 * q; }
  int cyclic_part() const { return 2 * m + q; }
};

enum class Gen { y, z };

struct TkqParams {
  int k = 0;
  int j = 0;
  Gen w = Gen::y;
  Gen v = Gen::z;
};

/// Throws precondition unless m >= 1 and q is 0 or 1.
void check_params(const LStarParams& p);

/// Index of x^e * (y^a z^b) for a = coset & 1, b = coset >> 1.
int l_star_element(const LStarParams& p, int coset, int e);

/// Cayley table of Z2^2 x Z_{2m+q} in the coset layout above.
LatinSquare build_l(const LStarParams& p);
/// build_l with the intercalate on rows/columns {1, y} turned.
LatinSquare build_l_star(const LStarParams& p);

/// j = floor((k+q-1)/2), w = y for even k, z for odd k.
TkqParams tkq_params(const LStarParams& p, int k);
/// The partial transversal U_w (contained in the H u wH block).
std::vector<Triple> u_w(const LStarParams& p, Gen w);
/// Deterministic j-subset K of U_w. Throws precondition if too few triples
/// meet the avoidance constraints.
std::vector<Triple> choose_k(const LStarParams& p, const TkqParams& t);
/// T_{k,q}, of length 4m+2q+k, for 1-q <= k <= 4m+q-2.
PartialTransversal t_kq(const LStarParams& p, int k);

/// Maximal partial transversal of L* of the given length, verified.
PartialTransversal l_star_witness(const LStarParams& p, int length);

/// True iff the witness families cover [ceil(n/2), n] exactly once.
bool l_star_lengths_tile(const LStarParams& p);

/// Order-(4m+2) isotope of Z_{4m+2} in A/B/C/D block form.
LatinSquare build_m(int m);
/// build_m with a_00, d_mm, b_0m, c_m0 overwritten (an intercalate turn).
LatinSquare build_m_star(int m);

/// Maximal partial transversal of M*_{4m+2} of length 2m+2 <= length <= 4m+2.
PartialTransversal m_star_witness(int m, int length);

/// The unique i in 1..m with 4i + a = 0 (mod 4m+2), if any.
std::optional<int> congruence_solution(int a, int m);

/// Given an order-n/2 subsquare `a`, a near-transversal of it and
/// 1 <= x <= n/8, a maximal partial transversal of length n/2 + 2x.
PartialTransversal every_second_witness(const LatinSquare& l, const SubmatrixWindow& a,
                                        const PartialTransversal& near, int x);

/// Length 3n/5 from a normal subgroup of index 5 whose table has a transversal.
PartialTransversal three_fifths_witness(const Group& g, const Subgroup& nrm);

enum class Order8Example { mu8, two_lengths };

LatinSquare exceptional_order8(Order8Example which);

}  // namespace omni
