#pragma once

#include <optional>
#include <vector>

#include "omni/bits.hpp"
#include "omni/group.hpp"
#include "omni/latin.hpp"

namespace omni {

/// Rows X, columns Y of a Cayley table and the product set Z = XY.
struct ProductWindow {
  Mask x = 0;
  Mask y = 0;
  Mask z = 0;

  int m() const { return popcount(z); }
};

Mask product_set(const Group& g, Mask x, Mask y);
ProductWindow product_window(const Group& g, Mask x, Mask y);

/// {h : hZ = Z}
Subgroup stabilizer(const Group& g, Mask z);

/// |X+Y| >= |X| + |Y| - |stab(X+Y)|. Abelian groups only.
bool kneser_check(const Group& g, Mask x, Mask y);

enum class OlsonCase { absorbing, bounded };

/// Which disjunct holds for Z = XY: XZ = Z, or |Z| >= |X|/2 + |Y|.
/// Requires 0 in X; throws witness-verification-failed if neither holds.
OlsonCase olson_check(const Group& g, Mask x, Mask y);

/// Rows X+H, columns Y+H with H = stab(X+Y), when that is an m x m subsquare.
std::optional<SubmatrixWindow> extend_abelian(const Group& g, Mask x, Mask y);

/// Translates X by (min X)^-1 and uses H = <X>: rows a^-1 H, columns aZ.
std::optional<SubmatrixWindow> extend_general(const Group& g, Mask x, Mask y);

/// Rows H, columns H u gH.
ProductWindow counterexample_ex41(const Group& g, const Subgroup& h, int elem);
/// Rows H u gH, columns H u g^-1 H.
ProductWindow counterexample_ex42(const Group& g, const Subgroup& h, int elem);

/// Ryser's condition: each of the n symbols occurs at least rows+cols-n
/// times. Throws malformed on ragged input, out-of-range symbols or a
/// repeat within a row or column.
bool ryser_embeddable(const std::vector<std::vector<int>>& r, int n);

}  // namespace omni
