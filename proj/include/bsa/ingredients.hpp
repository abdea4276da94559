#pragma once

#include <cstdint>
#include <vector>

#include "bsa/verifier.hpp"

namespace bsa {

// Small three-group designs used to fill triple orbits. Points are (g, x) with
// group g in {0,1,2} and position x in [0, n), encoded as g * n + x.

// (3,1)-GDD of type n^3: {(0,x),(1,y),(2,x+y mod n)}
std::vector<IntBlock> td3_gdd(int n);

// idempotent Latin square of order n != 2: closed form for odd n, exact-cover
// search for even n
std::vector<std::vector<int>> idempotent_latin_square(int n, std::uint64_t seed = 0);

// (3,1)-MGDD of type n^3; the hole of (g, x) is x. Throws IngredientUnavailable for n = 2.
std::vector<IntBlock> mgdd3(int n);

// (3,1)-HGDD of type (3, 2^u) on positions [0, 2u); the hole of position p is p mod u.
// Built as the product of an idempotent Latin square of order u with Z_2.
std::vector<IntBlock> hgdd3_pairs(int u);

} // namespace bsa
