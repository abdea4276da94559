#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "bsa/catalog.hpp"
#include "bsa/grid.hpp"
#include "bsa/ingredient_source.hpp"

namespace bsa {

// block multiset repeated t times, lambda scaled by t
Design scale(const Design& d, int t);

// Every translate {a+j, b+j, c+j} of each base triple along one axis of the r x c torus,
// filled with a three-group ingredient: point g * n + x of the ingredient goes to line
// g of the translated triple at position x, where n is the length of the other axis.
std::vector<Block> orbit_fill(const std::vector<std::array<int, 3>>& bases, const std::vector<IntBlock>& ingredient,
                              Axis axis, int r, int c);

// Supplies ingredients to the fills. The default routes 2-BSECs (and QMGDDs with three
// columns, which are 2-BSECs) through construct_2bsec and everything else through
// obtain_ingredient.
using IngredientProvider = std::function<Ingredient(const IngredientSpec&)>;
Ingredient default_ingredient(const IngredientSpec& s);

// 2-BSEC(n, W) from an HGDD of type (n, h_1 h_2 ...), W = sum of hole widths: HGDD groups
// become rows, hole i takes a run of consecutive columns and receives a QMGDD of type
// h_i^n, and every row receives a 1-BSEC(W). Verified before return.
Design fill_hgdd(const Ingredient& hgdd, const IngredientProvider& get = default_ingredient);

// 2-BSEC(r, sum v_i) from an IGDD of type (v_1,2)(v_2,2)...: group i takes a run of v_i
// columns with its two hole points at the ends and receives a 2-BSEC(r, v_i); every IGDD
// block receives an MGDD of type k^r across rows plus one copy per row; the hole points
// receive a GDD of type 2^u grouped by IGDD group (across rows) and another grouped by
// the adjacent pairs {last hole point of group i, first of group i+1} (within rows).
Design fill_igdd(const Ingredient& igdd, int r, const IngredientProvider& get = default_ingredient);

// (3,2)-IGDD of type (c,2)^3 (x,2)^1 from a (4,1)-IGDD of type (c,2)^4 with the last group
// truncated to x points. Needs c >= 6 and 3 <= x <= c.
Ingredient truncate_inflate_igdd(int c, int x, const IngredientProvider& get = default_ingredient);

// 2-BSEC(r, 3c+x, 3, 2) from a 2-BSEC(r, c, 3, 2) and a 2-BSEC(r, x, 3, 2) through the
// truncated IGDD above
Design design_3c_plus_x(int r, int c, int x, const IngredientProvider& get = default_ingredient);

// Formula families built from base blocks, triple partitions and orbit fills.
enum class DirectFamily {
    FourColumns,   // 2-BSEC(r,4,3,2), r = 2 mod 3, r >= 5
    SevenRows,     // 2-BSEC(7,c,3,2), c = 2 mod 6, c >= 8
    OneModSix,     // 2-BSEC(r,c,3,2), r = 1 mod 6, r >= 7, c = 2 mod 6, c >= 8
    FourRowsSix,   // 2-BSEC(4,c,3,6), c = 1 mod 3, c >= 4
};

std::string family_name(DirectFamily f);
// whether (r, c) lies in the family's residue classes
bool family_covers(DirectFamily f, int r, int c);
// PreconditionFail outside the family; the result is verified before return
Design direct_construction(DirectFamily f, int r, int c);

// 2-BSA(3,c,3,1;IS) on Z_3c laid out row by row, c odd >= 9
Design construct_island_3row(int c);

struct Construction {
    Design design;
    std::string route;                 // how the design was built, innermost ingredients included
    std::vector<std::string> failures; // routes tried first that did not succeed
};

// Verified 2-BSEC(r, c, 3, lambda). KnownNonexistent for {r, c} = {3, 4},
// InadmissibleParams when the necessary congruences fail, IngredientUnavailable when no
// route succeeds. Memoized per (r, c, lambda).
Construction construct_2bsec_traced(int r, int c, int lambda);
Design construct_2bsec(int r, int c, int lambda);

} // namespace bsa
