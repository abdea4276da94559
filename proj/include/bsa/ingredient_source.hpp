#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bsa/search.hpp"
#include "bsa/verifier.hpp"

namespace bsa {

enum class IngredientKind { GDD, IGDD, MGDD, HGDD, QMGDD, BSEC1D, BSEC2D };

// A small design used as a building block. Point layouts:
//   GDD    groups laid out one after another in `sizes` order
//   IGDD   as igdd_descriptor over `vh`
//   MGDD   type m^n: point = row * m + col, n rows
//   HGDD   type (n, sizes): point = group * W + col, as hgdd_descriptor
//   QMGDD  type m^n: point = row * m + col, n rows
//   BSEC1D circular Z_n, adjacent units excluded
//   BSEC2D SB grid n x m, point = row * m + col
struct IngredientSpec {
    IngredientKind kind = IngredientKind::GDD;
    int k = 3;
    int lambda = 1;
    int n = 0;
    int m = 0;
    std::vector<int> sizes;               // GDD group sizes or HGDD hole widths
    std::vector<std::pair<int, int>> vh;  // IGDD (group size, points in the hole)

    int points() const;
    bool operator==(const IngredientSpec&) const = default;
};

IngredientSpec gdd_spec(std::vector<int> sizes, int k, int lambda);
IngredientSpec igdd_spec(std::vector<std::pair<int, int>> vh, int k, int lambda);
IngredientSpec mgdd_spec(int rows, int cols, int k, int lambda);
IngredientSpec hgdd_spec(int n, std::vector<int> hole_widths, int k, int lambda);
IngredientSpec qmgdd_spec(int rows, int cols, int k, int lambda);
IngredientSpec bsec1d_spec(int n, int k, int lambda);
IngredientSpec bsec2d_spec(int r, int c, int k, int lambda);

// "hgdd (7,2^5) k=3 lambda=6", "gdd 2^4 k=3 lambda=2", "bsec2d 5x7 k=3 lambda=1", ...
std::string canonical_key(const IngredientSpec& s);
IngredientSpec parse_spec(std::string_view text);

// the pairs the ingredient must cover, lambda times
PairTarget pair_target(const IngredientSpec& s);
VerifyReport verify_ingredient(const IngredientSpec& s, const std::vector<IntBlock>& blocks);

// known existence conditions for the spec's family of designs; when none
// applies, only the divisibility conditions are checked. `why` names the failure.
bool spec_admissible(const IngredientSpec& s, std::string* why = nullptr);

struct Ingredient {
    IngredientSpec spec;
    std::vector<IntBlock> blocks;
    std::string provenance; // "catalog:<id>", "formula:<name>", "search:seed=<s>", with " x<t>" when repeated
};

// Seeded search for a verified instance, at exactly the spec's lambda. InadmissibleSpec
// when the existence conditions fail, BudgetExceeded when the search gives up.
Ingredient search_ingredient(const IngredientSpec& s, std::uint64_t seed, std::uint64_t budget);

// Priority: catalog, closed form, persistent cache, search. The lambda is reduced to the
// smallest admissible divisor and the result repeated. Results are memoized in process.
// Throws IngredientUnavailable (naming the spec) when every source fails.
Ingredient obtain_ingredient(const IngredientSpec& s, std::uint64_t seed = 0);

// default step budget for a search of this spec
std::uint64_t default_search_budget(const IngredientSpec& s);

// cache directory from BSA_CACHE_DIR, if set
std::optional<std::string> cache_dir();

} // namespace bsa
