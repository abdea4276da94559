#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bsa/difference.hpp"
#include "bsa/grid.hpp"
#include "bsa/verifier.hpp"

namespace bsa {

// blocks developed over Z_r x Z_c by a row/column action
struct DevelopPart {
    RowColCyclic action;
    std::vector<BaseEntry> blocks;
};

// integer blocks on Z_rc developed under the group generated by the permutations
struct PermGenPart {
    std::vector<std::string> generators; // cycle notation, kept verbatim
    std::vector<std::pair<std::vector<int>, int>> blocks;
};

enum class FillKind { Gdd, Mgdd, HgddPairs };
enum class Axis { Row, Col };

// every translate T + j of each base triple along one axis, filled with a three-group
// ingredient whose groups are the three lines of T
struct OrbitFillPart {
    FillKind kind = FillKind::Gdd;
    Axis axis = Axis::Col;
    std::vector<std::array<int, 3>> bases;
    // optional triple source: "zc-seq <d> <m>" or "hand <name>"
    std::optional<std::string> triples;
};

struct CatalogPart {
    int mult = 1;
    std::variant<DevelopPart, PermGenPart, OrbitFillPart> body;
};

struct CatalogEntry {
    std::string id;
    DesignParams params;
    bool qmgdd = false; // params describe a QMGDD of type c^r rather than a 2-BSA
    std::vector<CatalogPart> parts;
};

CatalogEntry parse_entry(std::string_view text);
std::string serialize_entry(const CatalogEntry& e);

// every entry compiled into the library, sorted by id
const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& id);

struct CatalogMatch {
    const CatalogEntry* entry = nullptr;
    bool transposed = false;
};

// exact parameter match; for the symmetric schemes (c, r) is tried as well
std::optional<CatalogMatch> lookup(const DesignParams& p);

// blocks of the entry, multiplicities expanded; IngredientUnavailable if a fill cannot be built
Design realize(const CatalogEntry& e);
// realize, then transpose when the match was found with rows and columns swapped
Design realize(const CatalogMatch& m);

Design transpose(const Design& d);

// verify_bsa for 2-BSA entries, verify_structured for QMGDD entries
VerifyReport verify_entry(const CatalogEntry& e, const Design& d);

struct CatalogFilter {
    std::optional<std::string> kind; // "sb", "rc", "is", "qmgdd"
    std::optional<int> r, c, k, lambda;
};
std::vector<std::string> list_entries(const CatalogFilter& f = {});

std::string entry_kind(const CatalogEntry& e);

} // namespace bsa
