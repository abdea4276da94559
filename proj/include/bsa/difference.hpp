#pragma once

#include <cstdint>
#include <vector>

#include "bsa/grid.hpp"
#include "bsa/verifier.hpp"

namespace bsa {

enum class Step { Fixed, PlusOne };

struct RowColCyclic {
    Step row = Step::PlusOne;
    Step col = Step::PlusOne;
    bool operator==(const RowColCyclic&) const = default;
};

struct BaseEntry {
    Block block;
    int mult = 1;
};

struct BaseBlockFamily {
    int r = 0;
    int c = 0;
    std::vector<BaseEntry> entries;
    RowColCyclic action;

    void add(Block b, int mult = 1) { entries.push_back({std::move(b), mult}); }
};

// full ordered difference multiset, k(k-1) entries, sorted
std::vector<GridPoint> delta(const Block& b, int r, int c);

// target multiset: lambda copies of every difference outside the forbidden set
VerifyReport check_difference_family(const BaseBlockFamily& fam, const DesignParams& params,
                                     ForbiddenVariant v = ForbiddenVariant::Scheme);

// size of the acting group for a RowColCyclic action
std::int64_t orbit_size(int r, int c, const RowColCyclic& a);

std::vector<Block> develop(const BaseBlockFamily& fam);

using Permutation = std::vector<int>;

// cycle notation "(0 6 12)(1 7 13)" over Z_n; unlisted points are fixed
Permutation parse_cycles(const std::string& text, int n);
std::string format_cycles(const Permutation& p);

// every element of the group generated by gens, identity first; throws
// StructureError on a non-bijection and BudgetExceeded past max_order
std::vector<Permutation> generate_group(const std::vector<Permutation>& gens, std::size_t max_order = 100000);

// grid placement of z in Z_{rc}: row z mod r, column z div r
GridPoint zrc_to_grid(int z, int r);
int grid_to_zrc(const GridPoint& p, int r);

// images of each initial block under every group element, mapped to the r x c grid
std::vector<Block> develop_under_group(const std::vector<std::vector<int>>& initial,
                                       const std::vector<Permutation>& gens, int r, int c);

} // namespace bsa
