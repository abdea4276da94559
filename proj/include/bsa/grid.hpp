#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bsa {

struct GridPoint {
    int row = 0;
    int col = 0;
    auto operator<=>(const GridPoint&) const = default;
};

enum class SchemeKind { RowColumn, SharingBorder, Island, OneDim };

struct AdjacencyScheme {
    SchemeKind kind = SchemeKind::SharingBorder;
    int m = 0; // radius, OneDim only

    static AdjacencyScheme rc() { return {SchemeKind::RowColumn, 0}; }
    static AdjacencyScheme sb() { return {SchemeKind::SharingBorder, 0}; }
    static AdjacencyScheme is() { return {SchemeKind::Island, 0}; }
    static AdjacencyScheme one_dim(int m);

    bool operator==(const AdjacencyScheme&) const = default;
};

std::string scheme_name(const AdjacencyScheme& s);
// accepts rc, sb, is, 1d, 1d:m
AdjacencyScheme parse_scheme(const std::string& s);

struct DesignParams {
    AdjacencyScheme scheme;
    int r = 0;
    int c = 0;
    int k = 3;
    int lambda = 1;

    // throws DomainError on shapes the toolkit rejects
    void validate() const;
    int points() const { return r * c; }
    bool operator==(const DesignParams&) const = default;
};

using Block = std::vector<GridPoint>;

struct Design {
    DesignParams params;
    std::vector<Block> blocks;
};

// sorts points inside every block, then sorts the block list
void canonicalize(Design& d);

// toroidal difference q - p
GridPoint diff(const GridPoint& q, const GridPoint& p, int r, int c);

bool adjacent(const AdjacencyScheme& s, const GridPoint& p, const GridPoint& q, int r, int c);

enum class ForbiddenVariant { Scheme, Qmgdd };

// differences (including (0,0)) a difference family must avoid; sorted
std::vector<GridPoint> forbidden_difference_set(const AdjacencyScheme& s, int r, int c,
                                                ForbiddenVariant v = ForbiddenVariant::Scheme);

// number of unordered non-adjacent pairs
std::int64_t nonadjacent_pairs(const DesignParams& p);
std::int64_t expected_block_count(const DesignParams& p);

enum class Admissibility { Admissible, DivisibilityFail, KnownNonexistent };

struct AdmissibilityReport {
    Admissibility status = Admissibility::Admissible;
    std::string failed;       // which congruence failed
    bool known_exception = false; // congruences pass but a listed exception applies
    std::string note;
    std::optional<int> minimal_lambda;
};

AdmissibilityReport admissibility(const DesignParams& p);

// congruence conditions only, no exceptions
bool congruences_hold(const DesignParams& p, std::string* failed = nullptr);

std::string to_string(Admissibility a);

} // namespace bsa
