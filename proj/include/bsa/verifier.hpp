#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bsa/grid.hpp"

namespace bsa {

using IntBlock = std::vector<int>;

// point index row * c + col
std::vector<IntBlock> to_int_blocks(const Design& d);

class PairCountTable {
public:
    // dense triangular storage up to this many points, hashed beyond
    static constexpr int kDenseLimit = 4096;

    explicit PairCountTable(int n = 0);

    int points() const { return n_; }
    bool dense() const { return n_ <= kDenseLimit; }
    std::uint32_t get(int a, int b) const;
    void add(int a, int b, std::uint32_t by = 1);
    std::uint64_t total() const;

    // merge another table over the same point set
    void merge(const PairCountTable& o);
    bool operator==(const PairCountTable& o) const;

    std::vector<std::uint32_t>& dense_data() { return tri_; }
    std::size_t index(int a, int b) const; // a < b

private:
    int n_;
    std::vector<std::uint32_t> tri_;
    std::unordered_map<std::uint64_t, std::uint32_t> sparse_;
};

// throws StructureError on a block with wrong size, repeated point or bad index
void check_blocks(int n, const std::vector<IntBlock>& blocks, int k);

// reference implementation, single thread
PairCountTable pair_counts_serial(int n, const std::vector<IntBlock>& blocks, int k);
// OpenMP kernel; identical result to the serial one
PairCountTable pair_counts_parallel(int n, const std::vector<IntBlock>& blocks, int k);

PairCountTable pair_counts(const Design& d);

struct Violation {
    int a = -1, b = -1;        // pair (point indices), or a = block index when b < 0
    std::int64_t expected = 0;
    std::int64_t actual = 0;
    std::string note;
};

struct VerifyReport {
    static constexpr std::size_t kCap = 64;
    bool ok = true;
    std::vector<Violation> violations; // capped at kCap
    std::size_t total_violations = 0;

    void add(Violation v);
    std::string summary() const;
};

VerifyReport verify_bsa(const Design& d);

enum class StructureKind { GDD, IGDD, MGDD, HGDD, QMGDD };

struct StructureDescriptor {
    StructureKind kind = StructureKind::GDD;
    int points = 0;
    int k = 3;
    int lambda = 1;
    std::vector<int> group;  // group id per point
    std::vector<int> hole;   // hole id per point (MGDD/HGDD), empty otherwise
    std::vector<char> in_y;  // IGDD hole membership, empty otherwise
    int qm_rows = 0;         // QMGDD: point = row * qm_cols + col
    int qm_cols = 0;

    // throws StructureError when internally inconsistent
    void validate() const;
    bool forbidden(int a, int b) const;
};

StructureDescriptor gdd_descriptor(const std::vector<int>& group_sizes, int k, int lambda);
// IGDD type (v_1,h_1)... given as (group size, points in hole) per group; hole points
// are the first h_i points of each group
StructureDescriptor igdd_descriptor(const std::vector<std::pair<int, int>>& groups, int k, int lambda);
// MGDD of type c^r: point = row * c + col, groups = rows, holes = columns
StructureDescriptor mgdd_descriptor(int r, int c, int k, int lambda);
// HGDD of type (n, h_1 h_2 ...): point = group * W + col, W = sum of hole widths,
// hole i owns the columns [off_i, off_i + h_i)
StructureDescriptor hgdd_descriptor(int n, const std::vector<int>& hole_widths, int k, int lambda);
// QMGDD of type c^r: point = row * c + col
StructureDescriptor qmgdd_descriptor(int r, int c, int k, int lambda);

VerifyReport verify_structured(const std::vector<IntBlock>& blocks, const StructureDescriptor& sd);

enum class SearchOutcome { NoDesign, FoundDesign, BudgetExceeded };

struct NonexistenceResult {
    SearchOutcome outcome = SearchOutcome::BudgetExceeded;
    std::optional<Design> design;
    std::uint64_t nodes = 0;
};

// complete backtracking; branches on the lexicographically least deficient pair
NonexistenceResult exhaustive_nonexistence(const DesignParams& p, std::uint64_t node_budget);

struct CountingArgument {
    std::int64_t blocks_by_count = 0; // total blocks, 14 lambda
    std::int64_t blocks_by_pairs = 0; // x1+x3 plus x2+x4, 18 lambda
    bool contradiction = false;
};

CountingArgument counting_argument_4x3(int lambda);

} // namespace bsa
