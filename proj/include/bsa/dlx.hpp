#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace bsa {

// Algorithm X over dancing links. Column choice is minimum remaining values;
// ties and row order are permuted by the seed so restarts explore differently.
class ExactCover {
public:
    explicit ExactCover(int columns);

    int add_row(const std::vector<int>& cols);
    int rows() const { return int(row_cols_.size()); }

    struct Result {
        std::optional<std::vector<int>> rows; // chosen row ids
        std::uint64_t nodes = 0;
        bool budget_hit = false;
    };

    Result solve(std::uint64_t seed, std::uint64_t node_budget) const;

    // restarts with growing budgets until a solution or the total budget is spent
    Result solve_with_restarts(std::uint64_t seed, std::uint64_t total_budget,
                               std::uint64_t first_budget = 2000) const;

private:
    int ncols_;
    std::vector<std::vector<int>> row_cols_;
};

} // namespace bsa
