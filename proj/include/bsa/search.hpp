#pragma once

#include <cstdint>
#include <vector>

#include "bsa/verifier.hpp"

namespace bsa {

// Pair multiplicities a block set must hit exactly: need(a,b) copies of every pair.
class PairTarget {
public:
    explicit PairTarget(int n = 0) : n_(n), need_(std::size_t(n) * std::size_t(n), 0) {}

    int points() const { return n_; }
    int need(int a, int b) const { return need_[std::size_t(a) * std::size_t(n_) + std::size_t(b)]; }
    void set(int a, int b, int m) {
        need_[std::size_t(a) * std::size_t(n_) + std::size_t(b)] = std::uint8_t(m);
        need_[std::size_t(b) * std::size_t(n_) + std::size_t(a)] = std::uint8_t(m);
    }

    // every pair allowed by the descriptor, lambda times
    static PairTarget from_descriptor(const StructureDescriptor& sd);
    // every non-adjacent pair of the grid, lambda times; point = row * c + col
    static PairTarget from_params(const DesignParams& p);

    // necessary conditions for a decomposition into k-sets: every point degree divisible
    // by k-1 and the pair total divisible by k(k-1)/2
    bool divisible(int k) const;

private:
    int n_;
    std::vector<std::uint8_t> need_;
};

// Stinson-style hill climbing for triples: repeatedly joins a point to two of its
// deficient pairs, evicting the block that already holds the third pair. Deterministic
// for a fixed seed; throws BudgetExceeded after `budget` steps.
std::vector<IntBlock> hill_climb_triples(const PairTarget& t, std::uint64_t seed, std::uint64_t budget);

// exact cover of a 0/1 target by k-sets of mutually allowed points (DLX); BudgetExceeded
// when the node budget runs out, NotFound when the search space is exhausted
std::vector<IntBlock> exact_cover_blocks(const PairTarget& t, int k, std::uint64_t seed, std::uint64_t budget);

} // namespace bsa
