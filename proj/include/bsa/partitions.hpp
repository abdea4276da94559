#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace bsa {

enum class SumRule {
    SumEq,          // a + b = c
    SumEqOrZeroMod, // a + b = c or a + b + c = 0 mod v
    SumEqMod,       // a + b = c mod v
};

using Triple = std::array<int, 3>;

struct TriplePartition {
    std::vector<int> ground; // sorted
    std::vector<Triple> triples;
    SumRule rule = SumRule::SumEq;
    int v = 0;
};

bool triple_ok(const Triple& t, SumRule rule, int v);
bool verify_triples(const TriplePartition& p);

// relabels each triple into the first permutation (lexicographic) that satisfies the rule
void canonical_roles(TriplePartition& p);

std::string format_triples(const TriplePartition& p);

// every element of [lo, hi] minus the listed exclusions
std::vector<int> interval_minus(int lo, int hi, const std::vector<int>& excluded = {});

// exact cover of `ground` by rule-satisfying triples; NotFound when none exists,
// BudgetExceeded when the node budget runs out first
TriplePartition search_partition(const std::vector<int>& ground, SumRule rule, int v,
                                 std::uint64_t seed = 0, std::uint64_t budget = 50'000'000);

// v = 6x+5 (x >= 2) or v = 6x+7 (x >= 3); a + b = c or a + b + c = v
TriplePartition bryant_partition(int v, std::uint64_t seed = 0);
bool bryant_admissible(int v);

// [d, d+3m] minus {k+d+m-1}, a + b = c
bool zc_se_admissible(int d, int m, int k);
TriplePartition zc_se_partition(int d, int m, int k, std::uint64_t seed = 0);

// [d, d+3m-1], a + b = c
bool zc_seq_admissible(int d, int m);
TriplePartition zc_seq_partition(int d, int m, std::uint64_t seed = 0);

// [2, (3c-1)/2] minus {c-1, c, c+1}, a + b = c or a + b + c = 0 mod 3c
TriplePartition island_partition(int c);
// how island_partition(c) was obtained: "table", "family" or "search"
std::string island_partition_source(int c);
// the closed-form family for c >= 23 by c mod 8, unverified; empty if c is not covered
TriplePartition island_family(int c);

// printed partitions used verbatim by the direct constructions
struct HandCase {
    std::string name;
    TriplePartition partition;
};
const std::vector<HandCase>& hand_cases();
const HandCase& hand_case(const std::string& name);

} // namespace bsa
