#include "doctest.h"

#include <random>

#include "bsa/errors.hpp"
#include "bsa/verifier.hpp"

using namespace bsa;

namespace {

// the 12 blocks {(0,i),(1,i+1),(2,i+2)}, ... of the 3^4 MGDD, i in Z_3
Design mgdd_3x4() {
    Design d;
    d.params = {AdjacencyScheme::rc(), 4, 3, 3, 1};
    for (int i = 0; i < 3; ++i) {
        d.blocks.push_back({{0, i}, {1, (i + 1) % 3}, {2, (i + 2) % 3}});
        d.blocks.push_back({{0, i}, {1, (i + 2) % 3}, {3, (i + 1) % 3}});
        d.blocks.push_back({{0, i}, {2, (i + 1) % 3}, {3, (i + 2) % 3}});
        d.blocks.push_back({{1, i}, {2, (i + 2) % 3}, {3, (i + 1) % 3}});
    }
    return d;
}

} // namespace

TEST_CASE("pair counts: empty design and mass conservation") {
    Design e;
    e.params = {AdjacencyScheme::sb(), 5, 5, 3, 3};
    auto t = pair_counts(e);
    CHECK(t.total() == 0);

    auto d = mgdd_3x4();
    auto t2 = pair_counts(d);
    CHECK(t2.total() == d.blocks.size() * 3);
}

TEST_CASE("serial and parallel pair counts agree, dense and hashed") {
    std::mt19937 rng(7);
    for (int n : {30, 5000}) {
        std::vector<IntBlock> blocks;
        for (int i = 0; i < 3000; ++i) {
            IntBlock b;
            while (b.size() < 3) {
                int x = int(rng() % unsigned(n));
                if (std::find(b.begin(), b.end(), x) == b.end()) b.push_back(x);
            }
            blocks.push_back(b);
        }
        auto s = pair_counts_serial(n, blocks, 3);
        auto p = pair_counts_parallel(n, blocks, 3);
        CHECK(s == p);
        CHECK(s.total() == 9000);
    }
}

TEST_CASE("malformed blocks raise StructureError") {
    CHECK_THROWS_AS(pair_counts_serial(5, {{0, 1}}, 3), StructureError);
    CHECK_THROWS_AS(pair_counts_serial(5, {{0, 1, 1}}, 3), StructureError);
    CHECK_THROWS_AS(pair_counts_serial(5, {{0, 1, 7}}, 3), StructureError);
}

TEST_CASE("verify_bsa on the 3^4 MGDD as an RC plan") {
    auto d = mgdd_3x4();
    CHECK(verify_bsa(d).ok);
    auto bad = d;
    bad.params.lambda = 2;
    auto rep = verify_bsa(bad);
    CHECK_FALSE(rep.ok);
    // every non-adjacent pair (12*6/2 = 36) plus the block count
    CHECK(rep.total_violations == 37);
    CHECK(rep.violations.front().expected == 2);
    CHECK(rep.violations.front().actual == 1);
    auto drop = d;
    drop.blocks.pop_back();
    CHECK_FALSE(verify_bsa(drop).ok);
}

TEST_CASE("verify_bsa is invariant under translation and additive in lambda") {
    auto d = mgdd_3x4();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 3; ++b) {
            auto t = d;
            for (auto& blk : t.blocks)
                for (auto& p : blk) p = {(p.row + a) % 4, (p.col + b) % 3};
            CHECK(verify_bsa(t).ok);
        }
    auto u = d;
    u.blocks.insert(u.blocks.end(), d.blocks.begin(), d.blocks.end());
    u.params.lambda = 2;
    CHECK(verify_bsa(u).ok);
}

TEST_CASE("verify_structured on a transversal-design GDD and as MGDD") {
    // {(0,i),(1,j),(2,i+j)} over Z_5: GDD of type 5^3
    std::vector<IntBlock> blocks;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) blocks.push_back({i, 5 + j, 10 + (i + j) % 5});
    CHECK(verify_structured(blocks, gdd_descriptor({5, 5, 5}, 3, 1)).ok);
    CHECK_FALSE(verify_structured(blocks, gdd_descriptor({5, 5, 5}, 3, 2)).ok);

    auto d = mgdd_3x4();
    auto sd = mgdd_descriptor(4, 3, 3, 1);
    CHECK(verify_structured(to_int_blocks(d), sd).ok);
}

TEST_CASE("descriptor consistency") {
    auto sd = mgdd_descriptor(4, 3, 3, 1);
    sd.hole[0] = 2;
    CHECK_THROWS_AS(sd.validate(), StructureError);
    auto h = hgdd_descriptor(3, {2, 2, 2}, 3, 1);
    CHECK_NOTHROW(h.validate());
    CHECK(h.points == 18);
    auto g = igdd_descriptor({{6, 2}, {6, 2}, {6, 2}, {3, 2}}, 3, 2);
    CHECK(g.points == 21);
    CHECK(g.forbidden(0, 6));  // both in the hole
    CHECK(!g.forbidden(0, 8)); // hole point and non-hole point of another group
}

TEST_CASE("QMGDD relation") {
    auto sd = qmgdd_descriptor(5, 2, 3, 1);
    CHECK(sd.forbidden(0, 1));      // same row
    CHECK(sd.forbidden(0, 2));      // rows 0 and 1, same column
    CHECK(sd.forbidden(0, 8));      // rows 0 and 4, same column
    CHECK_FALSE(sd.forbidden(0, 3)); // rows 0 and 1, different column
    CHECK_FALSE(sd.forbidden(0, 4)); // rows 0 and 2
    // {(0,0),(1,1),(3,0)} developed over Z_5 x Z_2
    std::vector<IntBlock> blocks;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 2; ++j)
            blocks.push_back({(i % 5) * 2 + j, ((i + 1) % 5) * 2 + (j + 1) % 2, ((i + 3) % 5) * 2 + j});
    CHECK(verify_structured(blocks, sd).ok);
}

TEST_CASE("exhaustive nonexistence on the 4x3 torus") {
    auto r1 = exhaustive_nonexistence({AdjacencyScheme::sb(), 4, 3, 3, 1}, 50'000'000);
    CHECK(r1.outcome == SearchOutcome::NoDesign);
    auto r2 = exhaustive_nonexistence({AdjacencyScheme::sb(), 4, 3, 3, 2}, 50'000'000);
    CHECK(r2.outcome == SearchOutcome::NoDesign);
    auto r3 = exhaustive_nonexistence({AdjacencyScheme::sb(), 3, 3, 3, 1}, 50'000'000);
    REQUIRE(r3.outcome == SearchOutcome::FoundDesign);
    CHECK(verify_bsa(*r3.design).ok);
    auto r4 = exhaustive_nonexistence({AdjacencyScheme::sb(), 4, 3, 3, 2}, 10);
    CHECK(r4.outcome == SearchOutcome::BudgetExceeded);
}

TEST_CASE("counting argument on the 4x3 torus") {
    for (int l = 1; l <= 7; ++l) {
        auto c = counting_argument_4x3(l);
        CHECK(c.blocks_by_count == 14 * l);
        CHECK(c.blocks_by_pairs == 18 * l);
        CHECK(c.contradiction);
    }
}
