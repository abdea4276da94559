#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "bsa/difference.hpp"
#include "bsa/errors.hpp"

using namespace bsa;

namespace {

BaseBlockFamily family(int r, int c, std::vector<std::pair<Block, int>> blocks) {
    BaseBlockFamily f;
    f.r = r;
    f.c = c;
    for (auto& [b, m] : blocks) f.add(b, m);
    return f;
}

// 13 base blocks of the SB plan on Z_11 x Z_4 with lambda 2
BaseBlockFamily sb_11x4() {
    return family(11, 4, {{{{0, 0}, {0, 2}, {5, 3}}, 1}, {{{0, 0}, {1, 1}, {4, 2}}, 1}, {{{0, 0}, {1, 2}, {4, 0}}, 1},
                          {{{0, 0}, {1, 3}, {4, 2}}, 1}, {{{0, 0}, {1, 1}, {4, 0}}, 1}, {{{0, 0}, {1, 2}, {5, 1}}, 1},
                          {{{0, 0}, {1, 3}, {5, 2}}, 1}, {{{0, 0}, {2, 0}, {4, 1}}, 1}, {{{0, 0}, {2, 2}, {4, 1}}, 1},
                          {{{0, 0}, {2, 0}, {5, 0}}, 1}, {{{0, 0}, {2, 1}, {5, 3}}, 1}, {{{0, 0}, {2, 2}, {5, 2}}, 1},
                          {{{0, 0}, {2, 3}, {5, 0}}, 1}});
}

// ordered differences computed directly, without the library
std::multiset<GridPoint> oracle_delta(const Block& b, int r, int c) {
    std::multiset<GridPoint> out;
    for (auto& p : b)
        for (auto& q : b)
            if (!(p == q)) out.insert({((p.row - q.row) % r + r) % r, ((p.col - q.col) % c + c) % c});
    return out;
}

} // namespace

TEST_CASE("delta on small blocks") {
    Block b{{0, 0}, {0, 2}, {1, 6}};
    auto d = delta(b, 3, 9);
    std::vector<GridPoint> want{{0, 2}, {0, 7}, {1, 4}, {1, 6}, {2, 3}, {2, 5}};
    CHECK(d == want);
    CHECK(d.size() == 6);
    CHECK_THROWS_AS(delta({{0, 0}}, 3, 9), DomainError);
    // k(k-1) entries, equal to the direct computation
    Block b4{{0, 0}, {1, 3}, {4, 4}, {2, 1}};
    auto d4 = delta(b4, 5, 6);
    CHECK(d4.size() == 12);
    auto o = oracle_delta(b4, 5, 6);
    CHECK(std::vector<GridPoint>(o.begin(), o.end()) == d4);
}

TEST_CASE("base blocks of the SB plan on Z_11 x Z_4") {
    auto f = sb_11x4();
    DesignParams p{AdjacencyScheme::sb(), 11, 4, 3, 2};
    CHECK(check_difference_family(f, p).ok);
    CHECK(orbit_size(11, 4, f.action) == 44);
    Design d{p, develop(f)};
    CHECK(d.blocks.size() == 572);
    CHECK(verify_bsa(d).ok);

    auto bad = f;
    bad.entries[0].block[2] = {5, 2};
    CHECK_FALSE(check_difference_family(bad, p).ok);
    CHECK_FALSE(verify_bsa({p, develop(bad)}).ok);
}

TEST_CASE("base blocks of the IS plan on Z_3 x Z_9") {
    auto f = family(3, 9, {{{{0, 0}, {0, 2}, {1, 6}}, 1}, {{{0, 0}, {0, 3}, {1, 5}}, 1}, {{{0, 0}, {0, 4}, {1, 7}}, 1}});
    DesignParams p{AdjacencyScheme::is(), 3, 9, 3, 1};
    CHECK(check_difference_family(f, p).ok);
    Design d{p, develop(f)};
    CHECK(d.blocks.size() == 81);
    CHECK(verify_bsa(d).ok);
}

TEST_CASE("QMGDD base blocks") {
    auto q = [](int r, int c, int l, std::vector<std::pair<Block, int>> b) {
        DesignParams p{AdjacencyScheme::sb(), r, c, 3, l};
        auto f = family(r, c, std::move(b));
        auto rep = check_difference_family(f, p, ForbiddenVariant::Qmgdd);
        INFO(rep.summary());
        CHECK(rep.ok);
        CHECK(verify_structured(to_int_blocks(Design{p, develop(f)}), qmgdd_descriptor(r, c, 3, l)).ok);
    };
    q(5, 2, 1, {{{{0, 0}, {1, 1}, {3, 0}}, 1}});
    q(8, 5, 2,
      {{{{0, 0}, {4, 0}, {7, 1}}, 1}, {{{0, 0}, {2, 0}, {6, 2}}, 1}, {{{0, 0}, {2, 0}, {3, 2}}, 1},
       {{{0, 0}, {3, 0}, {5, 2}}, 1}, {{{0, 0}, {3, 0}, {4, 2}}, 1}, {{{0, 0}, {3, 1}, {7, 2}}, 1},
       {{{0, 0}, {1, 1}, {6, 2}}, 1}, {{{0, 0}, {2, 1}, {7, 2}}, 1}, {{{0, 0}, {1, 1}, {3, 2}}, 1},
       {{{0, 0}, {4, 1}, {2, 2}}, 1}, {{{0, 0}, {6, 1}, {5, 2}}, 1}});
    // printed with row and column swapped; transposed here
    std::vector<std::pair<Block, int>> b773{{{{0, 0}, {0, 2}, {0, 4}}, 1}, {{{0, 0}, {0, 3}, {1, 4}}, 1}, {{{0, 0}, {0, 3}, {2, 4}}, 1},
       {{{0, 0}, {0, 2}, {3, 6}}, 1}, {{{0, 0}, {1, 1}, {3, 3}}, 1}, {{{0, 0}, {1, 1}, {3, 2}}, 1},
       {{{0, 0}, {1, 2}, {3, 5}}, 1}, {{{0, 0}, {1, 2}, {3, 4}}, 1}, {{{0, 0}, {1, 3}, {3, 4}}, 1},
       {{{0, 0}, {1, 3}, {3, 6}}, 2}, {{{0, 0}, {1, 5}, {3, 2}}, 1}, {{{0, 0}, {1, 5}, {3, 3}}, 2},
       {{{0, 0}, {1, 2}, {3, 1}}, 1}, {{{0, 0}, {1, 4}, {3, 2}}, 1}, {{{0, 0}, {1, 4}, {3, 1}}, 1},
       {{{0, 0}, {1, 6}, {3, 1}}, 1}, {{{0, 0}, {1, 6}, {3, 5}}, 2}};
    for (auto& [b, m] : b773)
        for (auto& pt : b) std::swap(pt.row, pt.col);
    q(7, 7, 3, b773);
    q(7, 2, 6,
      {{{{0, 0}, {1, 1}, {3, 0}}, 2}, {{{0, 0}, {1, 1}, {3, 1}}, 2}, {{{0, 0}, {1, 1}, {4, 0}}, 2},
       {{{0, 0}, {2, 0}, {4, 1}}, 2}, {{{0, 0}, {2, 0}, {4, 0}}, 1}, {{{0, 0}, {2, 1}, {4, 0}}, 1}});
}

TEST_CASE("development sizes by action") {
    auto f = family(5, 6, {{{{0, 0}, {1, 2}, {3, 4}}, 2}});
    CHECK(develop(f).size() == 60);
    f.action = {Step::Fixed, Step::PlusOne};
    CHECK(orbit_size(5, 6, f.action) == 6);
    CHECK(develop(f).size() == 12);
    f.action = {Step::Fixed, Step::Fixed};
    CHECK(develop(f).size() == 2);
}

TEST_CASE("cycle notation round trip and errors") {
    auto p = parse_cycles("(0 6 12 18 24)(1 7 13 19 25)", 30);
    CHECK(p[24] == 0);
    CHECK(p[2] == 2);
    CHECK(format_cycles(p) == "(0 6 12 18 24)(1 7 13 19 25)");
    CHECK(parse_cycles(format_cycles(p), 30) == p);
    CHECK_THROWS_AS(parse_cycles("(0 1)(1 2)", 5), ParseError);
    CHECK_THROWS_AS(parse_cycles("(0 9)", 5), ParseError);
    CHECK_THROWS_AS(parse_cycles("0 1", 5), ParseError);
    CHECK_THROWS_AS(generate_group({{0, 0, 1}}), StructureError);
}

TEST_CASE("group orders for the Z_rc developments") {
    auto shift = [](int n, int s) {
        Permutation p(std::size_t(n), 0);
        for (int i = 0; i < n; ++i) p[std::size_t(i)] = (i + s) % n;
        return p;
    };
    for (int c : {10, 14, 16, 20, 22}) {
        auto g = generate_group({shift(3 * c, 6)});
        CHECK(g.size() == std::size_t(c / 2));
        CHECK(g.front() == shift(3 * c, 0));
    }
    // rotation of the five rows within each column of Z_50, with a shift by two columns
    Permutation a(50);
    for (int z = 0; z < 50; ++z) a[std::size_t(z)] = (z / 5) * 5 + (z % 5 + 1) % 5;
    auto b = shift(50, 10);
    CHECK(generate_group({a}).size() == 5);
    CHECK(generate_group({a, b}).size() == 25);
    CHECK_THROWS_AS(generate_group({a, b}, 10), BudgetExceeded);

    CHECK(zrc_to_grid(7, 3) == GridPoint{1, 2});
    for (int z = 0; z < 30; ++z) CHECK(grid_to_zrc(zrc_to_grid(z, 5), 5) == z);
    auto blocks = develop_under_group({{0, 20, 25}, {1, 3, 8}}, {shift(30, 6)}, 3, 10);
    CHECK(blocks.size() == 10);
    CHECK(blocks[1] == Block{zrc_to_grid(6, 3), zrc_to_grid(26, 3), zrc_to_grid(1, 3)});
}
