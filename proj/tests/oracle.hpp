#pragma once

// Brute-force pair counting written independently of the library verifier.

#include <cstdlib>
#include <map>
#include <utility>

#include "bsa/grid.hpp"

namespace oracle {

inline int torus_dist(int a, int b, int n) {
    int d = std::abs(a - b) % n;
    return std::min(d, n - d);
}

// SB: same cell or one of the four orthogonal neighbours; IS adds the diagonals
inline bool near(const bsa::GridPoint& p, const bsa::GridPoint& q, int r, int c, bool diagonals) {
    const int dr = torus_dist(p.row, q.row, r), dc = torus_dist(p.col, q.col, c);
    if (dr == 0 && dc == 0) return true;
    if (dr + dc == 1) return true;
    return diagonals && dr == 1 && dc == 1;
}

// every block of size k, no two near points in a block, every other pair exactly lambda times
inline bool balanced(const bsa::Design& d, bool diagonals) {
    const int r = d.params.r, c = d.params.c;
    std::map<std::pair<int, int>, int> cnt;
    for (const auto& b : d.blocks) {
        if (int(b.size()) != d.params.k) return false;
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j) {
                if (near(b[i], b[j], r, c, diagonals)) return false;
                const int x = b[i].row * c + b[i].col, y = b[j].row * c + b[j].col;
                cnt[{std::min(x, y), std::max(x, y)}]++;
            }
    }
    for (int x = 0; x < r * c; ++x)
        for (int y = x + 1; y < r * c; ++y) {
            const bsa::GridPoint p{x / c, x % c}, q{y / c, y % c};
            const int want = near(p, q, r, c, diagonals) ? 0 : d.params.lambda;
            auto it = cnt.find({x, y});
            if ((it == cnt.end() ? 0 : it->second) != want) return false;
        }
    return true;
}

inline bool sb_balanced(const bsa::Design& d) { return balanced(d, false); }
inline bool is_balanced(const bsa::Design& d) { return balanced(d, true); }

} // namespace oracle
