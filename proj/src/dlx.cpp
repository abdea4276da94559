#include "bsa/dlx.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace bsa {

ExactCover::ExactCover(int columns) : ncols_(columns) {}

int ExactCover::add_row(const std::vector<int>& cols) {
    for (int c : cols)
        if (c < 0 || c >= ncols_) throw std::out_of_range("exact cover column");
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (std::size_t j = i + 1; j < cols.size(); ++j)
            if (cols[i] == cols[j]) throw std::invalid_argument("exact cover row repeats a column");
    row_cols_.push_back(cols);
    return int(row_cols_.size()) - 1;
}

namespace {

struct Links {
    // node 0 is the root, nodes 1..ncols are column headers
    std::vector<int> L, R, U, D, C, row;
    std::vector<int> size;

    int add_node(int col, int r) {
        int id = int(L.size());
        L.push_back(id);
        R.push_back(id);
        U.push_back(U[std::size_t(col)]);
        D.push_back(col);
        C.push_back(col);
        row.push_back(r);
        D[std::size_t(U[std::size_t(col)])] = id;
        U[std::size_t(col)] = id;
        ++size[std::size_t(col)];
        return id;
    }

    void cover(int c) {
        L[std::size_t(R[std::size_t(c)])] = L[std::size_t(c)];
        R[std::size_t(L[std::size_t(c)])] = R[std::size_t(c)];
        for (int i = D[std::size_t(c)]; i != c; i = D[std::size_t(i)])
            for (int j = R[std::size_t(i)]; j != i; j = R[std::size_t(j)]) {
                U[std::size_t(D[std::size_t(j)])] = U[std::size_t(j)];
                D[std::size_t(U[std::size_t(j)])] = D[std::size_t(j)];
                --size[std::size_t(C[std::size_t(j)])];
            }
    }

    void uncover(int c) {
        for (int i = U[std::size_t(c)]; i != c; i = U[std::size_t(i)])
            for (int j = L[std::size_t(i)]; j != i; j = L[std::size_t(j)]) {
                ++size[std::size_t(C[std::size_t(j)])];
                U[std::size_t(D[std::size_t(j)])] = j;
                D[std::size_t(U[std::size_t(j)])] = j;
            }
        L[std::size_t(R[std::size_t(c)])] = c;
        R[std::size_t(L[std::size_t(c)])] = c;
    }
};

} // namespace

ExactCover::Result ExactCover::solve(std::uint64_t seed, std::uint64_t node_budget) const {
    std::mt19937_64 rng(seed);
    Links x;
    const int n = ncols_;
    x.L.resize(std::size_t(n + 1));
    x.R.resize(std::size_t(n + 1));
    x.U.resize(std::size_t(n + 1));
    x.D.resize(std::size_t(n + 1));
    x.C.resize(std::size_t(n + 1));
    x.row.assign(std::size_t(n + 1), -1);
    x.size.assign(std::size_t(n + 1), 0);
    for (int i = 0; i <= n; ++i) {
        x.L[std::size_t(i)] = i == 0 ? n : i - 1;
        x.R[std::size_t(i)] = i == n ? 0 : i + 1;
        x.U[std::size_t(i)] = x.D[std::size_t(i)] = x.C[std::size_t(i)] = i;
    }
    std::vector<int> order(row_cols_.size());
    std::iota(order.begin(), order.end(), 0);
    if (seed != 0) std::shuffle(order.begin(), order.end(), rng);
    for (int r : order) {
        int first = -1;
        for (int c : row_cols_[std::size_t(r)]) {
            int id = x.add_node(c + 1, r);
            if (first < 0) {
                first = id;
            } else {
                x.L[std::size_t(id)] = x.L[std::size_t(first)];
                x.R[std::size_t(id)] = first;
                x.R[std::size_t(x.L[std::size_t(first)])] = id;
                x.L[std::size_t(first)] = id;
            }
        }
    }

    Result res;
    std::vector<int> sol;
    std::vector<int> ties;
    auto search = [&](auto&& self) -> bool {
        if (x.R[0] == 0) return true;
        if (++res.nodes > node_budget) {
            res.budget_hit = true;
            return false;
        }
        int best = -1, bs = 1 << 30;
        ties.clear();
        for (int c = x.R[0]; c != 0; c = x.R[std::size_t(c)]) {
            int s = x.size[std::size_t(c)];
            if (s < bs) {
                bs = s;
                best = c;
                ties.assign(1, c);
            } else if (s == bs) {
                ties.push_back(c);
            }
        }
        if (bs == 0) return false;
        if (seed != 0 && ties.size() > 1) best = ties[rng() % ties.size()];
        x.cover(best);
        for (int i = x.D[std::size_t(best)]; i != best; i = x.D[std::size_t(i)]) {
            sol.push_back(x.row[std::size_t(i)]);
            for (int j = x.R[std::size_t(i)]; j != i; j = x.R[std::size_t(j)]) x.cover(x.C[std::size_t(j)]);
            if (self(self)) return true;
            for (int j = x.L[std::size_t(i)]; j != i; j = x.L[std::size_t(j)]) x.uncover(x.C[std::size_t(j)]);
            sol.pop_back();
            if (res.budget_hit) break;
        }
        x.uncover(best);
        return false;
    };
    if (search(search)) {
        std::sort(sol.begin(), sol.end());
        res.rows = sol;
    }
    return res;
}

ExactCover::Result ExactCover::solve_with_restarts(std::uint64_t seed, std::uint64_t total_budget,
                                                   std::uint64_t first_budget) const {
    Result out;
    std::uint64_t spent = 0, budget = first_budget;
    std::uint64_t s = seed;
    while (spent < total_budget) {
        std::uint64_t b = std::min(budget, total_budget - spent);
        Result r = solve(s, b);
        spent += r.nodes;
        if (r.rows) {
            r.nodes = spent;
            return r;
        }
        if (!r.budget_hit) { // exhausted: no solution exists
            out.nodes = spent;
            return out;
        }
        budget += budget / 2;
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        if (s == 0) s = 1;
    }
    out.nodes = spent;
    out.budget_hit = true;
    return out;
}

} // namespace bsa
