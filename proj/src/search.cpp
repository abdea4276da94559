#include "bsa/search.hpp"

#include <array>
#include <map>
#include <random>

#include "bsa/dlx.hpp"
#include "bsa/errors.hpp"

namespace bsa {

PairTarget PairTarget::from_descriptor(const StructureDescriptor& sd) {
    sd.validate();
    PairTarget t(sd.points);
    for (int a = 0; a < sd.points; ++a)
        for (int b = a + 1; b < sd.points; ++b)
            if (!sd.forbidden(a, b)) t.set(a, b, sd.lambda);
    return t;
}

PairTarget PairTarget::from_params(const DesignParams& p) {
    p.validate();
    const int n = p.points();
    PairTarget t(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!adjacent(p.scheme, {a / p.c, a % p.c}, {b / p.c, b % p.c}, p.r, p.c)) t.set(a, b, p.lambda);
    return t;
}

bool PairTarget::divisible(int k) const {
    std::int64_t total = 0;
    for (int a = 0; a < n_; ++a) {
        std::int64_t deg = 0;
        for (int b = 0; b < n_; ++b) deg += need(a, b);
        if (deg % (k - 1) != 0) return false;
        total += deg;
    }
    total /= 2;
    return total % (k * (k - 1) / 2) == 0;
}

namespace {

class Climber {
public:
    Climber(const PairTarget& t, std::uint64_t seed) : t_(t), n_(t.points()), rng_(seed) {
        rem_.resize(std::size_t(n_) * std::size_t(n_));
        def_.assign(std::size_t(n_), 0);
        holders_.resize(std::size_t(n_) * std::size_t(n_));
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) {
                rem_[idx(a, b)] = t.need(a, b);
                def_[std::size_t(a)] += t.need(a, b);
                if (a < b) deficit_ += t.need(a, b);
            }
    }

    bool done() const { return deficit_ == 0; }

    void step() {
        int x = live_point();
        cand_.clear();
        for (int b = 0; b < n_; ++b)
            if (rem_[idx(x, b)] > 0) cand_.push_back(b);
        int y = cand_[pick(cand_.size())];
        zs_.clear();
        for (int z : cand_)
            if (z != y && t_.need(y, z) > 0) zs_.push_back(z);
        int z;
        bool neutral = false;
        if (zs_.empty()) {
            // neutral move: pair x with a deficient partner of y, evicting the block on {x,z}
            for (int w = 0; w < n_; ++w)
                if (w != x && rem_[idx(y, w)] > 0 && t_.need(x, w) > 0) zs_.push_back(w);
            neutral = !zs_.empty();
        }
        if (neutral) {
            z = zs_[pick(zs_.size())];
            evict(x, z);
        } else if (zs_.empty()) {
            // free an x-z pair held by some block so that z becomes available
            for (int w = 0; w < n_; ++w)
                if (w != y && w != x && t_.need(x, w) > 0 && t_.need(y, w) > 0) zs_.push_back(w);
            if (zs_.empty()) return;
            z = zs_[pick(zs_.size())];
            if (rem_[idx(x, z)] == 0) evict(x, z);
        } else {
            z = zs_[pick(zs_.size())];
        }
        if (rem_[idx(y, z)] == 0) evict(y, z);
        add({x, y, z});
    }

    std::vector<IntBlock> blocks() const {
        std::vector<IntBlock> out;
        for (std::size_t s = 0; s < slots_.size(); ++s)
            if (alive_[s]) out.push_back({slots_[s][0], slots_[s][1], slots_[s][2]});
        return out;
    }

private:
    std::size_t idx(int a, int b) const { return std::size_t(a) * std::size_t(n_) + std::size_t(b); }
    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

    int live_point() {
        for (int tries = 0; tries < 4 * n_; ++tries) {
            int x = int(pick(std::size_t(n_)));
            if (def_[std::size_t(x)] > 0) return x;
        }
        std::vector<int> live;
        for (int x = 0; x < n_; ++x)
            if (def_[std::size_t(x)] > 0) live.push_back(x);
        return live[pick(live.size())];
    }

    void touch(int a, int b, int by) {
        rem_[idx(a, b)] -= by;
        rem_[idx(b, a)] -= by;
        def_[std::size_t(a)] -= by;
        def_[std::size_t(b)] -= by;
        deficit_ -= by;
    }

    void add(std::array<int, 3> b) {
        int s;
        if (free_.empty()) {
            s = int(slots_.size());
            slots_.push_back(b);
            alive_.push_back(1);
        } else {
            s = free_.back();
            free_.pop_back();
            slots_[std::size_t(s)] = b;
            alive_[std::size_t(s)] = 1;
        }
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                touch(b[std::size_t(i)], b[std::size_t(j)], 1);
                holders_[key(b[std::size_t(i)], b[std::size_t(j)])].push_back(s);
            }
    }

    std::size_t key(int a, int b) const { return a < b ? idx(a, b) : idx(b, a); }

    // removes a random block holding the pair {a,b}
    void evict(int a, int b) {
        auto& h = holders_[key(a, b)];
        int s = h[pick(h.size())];
        auto blk = slots_[std::size_t(s)];
        alive_[std::size_t(s)] = 0;
        free_.push_back(s);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                touch(blk[std::size_t(i)], blk[std::size_t(j)], -1);
                auto& v = holders_[key(blk[std::size_t(i)], blk[std::size_t(j)])];
                for (std::size_t q = 0; q < v.size(); ++q)
                    if (v[q] == s) {
                        v[q] = v.back();
                        v.pop_back();
                        break;
                    }
            }
    }

    const PairTarget& t_;
    int n_;
    std::mt19937_64 rng_;
    std::vector<int> rem_;
    std::vector<int> def_;
    std::int64_t deficit_ = 0;
    std::vector<std::array<int, 3>> slots_;
    std::vector<char> alive_;
    std::vector<int> free_;
    std::vector<std::vector<int>> holders_;
    std::vector<int> cand_, zs_;
};

void gather_sets(const PairTarget& t, int k, std::vector<int>& cur, int from, std::vector<IntBlock>& out) {
    if (int(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int p = from; p < t.points(); ++p) {
        bool ok = true;
        for (int q : cur)
            if (t.need(q, p) == 0) {
                ok = false;
                break;
            }
        if (!ok) continue;
        cur.push_back(p);
        gather_sets(t, k, cur, p + 1, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<IntBlock> hill_climb_triples(const PairTarget& t, std::uint64_t seed, std::uint64_t budget) {
    if (!t.divisible(3)) throw InadmissibleSpec("pair target cannot be split into triples");
    Climber c(t, seed);
    for (std::uint64_t s = 0; !c.done(); ++s) {
        if (s >= budget) throw BudgetExceeded("hill climbing used " + std::to_string(budget) + " steps");
        c.step();
    }
    return c.blocks();
}

std::vector<IntBlock> exact_cover_blocks(const PairTarget& t, int k, std::uint64_t seed, std::uint64_t budget) {
    if (!t.divisible(k)) throw InadmissibleSpec("pair target cannot be split into blocks of this size");
    std::map<std::pair<int, int>, int> col;
    for (int a = 0; a < t.points(); ++a)
        for (int b = a + 1; b < t.points(); ++b) {
            if (t.need(a, b) > 1) throw DomainError("exact cover needs a 0/1 pair target");
            if (t.need(a, b) == 1) col.emplace(std::make_pair(a, b), int(col.size()));
        }
    std::vector<IntBlock> sets;
    std::vector<int> cur;
    gather_sets(t, k, cur, 0, sets);
    ExactCover ec(int(col.size()));
    for (const auto& s : sets) {
        std::vector<int> cols;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) cols.push_back(col.at({s[std::size_t(i)], s[std::size_t(j)]}));
        ec.add_row(cols);
    }
    auto res = ec.solve_with_restarts(seed, budget);
    if (!res.rows) {
        if (res.budget_hit) throw BudgetExceeded("exact cover used " + std::to_string(res.nodes) + " nodes");
        throw NotFound("no exact cover exists");
    }
    std::vector<IntBlock> out;
    for (int r : *res.rows) out.push_back(sets[std::size_t(r)]);
    return out;
}

} // namespace bsa
