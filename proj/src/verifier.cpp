#include "bsa/verifier.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bsa/errors.hpp"

namespace bsa {

std::vector<IntBlock> to_int_blocks(const Design& d) {
    std::vector<IntBlock> out;
    out.reserve(d.blocks.size());
    const int r = d.params.r, c = d.params.c;
    for (const auto& b : d.blocks) {
        IntBlock ib;
        ib.reserve(b.size());
        for (const auto& p : b) {
            if (p.row < 0 || p.row >= r || p.col < 0 || p.col >= c)
                throw StructureError("point out of bounds");
            ib.push_back(p.row * c + p.col);
        }
        out.push_back(std::move(ib));
    }
    return out;
}

PairCountTable::PairCountTable(int n) : n_(n) {
    if (dense()) tri_.assign(std::size_t(n) * (n > 0 ? n - 1 : 0) / 2, 0);
}

std::size_t PairCountTable::index(int a, int b) const {
    // row-major upper triangle without the diagonal
    return std::size_t(a) * (2 * std::size_t(n_) - a - 1) / 2 + (b - a - 1);
}

static std::uint64_t key(int a, int b) { return (std::uint64_t(a) << 32) | std::uint32_t(b); }

std::uint32_t PairCountTable::get(int a, int b) const {
    if (a > b) std::swap(a, b);
    if (dense()) return tri_[index(a, b)];
    auto it = sparse_.find(key(a, b));
    return it == sparse_.end() ? 0 : it->second;
}

void PairCountTable::add(int a, int b, std::uint32_t by) {
    if (a > b) std::swap(a, b);
    if (dense())
        tri_[index(a, b)] += by;
    else
        sparse_[key(a, b)] += by;
}

std::uint64_t PairCountTable::total() const {
    std::uint64_t t = 0;
    if (dense())
        for (auto v : tri_) t += v;
    else
        for (const auto& kv : sparse_) t += kv.second;
    return t;
}

void PairCountTable::merge(const PairCountTable& o) {
    if (o.n_ != n_) throw StructureError("merging pair tables over different point sets");
    if (dense()) {
        for (std::size_t i = 0; i < tri_.size(); ++i) tri_[i] += o.tri_[i];
    } else {
        for (const auto& kv : o.sparse_) sparse_[kv.first] += kv.second;
    }
}

bool PairCountTable::operator==(const PairCountTable& o) const {
    if (n_ != o.n_) return false;
    if (dense()) return tri_ == o.tri_;
    auto nonzero = [](const std::unordered_map<std::uint64_t, std::uint32_t>& m) {
        std::size_t c = 0;
        for (const auto& kv : m) c += kv.second != 0;
        return c;
    };
    if (nonzero(sparse_) != nonzero(o.sparse_)) return false;
    for (const auto& kv : sparse_)
        if (kv.second != 0 && o.get(int(kv.first >> 32), int(kv.first & 0xffffffffu)) != kv.second)
            return false;
    return true;
}

void check_blocks(int n, const std::vector<IntBlock>& blocks, int k) {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        if (int(b.size()) != k)
            throw StructureError("block " + std::to_string(i) + " has size " +
                                 std::to_string(b.size()) + ", expected " + std::to_string(k));
        for (std::size_t x = 0; x < b.size(); ++x) {
            if (b[x] < 0 || b[x] >= n) throw StructureError("block " + std::to_string(i) + " out of range");
            for (std::size_t y = x + 1; y < b.size(); ++y)
                if (b[x] == b[y])
                    throw StructureError("block " + std::to_string(i) + " repeats a point");
        }
    }
}

PairCountTable pair_counts_serial(int n, const std::vector<IntBlock>& blocks, int k) {
    check_blocks(n, blocks, k);
    PairCountTable t(n);
    for (const auto& b : blocks)
        for (std::size_t x = 0; x < b.size(); ++x)
            for (std::size_t y = x + 1; y < b.size(); ++y) t.add(b[x], b[y]);
    return t;
}

PairCountTable pair_counts_parallel(int n, const std::vector<IntBlock>& blocks, int k) {
    check_blocks(n, blocks, k);
    PairCountTable t(n);
    const long nb = long(blocks.size());
    if (t.dense()) {
        auto& data = t.dense_data();
#pragma omp parallel for schedule(static)
        for (long i = 0; i < nb; ++i) {
            const auto& b = blocks[std::size_t(i)];
            for (std::size_t x = 0; x < b.size(); ++x)
                for (std::size_t y = x + 1; y < b.size(); ++y) {
                    int a = b[x], c = b[y];
                    if (a > c) std::swap(a, c);
                    std::size_t idx = t.index(a, c);
#pragma omp atomic
                    data[idx] += 1;
                }
        }
        return t;
    }
    // hashed storage: per-thread partial tables merged at the end
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::vector<PairCountTable> parts(std::size_t(threads), PairCountTable{n});
#pragma omp parallel
    {
        int tid = 0;
#ifdef _OPENMP
        tid = omp_get_thread_num();
#endif
        auto& mine = parts[std::size_t(tid)];
#pragma omp for schedule(static)
        for (long i = 0; i < nb; ++i) {
            const auto& b = blocks[std::size_t(i)];
            for (std::size_t x = 0; x < b.size(); ++x)
                for (std::size_t y = x + 1; y < b.size(); ++y) mine.add(b[x], b[y]);
        }
    }
    for (const auto& p : parts) t.merge(p);
    return t;
}

PairCountTable pair_counts(const Design& d) {
    return pair_counts_parallel(d.params.r * d.params.c, to_int_blocks(d), d.params.k);
}

void VerifyReport::add(Violation v) {
    ok = false;
    ++total_violations;
    if (violations.size() < kCap) violations.push_back(std::move(v));
}

std::string VerifyReport::summary() const {
    if (ok) return "ok";
    std::ostringstream os;
    os << total_violations << " violation(s)";
    for (std::size_t i = 0; i < violations.size() && i < 8; ++i) {
        const auto& v = violations[i];
        os << "; ";
        if (!v.note.empty()) os << v.note << " ";
        if (v.b >= 0) os << "pair {" << v.a << "," << v.b << "}";
        os << " expected " << v.expected << " actual " << v.actual;
    }
    return os.str();
}

VerifyReport verify_bsa(const Design& d) {
    VerifyReport rep;
    const auto& p = d.params;
    try {
        p.validate();
    } catch (const Error& e) {
        rep.add({-1, -1, 0, 0, std::string("bad parameters: ") + e.what()});
        return rep;
    }
    const int r = p.r, c = p.c, n = r * c;
    PairCountTable t;
    try {
        t = pair_counts_parallel(n, to_int_blocks(d), p.k);
    } catch (const StructureError& e) {
        rep.add({-1, -1, 0, 0, std::string("malformed: ") + e.what()});
        return rep;
    }
    // adjacency by difference, precomputed once
    std::vector<char> adj_diff(std::size_t(n), 0);
    for (const auto& q : forbidden_difference_set(p.scheme, r, c)) adj_diff[std::size_t(q.row * c + q.col)] = 1;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            GridPoint dd = diff({b / c, b % c}, {a / c, a % c}, r, c);
            std::int64_t want = adj_diff[std::size_t(dd.row * c + dd.col)] ? 0 : p.lambda;
            std::int64_t got = t.get(a, b);
            if (got != want) rep.add({a, b, want, got, want == 0 ? "adjacent pair covered" : "pair count"});
        }
    try {
        std::int64_t want = expected_block_count(p);
        if (std::int64_t(d.blocks.size()) != want)
            rep.add({-1, -1, want, std::int64_t(d.blocks.size()), "block count"});
    } catch (const InadmissibleCount& e) {
        rep.add({-1, -1, 0, std::int64_t(d.blocks.size()), e.what()});
    }
    return rep;
}

bool StructureDescriptor::forbidden(int a, int b) const {
    if (a == b) return true;
    if (kind == StructureKind::QMGDD) {
        int ra = a / qm_cols, ca = a % qm_cols, rb = b / qm_cols, cb = b % qm_cols;
        if (ra == rb) return true;
        if (ca != cb) return false;
        int dr = ((rb - ra) % qm_rows + qm_rows) % qm_rows;
        return dr == 1 || dr == qm_rows - 1;
    }
    if (group[std::size_t(a)] == group[std::size_t(b)]) return true;
    if (!hole.empty() && hole[std::size_t(a)] >= 0 && hole[std::size_t(a)] == hole[std::size_t(b)]) return true;
    if (!in_y.empty() && in_y[std::size_t(a)] && in_y[std::size_t(b)]) return true;
    return false;
}

void StructureDescriptor::validate() const {
    if (points < 0 || k < 2 || lambda < 1) throw StructureError("bad descriptor parameters");
    if (kind == StructureKind::QMGDD) {
        if (qm_rows < 1 || qm_cols < 1 || qm_rows * qm_cols != points)
            throw StructureError("QMGDD shape does not match point count");
        return;
    }
    if (int(group.size()) != points) throw StructureError("group labels do not cover the points");
    if (kind == StructureKind::MGDD || kind == StructureKind::HGDD) {
        if (int(hole.size()) != points) throw StructureError("hole labels do not cover the points");
        // |H ∩ G| must not depend on G
        std::map<std::pair<int, int>, int> meet;
        std::set<int> groups(group.begin(), group.end()), holes(hole.begin(), hole.end());
        for (int i = 0; i < points; ++i) ++meet[{hole[std::size_t(i)], group[std::size_t(i)]}];
        for (int h : holes) {
            int first = -1;
            for (int g : groups) {
                auto it = meet.find({h, g});
                int m = it == meet.end() ? 0 : it->second;
                if (first < 0) first = m;
                if (m != first || m == 0) throw StructureError("hole meets groups unevenly");
                if (kind == StructureKind::MGDD && m != 1) throw StructureError("MGDD hole must meet each group once");
            }
        }
    } else if (!hole.empty()) {
        throw StructureError("holes only apply to MGDD/HGDD");
    }
    if (kind == StructureKind::IGDD) {
        if (int(in_y.size()) != points) throw StructureError("IGDD hole flags do not cover the points");
    } else if (!in_y.empty()) {
        throw StructureError("hole Y only applies to IGDD");
    }
}

StructureDescriptor gdd_descriptor(const std::vector<int>& group_sizes, int k, int lambda) {
    StructureDescriptor sd;
    sd.kind = StructureKind::GDD;
    sd.k = k;
    sd.lambda = lambda;
    for (std::size_t g = 0; g < group_sizes.size(); ++g)
        for (int i = 0; i < group_sizes[g]; ++i) sd.group.push_back(int(g));
    sd.points = int(sd.group.size());
    return sd;
}

StructureDescriptor igdd_descriptor(const std::vector<std::pair<int, int>>& groups, int k, int lambda) {
    StructureDescriptor sd;
    sd.kind = StructureKind::IGDD;
    sd.k = k;
    sd.lambda = lambda;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].second > groups[g].first) throw StructureError("IGDD hole larger than group");
        for (int i = 0; i < groups[g].first; ++i) {
            sd.group.push_back(int(g));
            sd.in_y.push_back(i < groups[g].second ? 1 : 0);
        }
    }
    sd.points = int(sd.group.size());
    return sd;
}

StructureDescriptor mgdd_descriptor(int r, int c, int k, int lambda) {
    StructureDescriptor sd;
    sd.kind = StructureKind::MGDD;
    sd.k = k;
    sd.lambda = lambda;
    sd.points = r * c;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            sd.group.push_back(i);
            sd.hole.push_back(j);
        }
    return sd;
}

StructureDescriptor hgdd_descriptor(int n, const std::vector<int>& hole_widths, int k, int lambda) {
    StructureDescriptor sd;
    sd.kind = StructureKind::HGDD;
    sd.k = k;
    sd.lambda = lambda;
    for (int g = 0; g < n; ++g)
        for (std::size_t h = 0; h < hole_widths.size(); ++h)
            for (int i = 0; i < hole_widths[h]; ++i) {
                sd.group.push_back(g);
                sd.hole.push_back(int(h));
            }
    sd.points = int(sd.group.size());
    return sd;
}

StructureDescriptor qmgdd_descriptor(int r, int c, int k, int lambda) {
    StructureDescriptor sd;
    sd.kind = StructureKind::QMGDD;
    sd.k = k;
    sd.lambda = lambda;
    sd.points = r * c;
    sd.qm_rows = r;
    sd.qm_cols = c;
    return sd;
}

VerifyReport verify_structured(const std::vector<IntBlock>& blocks, const StructureDescriptor& sd) {
    sd.validate();
    VerifyReport rep;
    PairCountTable t;
    try {
        t = pair_counts_parallel(sd.points, blocks, sd.k);
    } catch (const StructureError& e) {
        rep.add({-1, -1, 0, 0, std::string("malformed: ") + e.what()});
        return rep;
    }
    for (int a = 0; a < sd.points; ++a)
        for (int b = a + 1; b < sd.points; ++b) {
            std::int64_t want = sd.forbidden(a, b) ? 0 : sd.lambda;
            std::int64_t got = t.get(a, b);
            if (got != want) rep.add({a, b, want, got, want == 0 ? "related pair covered" : "pair count"});
        }
    return rep;
}

NonexistenceResult exhaustive_nonexistence(const DesignParams& p, std::uint64_t node_budget) {
    p.validate();
    const int r = p.r, c = p.c, n = r * c, k = p.k, lam = p.lambda;
    if (n > 64) throw PreconditionFail("exhaustive search is limited to 64 points");
    auto adj = [&](int a, int b) { return adjacent(p.scheme, {a / c, a % c}, {b / c, b % c}, r, c); };
    std::vector<std::vector<char>> forb(std::size_t(n), std::vector<char>(std::size_t(n), 1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) forb[std::size_t(a)][std::size_t(b)] = adj(a, b) ? 1 : 0;

    // all admissible k-subsets, lexicographic
    std::vector<IntBlock> cands;
    IntBlock cur;
    auto gen = [&](auto&& self, int start) -> void {
        if (int(cur.size()) == k) {
            cands.push_back(cur);
            return;
        }
        for (int x = start; x < n; ++x) {
            bool okp = true;
            for (int y : cur) okp = okp && !forb[std::size_t(y)][std::size_t(x)];
            if (!okp) continue;
            cur.push_back(x);
            self(self, x + 1);
            cur.pop_back();
        }
    };
    gen(gen, 0);
    // candidates containing each pair
    std::vector<std::vector<int>> by_pair(std::size_t(n * n));
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const auto& b = cands[i];
        for (int x = 0; x < k; ++x)
            for (int y = x + 1; y < k; ++y) by_pair[std::size_t(b[std::size_t(x)] * n + b[std::size_t(y)])].push_back(int(i));
    }
    std::vector<int> cnt(std::size_t(n * n), 0);
    std::vector<int> chosen;
    NonexistenceResult res;
    bool budget_hit = false;

    auto fits = [&](const IntBlock& b) {
        for (int x = 0; x < k; ++x)
            for (int y = x + 1; y < k; ++y)
                if (cnt[std::size_t(b[std::size_t(x)] * n + b[std::size_t(y)])] >= lam) return false;
        return true;
    };
    auto apply = [&](const IntBlock& b, int d) {
        for (int x = 0; x < k; ++x)
            for (int y = x + 1; y < k; ++y) cnt[std::size_t(b[std::size_t(x)] * n + b[std::size_t(y)])] += d;
    };
    auto rec_free = [&](auto&& self) -> bool {
        if (++res.nodes > node_budget) {
            budget_hit = true;
            return false;
        }
        int pa = -1, pb = -1;
        for (int a = 0; a < n && pa < 0; ++a)
            for (int b = a + 1; b < n; ++b)
                if (!forb[std::size_t(a)][std::size_t(b)] && cnt[std::size_t(a * n + b)] < lam) {
                    pa = a;
                    pb = b;
                    break;
                }
        if (pa < 0) return true;
        for (int ci : by_pair[std::size_t(pa * n + pb)]) {
            const auto& b = cands[std::size_t(ci)];
            if (!fits(b)) continue;
            apply(b, 1);
            chosen.push_back(ci);
            if (self(self)) return true;
            chosen.pop_back();
            apply(b, -1);
            if (budget_hit) return false;
        }
        return false;
    };
    bool found = rec_free(rec_free);
    if (found) {
        Design d;
        d.params = p;
        for (int ci : chosen) {
            Block b;
            for (int x : cands[std::size_t(ci)]) b.push_back({x / c, x % c});
            d.blocks.push_back(b);
        }
        canonicalize(d);
        res.outcome = SearchOutcome::FoundDesign;
        res.design = std::move(d);
    } else {
        res.outcome = budget_hit ? SearchOutcome::BudgetExceeded : SearchOutcome::NoDesign;
    }
    return res;
}

CountingArgument counting_argument_4x3(int lambda) {
    if (lambda < 1) throw DomainError("lambda must be >= 1");
    const int r = 4, c = 3;
    DesignParams p{AdjacencyScheme::sb(), r, c, 3, lambda};
    CountingArgument out;
    out.blocks_by_count = expected_block_count(p);
    // rows 0,2 and rows 1,3 are never adjacent; every block uses three distinct rows
    // (two points of one row are always row-adjacent when c = 3), so each block holds
    // exactly one pair from one of these two row pairs
    for (auto [ra, rb] : {std::pair{0, 2}, std::pair{1, 3}}) {
        std::int64_t pairs = 0;
        for (int x = 0; x < c; ++x)
            for (int y = 0; y < c; ++y)
                if (!adjacent(p.scheme, {ra, x}, {rb, y}, r, c)) ++pairs;
        out.blocks_by_pairs += pairs * lambda;
    }
    out.contradiction = out.blocks_by_count != out.blocks_by_pairs;
    return out;
}

} // namespace bsa
