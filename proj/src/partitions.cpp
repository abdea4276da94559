#include "bsa/partitions.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "bsa/dlx.hpp"
#include "bsa/embedded.hpp"
#include "bsa/errors.hpp"

namespace bsa {

static int pmod(long a, int v) {
    long x = a % v;
    return int(x < 0 ? x + v : x);
}

static bool roles_ok(int a, int b, int c, SumRule rule, int v) {
    switch (rule) {
    case SumRule::SumEq: return a + b == c;
    case SumRule::SumEqOrZeroMod: return a + b == c || pmod(long(a) + b + c, v) == 0;
    case SumRule::SumEqMod: return pmod(long(a) + b - c, v) == 0;
    }
    return false;
}

bool triple_ok(const Triple& t, SumRule rule, int v) {
    Triple s = t;
    std::sort(s.begin(), s.end());
    do {
        if (roles_ok(s[0], s[1], s[2], rule, v)) return true;
    } while (std::next_permutation(s.begin(), s.end()));
    return false;
}

bool verify_triples(const TriplePartition& p) {
    if (p.rule != SumRule::SumEq && p.v <= 0) return false;
    std::vector<int> used;
    for (const auto& t : p.triples) {
        if (!triple_ok(t, p.rule, p.v)) return false;
        used.insert(used.end(), t.begin(), t.end());
    }
    std::sort(used.begin(), used.end());
    std::vector<int> g = p.ground;
    std::sort(g.begin(), g.end());
    return used == g; // also rules out repeats inside and across triples
}

void canonical_roles(TriplePartition& p) {
    for (auto& t : p.triples) {
        Triple s = t;
        std::sort(s.begin(), s.end());
        do {
            if (roles_ok(s[0], s[1], s[2], p.rule, p.v)) {
                t = s;
                break;
            }
        } while (std::next_permutation(s.begin(), s.end()));
    }
    std::sort(p.triples.begin(), p.triples.end());
}

std::string format_triples(const TriplePartition& p) {
    std::string out;
    for (const auto& t : p.triples) {
        if (!out.empty()) out += ' ';
        out += "{" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "}";
    }
    return out;
}

std::vector<int> interval_minus(int lo, int hi, const std::vector<int>& excluded) {
    std::vector<int> out;
    for (int x = lo; x <= hi; ++x)
        if (std::find(excluded.begin(), excluded.end(), x) == excluded.end()) out.push_back(x);
    return out;
}

TriplePartition search_partition(const std::vector<int>& ground, SumRule rule, int v, std::uint64_t seed,
                                 std::uint64_t budget) {
    TriplePartition p;
    p.ground = ground;
    std::sort(p.ground.begin(), p.ground.end());
    p.rule = rule;
    p.v = v;
    if (p.ground.size() % 3 != 0) throw NotFound("ground set size not divisible by 3");
    if (std::adjacent_find(p.ground.begin(), p.ground.end()) != p.ground.end())
        throw PreconditionFail("ground set has repeated elements");
    std::map<int, int> col;
    for (int x : p.ground) col.emplace(x, int(col.size()));
    ExactCover ec(int(col.size()));
    std::vector<Triple> rows;
    const auto& g = p.ground;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            if (rule == SumRule::SumEq) {
                auto it = col.find(g[i] + g[j]);
                if (it == col.end() || g[i] + g[j] == g[j]) continue;
                rows.push_back({g[i], g[j], g[i] + g[j]});
                ec.add_row({col[g[i]], col[g[j]], it->second});
                continue;
            }
            for (std::size_t l = j + 1; l < g.size(); ++l) {
                Triple t{g[i], g[j], g[l]};
                if (!triple_ok(t, rule, v)) continue;
                rows.push_back(t);
                ec.add_row({int(i), int(j), int(l)});
            }
        }
    auto res = ec.solve_with_restarts(seed, budget);
    if (!res.rows) {
        if (res.budget_hit) throw BudgetExceeded("triple partition search hit its node budget");
        throw NotFound("no triple partition of the ground set exists");
    }
    for (int r : *res.rows) p.triples.push_back(rows[std::size_t(r)]);
    canonical_roles(p);
    return p;
}

bool bryant_admissible(int v) {
    if (v % 6 == 5) return (v - 5) / 6 >= 2;
    if (v % 6 == 1) return (v - 7) / 6 >= 3;
    return false;
}

TriplePartition bryant_partition(int v, std::uint64_t seed) {
    if (!bryant_admissible(v))
        throw PreconditionFail("bryant partition needs v = 6x+5 with x >= 2 or v = 6x+7 with x >= 3");
    std::vector<std::vector<int>> grounds;
    if (v % 6 == 5) {
        int x = (v - 5) / 6;
        grounds.push_back(interval_minus(3, 3 * x + 2));
        auto g = interval_minus(3, 3 * x + 1);
        g.push_back(3 * x + 3);
        grounds.push_back(g);
    } else {
        int x = (v - 7) / 6;
        grounds.push_back(interval_minus(4, 3 * x + 3));
        auto g = interval_minus(4, 3 * x + 2);
        g.push_back(3 * x + 4);
        grounds.push_back(g);
    }
    for (const auto& g : grounds) {
        try {
            return search_partition(g, SumRule::SumEqOrZeroMod, v, seed);
        } catch (const NotFound&) {
        }
    }
    throw NotFound("no bryant partition for v = " + std::to_string(v));
}

bool zc_se_admissible(int d, int m, int k) {
    if (d < 1 || d > 4 || m < 0) return false;
    if (m == 0) return true;
    auto odd = [](int x) { return ((x % 2) + 2) % 2; };
    bool cong = false;
    switch (m % 4) {
    case 0: cong = odd(k) == 1; break;
    case 1: cong = odd(k) == odd(d); break;
    case 2: cong = odd(k) == 0; break;
    case 3: cong = odd(k) == odd(d + 1); break;
    }
    if (!cong || m < 2 * d - 3) return false;
    // the excluded element must lie inside [d, d+3m] for a partition into m triples to exist
    if (k + m - 1 < 0 || k + m - 1 > 3 * m) return false;
    // (m/2)(2d-1-m)+1 <= k <= (m/2)(m-2d+5)+1, compared at doubled scale
    long lo2 = long(m) * (2 * d - 1 - m) + 2, hi2 = long(m) * (m - 2 * d + 5) + 2;
    return 2L * k >= lo2 && 2L * k <= hi2;
}

TriplePartition zc_se_partition(int d, int m, int k, std::uint64_t seed) {
    if (!zc_se_admissible(d, m, k))
        throw PreconditionFail("zc-se partition: (d,m,k) = (" + std::to_string(d) + "," + std::to_string(m) +
                               "," + std::to_string(k) + ") outside the admissible range");
    if (m == 0) return TriplePartition{{}, {}, SumRule::SumEq, 0};
    return search_partition(interval_minus(d, d + 3 * m, {k + d + m - 1}), SumRule::SumEq, 0, seed);
}

bool zc_seq_admissible(int d, int m) {
    if (d < 1 || m < 1) return false; // d = 0 would need the degenerate triple {0,x,x}
    int mm = m % 4, dd = d % 2;
    bool cong = (mm == 0 && dd == 1) || (mm == 1 && dd == 1) || (mm == 0 && dd == 0) || (mm == 3 && dd == 0);
    return cong && m >= 2 * d - 1;
}

TriplePartition zc_seq_partition(int d, int m, std::uint64_t seed) {
    if (!zc_seq_admissible(d, m))
        throw PreconditionFail("zc-seq partition: (d,m) = (" + std::to_string(d) + "," + std::to_string(m) +
                               ") outside the admissible range");
    return search_partition(interval_minus(d, d + 3 * m - 1), SumRule::SumEq, 0, seed);
}

namespace {

Triple parse_triple(const std::string& tok) {
    Triple t{};
    char a, b, c, e;
    std::istringstream is(tok);
    if (!(is >> a >> t[0] >> b >> t[1] >> c >> t[2] >> e) || a != '{' || b != ',' || c != ',' || e != '}')
        throw ParseError("bad triple " + tok);
    return t;
}

SumRule parse_rule(const std::string& s) {
    if (s == "sum-eq") return SumRule::SumEq;
    if (s == "sum-eq-or-zero-mod") return SumRule::SumEqOrZeroMod;
    if (s == "sum-eq-mod") return SumRule::SumEqMod;
    throw ParseError("bad rule " + s);
}

struct PartitionData {
    std::map<int, TriplePartition> island;
    std::vector<HandCase> hand;
};

const PartitionData& data() {
    static const PartitionData d = [] {
        PartitionData out;
        std::istringstream in{std::string(embedded_file("partitions.txt"))};
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            std::string kind;
            ls >> kind;
            TriplePartition p;
            std::string name;
            if (kind == "island") {
                int c;
                ls >> c;
                p.rule = SumRule::SumEqOrZeroMod;
                p.v = 3 * c;
                name = std::to_string(c);
            } else if (kind == "hand") {
                std::string rule;
                ls >> name >> rule >> p.v;
                p.rule = parse_rule(rule);
            } else {
                throw ParseError("partitions.txt: unknown line " + line);
            }
            std::string tok;
            while (ls >> tok) p.triples.push_back(parse_triple(tok));
            for (const auto& t : p.triples) p.ground.insert(p.ground.end(), t.begin(), t.end());
            std::sort(p.ground.begin(), p.ground.end());
            if (kind == "island")
                out.island[std::stoi(name)] = p;
            else
                out.hand.push_back({name, p});
        }
        return out;
    }();
    return d;
}

// exact division, asserted: the residue class guarantees it
int q(long num, int den) {
    if (num % den != 0) throw Error("island family: inexact division");
    return int(num / den);
}

void run(std::vector<Triple>& out, int a0, int b0, int c0, int last, int skip, int step_a = 2) {
    for (int i = 0; i <= last; ++i)
        if (i != skip) out.push_back({a0 + step_a * i, b0 - i, c0 + i});
}

} // namespace

TriplePartition island_family(int c) {
    TriplePartition p;
    p.rule = SumRule::SumEqOrZeroMod;
    p.v = 3 * c;
    p.ground = interval_minus(2, (3 * c - 1) / 2, {c - 1, c, c + 1});
    auto& t = p.triples;
    const long C = c;
    switch (c % 8) {
    case 1:
        if (c < 33) return {};
        run(t, 4, q(3 * C - 11, 4), q(3 * C + 5, 4), q(C - 21, 4), q(C - 17, 8));
        run(t, 5, q(5 * C - 5, 4), q(5 * C + 15, 4), q(C - 17, 4), q(C - 33, 8));
        t.push_back({2, q(5 * C + 3, 4), q(5 * C + 11, 4)});
        t.push_back({3, q(C - 9, 2), q(C - 3, 2)});
        t.push_back({q(C - 5, 2), q(C - 1, 2), c - 3});
        t.push_back({q(C + 1, 2), q(3 * C - 3, 4), q(5 * C - 1, 4)});
        t.push_back({q(C + 3, 2), q(C - 13, 4), q(3 * C - 7, 4)});
        t.push_back({q(3 * C + 1, 4), q(5 * C - 5, 8), q(11 * C - 3, 8)});
        t.push_back({c + 2, q(C - 1, 4), q(5 * C + 7, 4)});
        t.push_back({c - 2, q(7 * C - 7, 8), q(9 * C + 23, 8)});
        break;
    case 3:
        if (c < 27) return {};
        run(t, 6, q(3 * C - 13, 4), q(3 * C + 11, 4), q(C - 23, 4), q(C - 19, 8));
        run(t, 5, q(5 * C - 7, 4), q(5 * C + 13, 4), q(C - 19, 4), q(C - 27, 8));
        t.push_back({2, q(3 * C - 9, 4), q(3 * C - 1, 4)});
        t.push_back({3, q(3 * C - 5, 4), q(3 * C + 7, 4)});
        t.push_back({4, q(C - 5, 2), q(C + 3, 2)});
        t.push_back({q(C - 7, 4), q(C + 5, 4), q(C - 1, 2)});
        t.push_back({q(3 * C + 3, 4), q(5 * C - 7, 8), q(11 * C - 1, 8)});
        t.push_back({q(C - 7, 2), q(5 * C + 5, 4), q(5 * C + 9, 4)});
        t.push_back({q(C + 1, 2), q(5 * C - 3, 4), q(5 * C + 1, 4)});
        t.push_back({q(7 * C + 3, 8), q(9 * C + 13, 8), c - 2});
        t.push_back({q(C - 3, 2), c + 2, q(3 * C - 1, 2)});
        break;
    case 5:
        if (c < 29) return {};
        run(t, 4, q(3 * C - 11, 4), q(3 * C + 5, 4), q(C - 17, 4), q(C - 29, 8));
        run(t, 7, q(5 * C - 13, 4), q(5 * C + 15, 4), q(C - 21, 4), q(C - 21, 8));
        t.push_back({2, 3, 5});
        t.push_back({q(C - 3, 2), q(3 * C - 3, 4), q(5 * C - 9, 4)});
        t.push_back({q(C - 1, 2), q(3 * C + 1, 4), q(5 * C - 1, 4)});
        t.push_back({q(C + 1, 2), q(3 * C - 7, 4), q(5 * C - 5, 4)});
        t.push_back({q(C - 13, 4), q(5 * C + 11, 4), q(3 * C - 1, 2)});
        t.push_back({q(C + 7, 4), q(7 * C - 19, 8), q(9 * C - 5, 8)});
        t.push_back({q(C - 5, 2), q(5 * C + 3, 4), q(5 * C + 7, 4)});
        t.push_back({q(5 * C + 7, 8), q(11 * C + 9, 8), c - 2});
        break;
    case 7:
        if (c < 23) return {};
        run(t, 4, q(3 * C - 9, 4), q(3 * C + 7, 4), q(C - 19, 4), q(C - 23, 8));
        run(t, 7, q(5 * C - 11, 4), q(5 * C + 17, 4), q(C - 19, 4), q(C - 23, 8));
        t.push_back({2, 3, 5});
        t.push_back({q(C - 1, 2), q(3 * C - 5, 4), q(5 * C - 7, 4)});
        t.push_back({q(C + 1, 2), q(3 * C + 3, 4), q(5 * C + 5, 4)});
        t.push_back({q(C - 7, 4), q(C + 3, 2), q(3 * C - 1, 4)});
        t.push_back({q(C + 5, 4), q(7 * C - 9, 8), q(9 * C + 1, 8)});
        t.push_back({q(C - 7, 2), q(5 * C + 1, 4), q(5 * C + 13, 4)});
        t.push_back({q(C - 3, 2), q(5 * C - 3, 4), q(5 * C + 9, 4)});
        t.push_back({q(5 * C + 5, 8), q(11 * C + 11, 8), c - 2});
        break;
    default:
        return {};
    }
    return p;
}

namespace {
std::mutex island_mu;
std::map<int, std::pair<TriplePartition, std::string>> island_memo;
} // namespace

static const std::pair<TriplePartition, std::string>& island_lookup(int c) {
    if (c < 9 || c % 2 == 0) throw PreconditionFail("island partition needs odd c >= 9");
    std::lock_guard<std::mutex> lock(island_mu);
    auto it = island_memo.find(c);
    if (it != island_memo.end()) return it->second;
    std::pair<TriplePartition, std::string> out;
    const auto& tab = data().island;
    if (auto t = tab.find(c); t != tab.end()) {
        out = {t->second, "table"};
    } else {
        TriplePartition f;
        try {
            f = island_family(c);
        } catch (const Error&) {
            f = {};
        }
        if (!f.triples.empty() && verify_triples(f)) {
            out = {f, "family"};
        } else {
            auto ground = interval_minus(2, (3 * c - 1) / 2, {c - 1, c, c + 1});
            out = {search_partition(ground, SumRule::SumEqOrZeroMod, 3 * c), "search"};
        }
    }
    return island_memo.emplace(c, std::move(out)).first->second;
}

TriplePartition island_partition(int c) { return island_lookup(c).first; }
std::string island_partition_source(int c) { return island_lookup(c).second; }

const std::vector<HandCase>& hand_cases() { return data().hand; }

const HandCase& hand_case(const std::string& name) {
    for (const auto& h : data().hand)
        if (h.name == name) return h;
    throw NotFound("no hand case " + name);
}

} // namespace bsa
