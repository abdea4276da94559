#include "bsa/difference.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "bsa/errors.hpp"

namespace bsa {

std::vector<GridPoint> delta(const Block& b, int r, int c) {
    if (b.size() < 2) throw DomainError("delta needs at least two points");
    std::vector<GridPoint> out;
    out.reserve(b.size() * (b.size() - 1));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (i != j) out.push_back(diff(b[i], b[j], r, c));
    std::sort(out.begin(), out.end());
    return out;
}

VerifyReport check_difference_family(const BaseBlockFamily& fam, const DesignParams& params,
                                     ForbiddenVariant v) {
    VerifyReport rep;
    const int r = params.r, c = params.c;
    if (fam.r != r || fam.c != c) {
        rep.add({-1, -1, 0, 0, "family ambient does not match parameters"});
        return rep;
    }
    std::vector<std::int64_t> got(std::size_t(r * c), 0);
    for (const auto& e : fam.entries) {
        if (int(e.block.size()) != params.k) {
            rep.add({-1, -1, params.k, std::int64_t(e.block.size()), "base block size"});
            continue;
        }
        for (const auto& p : e.block)
            if (p.row < 0 || p.row >= r || p.col < 0 || p.col >= c) {
                rep.add({-1, -1, 0, 0, "base block point out of bounds"});
                return rep;
            }
        for (const auto& d : delta(e.block, r, c)) got[std::size_t(d.row * c + d.col)] += e.mult;
    }
    std::vector<char> forb(std::size_t(r * c), 0);
    for (const auto& d : forbidden_difference_set(params.scheme, r, c, v)) forb[std::size_t(d.row * c + d.col)] = 1;
    for (int i = 0; i < r * c; ++i) {
        std::int64_t want = forb[std::size_t(i)] ? 0 : params.lambda;
        if (got[std::size_t(i)] != want)
            rep.add({i / c, i % c, want, got[std::size_t(i)], "difference"});
    }
    return rep;
}

std::int64_t orbit_size(int r, int c, const RowColCyclic& a) {
    return std::int64_t(a.row == Step::PlusOne ? r : 1) * (a.col == Step::PlusOne ? c : 1);
}

std::vector<Block> develop(const BaseBlockFamily& fam) {
    const int r = fam.r, c = fam.c;
    const int rs = fam.action.row == Step::PlusOne ? r : 1;
    const int cs = fam.action.col == Step::PlusOne ? c : 1;
    std::vector<Block> out;
    for (const auto& e : fam.entries)
        for (int m = 0; m < e.mult; ++m)
            for (int i = 0; i < rs; ++i)
                for (int j = 0; j < cs; ++j) {
                    Block b;
                    b.reserve(e.block.size());
                    for (const auto& p : e.block) b.push_back({(p.row + i) % r, (p.col + j) % c});
                    out.push_back(std::move(b));
                }
    return out;
}

Permutation parse_cycles(const std::string& text, int n) {
    Permutation p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[std::size_t(i)] = i;
    std::vector<char> seen(std::size_t(n), 0);
    std::size_t i = 0;
    auto fail = [&](const std::string& why) { throw ParseError("cycle notation: " + why + " in '" + text + "'"); };
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        if (text[i] != '(') fail("expected '('");
        std::size_t j = text.find(')', i);
        if (j == std::string::npos) fail("unclosed cycle");
        std::istringstream is(text.substr(i + 1, j - i - 1));
        std::vector<int> cyc;
        int x;
        while (is >> x) {
            if (x < 0 || x >= n) fail("point " + std::to_string(x) + " out of range");
            if (seen[std::size_t(x)]) fail("point " + std::to_string(x) + " repeated");
            seen[std::size_t(x)] = 1;
            cyc.push_back(x);
        }
        if (!is.eof()) fail("bad token");
        for (std::size_t t = 0; t < cyc.size(); ++t) p[std::size_t(cyc[t])] = cyc[(t + 1) % cyc.size()];
        i = j + 1;
    }
    return p;
}

std::string format_cycles(const Permutation& p) {
    std::string out;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == int(i)) continue;
        out += '(';
        std::size_t x = i;
        bool first = true;
        while (!seen[x]) {
            seen[x] = 1;
            if (!first) out += ' ';
            out += std::to_string(x);
            first = false;
            x = std::size_t(p[x]);
        }
        out += ')';
    }
    return out;
}

static void check_bijection(const Permutation& p) {
    std::vector<char> hit(p.size(), 0);
    for (int x : p) {
        if (x < 0 || std::size_t(x) >= p.size() || hit[std::size_t(x)])
            throw StructureError("generator is not a bijection");
        hit[std::size_t(x)] = 1;
    }
}

std::vector<Permutation> generate_group(const std::vector<Permutation>& gens, std::size_t max_order) {
    if (gens.empty()) throw StructureError("no generators");
    const std::size_t n = gens.front().size();
    for (const auto& g : gens) {
        if (g.size() != n) throw StructureError("generators act on different point sets");
        check_bijection(g);
    }
    Permutation id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = int(i);
    std::vector<Permutation> elems{id};
    std::set<Permutation> seen{id};
    // breadth-first closure under right multiplication by generators
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : gens) {
            Permutation nx(n);
            for (std::size_t i = 0; i < n; ++i) nx[i] = g[std::size_t(elems[head][i])];
            if (seen.insert(nx).second) {
                elems.push_back(nx);
                if (elems.size() > max_order) throw BudgetExceeded("group order exceeds bound");
            }
        }
    }
    return elems;
}

GridPoint zrc_to_grid(int z, int r) { return {z % r, z / r}; }
int grid_to_zrc(const GridPoint& p, int r) { return p.col * r + p.row; }

std::vector<Block> develop_under_group(const std::vector<std::vector<int>>& initial,
                                       const std::vector<Permutation>& gens, int r, int c) {
    const int n = r * c;
    for (const auto& g : gens)
        if (int(g.size()) != n) throw StructureError("generator does not act on Z_rc");
    auto group = generate_group(gens);
    std::vector<Block> out;
    out.reserve(initial.size() * group.size());
    for (const auto& b : initial) {
        for (int x : b)
            if (x < 0 || x >= n) throw StructureError("initial block point out of range");
        for (const auto& g : group) {
            Block img;
            for (int x : b) img.push_back(zrc_to_grid(g[std::size_t(x)], r));
            out.push_back(std::move(img));
        }
    }
    return out;
}

} // namespace bsa
