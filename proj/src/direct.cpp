#include "bsa/construct.hpp"
#include "bsa/errors.hpp"
#include "bsa/ingredients.hpp"
#include "bsa/partitions.hpp"

namespace bsa {

namespace {

int mod(long a, int n) { return int(((a % n) + n) % n); }

// base blocks developed by (+1 mod r, +1 mod c); points reduced on entry
struct Family {
    BaseBlockFamily fam;
    Family(int r, int c) {
        fam.r = r;
        fam.c = c;
    }
    void add(std::initializer_list<std::pair<long, long>> pts, int mult = 1) {
        Block b;
        for (auto [x, y] : pts) b.push_back({mod(x, fam.r), mod(y, fam.c)});
        fam.add(std::move(b), mult);
    }
    std::vector<Block> blocks() const { return develop(fam); }
};

void append(std::vector<Block>& to, const std::vector<Block>& from, int times = 1) {
    for (int t = 0; t < times; ++t) to.insert(to.end(), from.begin(), from.end());
}

// triples {a,b,c} with a + b = c (possibly modulo v), roles fixed
std::vector<Triple> roled(TriplePartition p) {
    canonical_roles(p);
    return p.triples;
}

// [d, d+3m] minus one point, a + b = c, given the point excluded
std::vector<Triple> se_excluding(int d, int m, int excluded) { return roled(zc_se_partition(d, m, excluded - d - m + 1)); }

// base blocks {(0,0),(0,a),(0,c)} (row) or {(0,0),(a,0),(c,0)} (column) for each triple
void add_line_triples(Family& f, const std::vector<Triple>& ts, bool along_row) {
    for (const auto& t : ts) {
        if (along_row)
            f.add({{0, 0}, {0, t[0]}, {0, t[2]}});
        else
            f.add({{0, 0}, {t[0], 0}, {t[2], 0}});
    }
}

Design finish(int r, int c, int lambda, std::vector<Block> blocks, const std::string& what) {
    Design d;
    d.params = {AdjacencyScheme::sb(), r, c, 3, lambda};
    d.blocks = std::move(blocks);
    auto rep = verify_bsa(d);
    if (!rep.ok) throw StructureError(what + " failed verification: " + rep.summary());
    return d;
}

Design from_catalog(const std::string& id) { return realize(catalog_entry(id)); }

Design four_columns(int r) {
    const std::string what = "2-BSEC(" + std::to_string(r) + ",4,3,2)";
    if (r == 11) return from_catalog("sb-11x4-l2");
    std::vector<Block> out;
    if (r % 6 == 5) {
        const int x = (r - 5) / 6;
        if (x >= 2) {
            std::vector<std::array<int, 3>> bases;
            const long s = 3 * x + 2;
            for (const auto& t : roled(bryant_partition(r))) bases.push_back({0, mod(s * t[0], r), mod(s * (t[0] + t[1]), r)});
            append(out, orbit_fill(bases, td3_gdd(4), Axis::Row, r, 4), 2);
        }
        const long a = 3 * x + 2, b = 6 * x + 4;
        Family f(r, 4);
        f.add({{0, 0}, {0, 2}, {b, 3}});
        f.add({{0, 0}, {a, 0}, {b, 2}});
        f.add({{0, 0}, {a, 1}, {b, 2}});
        f.add({{0, 0}, {a, 0}, {b, 3}});
        f.add({{0, 0}, {a, 2}, {b, 1}});
        append(out, f.blocks());
        return finish(r, 4, 2, std::move(out), what);
    }
    // r = 2 mod 6
    Family f(r, 4);
    for (int i = 1; i <= r / 2; ++i) f.add({{0, 0}, {i, 1}, {2 * i + 1, 2}});
    for (int i = r / 2 + 2; i <= r - 1; ++i) f.add({{0, 0}, {i, 1}, {2 * i, 2}});
    f.add({{0, 0}, {r / 2, 0}, {1, 1}});
    f.add({{0, 0}, {2, 0}, {2, 2}});
    const int m = (r - 5) / 3;
    std::vector<Triple> ts;
    if (r == 8)
        ts = roled(hand_case("four-col-r8").partition);
    else if (r % 12 == 2)
        ts = se_excluding(2, m, r / 2);
    else
        ts = se_excluding(3, m, r / 2);
    add_line_triples(f, ts, false);
    return finish(r, 4, 2, f.blocks(), what);
}

Design seven_rows(int c) {
    if (c == 8) return from_catalog("sb-7x8-l2");
    std::vector<Block> out = orbit_fill({{0, 1, 3}}, mgdd3(c), Axis::Row, 7, c);
    Family f(7, c);
    for (int i = 1; i <= c / 2; ++i) f.add({{0, 0}, {1, i}, {3, 2 * i + 1}});
    for (int i = c / 2 + 1; i <= c - 1; ++i) f.add({{0, 0}, {1, i}, {3, 2 * i + 2}});
    f.add({{0, 0}, {0, c / 2 + 2}, {2, c / 2 + 2}});
    f.add({{0, 0}, {0, 2}, {3, 2}});
    const int m = (c - 5) / 3;
    std::vector<Triple> ts;
    if (c == 14)
        ts = roled(hand_case("seven-row-c14").partition);
    else if (c % 12 == 8)
        ts = se_excluding(2, m, c / 2 + 2);
    else
        ts = se_excluding(3, m, c / 2 + 2);
    add_line_triples(f, ts, true);
    append(out, f.blocks());
    return finish(7, c, 2, std::move(out), "2-BSEC(7," + std::to_string(c) + ",3,2)");
}

Design one_mod_six(int r, int c) {
    if (r == 7) return seven_rows(c);
    const int mr = (r - 4) / 3;
    std::vector<std::array<int, 3>> bases;
    for (const auto& t : roled(zc_seq_partition(r % 12 == 1 ? 2 : 3, mr))) bases.push_back({0, t[0], t[2]});
    std::vector<Block> out = orbit_fill(bases, td3_gdd(c), Axis::Row, r, c);
    Family f(r, c);
    for (int i = 1; i <= c / 2; ++i) f.add({{0, 0}, {1, i}, {2, 1 + 2 * i}});
    for (int i = c / 2 + 2; i <= c - 1; ++i) f.add({{0, 0}, {1, i}, {2, 2 * i}});
    f.add({{0, 0}, {0, c / 2}, {1, 1}});
    f.add({{0, 0}, {0, c - 2}, {2, 0}});
    const int m = (c - 5) / 3;
    std::vector<Triple> ts;
    if (c == 14)
        ts = roled(hand_case("one-mod-six-c14").partition);
    else if (c % 12 == 8)
        ts = se_excluding(2, m, c / 2);
    else
        ts = se_excluding(3, m, c / 2);
    add_line_triples(f, ts, true);
    append(out, f.blocks());
    return finish(r, c, 2, std::move(out), "2-BSEC(" + std::to_string(r) + "," + std::to_string(c) + ",3,2)");
}

// i taken three times over [lo, hi], minus one copy per listed exclusion
std::vector<int> triple_range(int lo, int hi, const std::vector<int>& minus) {
    std::vector<int> out;
    for (int i = lo; i <= hi; ++i) {
        int m = 3;
        for (int e : minus)
            if (e == i) --m;
        for (int t = 0; t < m; ++t) out.push_back(i);
    }
    return out;
}

Design four_rows_six(int c) {
    const std::string what = "2-BSEC(4," + std::to_string(c) + ",3,6)";
    if (c == 4 || c == 13 || c == 19) return from_catalog("sb-4x" + std::to_string(c) + "-l6");
    const int h = c / 2;
    if (c % 12 == 4 || c % 12 == 10) {
        const int m = (c - 4) / 3;
        Family f(4, c);
        auto first = se_excluding(2, m, h + 2);
        auto second = c % 12 == 4 ? roled(zc_seq_partition(2, m)) : se_excluding(2, m, c - 3);
        // the second partition serves twice
        add_line_triples(f, first, true);
        add_line_triples(f, second, true);
        add_line_triples(f, second, true);
        std::vector<int> lower = c % 12 == 4 ? std::vector<int>{h - 2, h - 1} : std::vector<int>{0, h - 2, h - 1, h - 1};
        for (int i : triple_range(0, h - 1, lower)) f.add({{0, 0}, {1, 1 + i}, {2, 2 + 2 * i}});
        for (int i : triple_range(h + 1, c - 2, {})) f.add({{0, 0}, {1, 1 + i}, {2, 1 + 2 * i}});
        f.add({{0, 0}, {0, h + 2}, {1, h + 1}});
        if (c % 12 == 4) {
            f.add({{0, 0}, {0, c - 2}, {2, c - 1}}, 2);
            f.add({{0, 0}, {1, h - 1}, {2, c - 1}});
            f.add({{0, 0}, {1, h}, {2, 1}});
            f.add({{0, 0}, {1, h - 1}, {2, 0}});
            f.add({{0, 0}, {1, c - 1}, {2, c - 2}});
        } else {
            f.add({{0, 0}, {0, c - 3}, {2, c - 1}});
            f.add({{0, 0}, {0, c - 3}, {2, c - 2}});
            f.add({{0, 0}, {1, h}, {2, 1}}, 2);
            f.add({{0, 0}, {1, 1}, {2, 0}}, 2);
            f.add({{0, 0}, {1, h - 1}, {2, c - 1}}, 2);
        }
        return finish(4, c, 6, f.blocks(), what);
    }
    // c = 6x + 1
    const int x = (c - 1) / 6;
    std::vector<Block> out;
    if (x >= 4) {
        std::vector<std::array<int, 3>> near, far;
        for (const auto& t : roled(bryant_partition(c))) {
            near.push_back({0, mod(3L * x * t[0], c), mod(3L * x * (t[0] + t[1]), c)});
            far.push_back({0, mod(6L * x * t[0], c), mod(6L * x * (t[0] + t[1]), c)});
        }
        append(out, orbit_fill(near, td3_gdd(4), Axis::Col, 4, c), 5);
        append(out, orbit_fill(far, td3_gdd(4), Axis::Col, 4, c));
    } else if (x != 1) {
        throw PreconditionFail(what + " is not covered by the formula family");
    }
    const long t = 3L * x, s = 6L * x;
    Family f(4, c);
    f.add({{0, 0}, {2, 0}, {3, t}});
    f.add({{0, 0}, {2, 0}, {2, t - 1}});
    f.add({{0, 0}, {2, 0}, {3, t - 1}});
    f.add({{0, 0}, {1, t}, {0, s - 1}});
    f.add({{0, 0}, {0, t - 1}, {2, s - 2}});
    f.add({{0, 0}, {1, t}, {3, s}});
    f.add({{0, 0}, {2, t}, {1, s}});
    f.add({{0, 0}, {1, s}, {0, s - 2}});
    f.add({{0, 0}, {2, s}, {3, s - 2}});
    f.add({{0, 0}, {3, s}, {1, s - 2}});
    f.add({{0, 0}, {2, t}, {0, t - 1}}, 2);
    f.add({{0, 0}, {0, t}, {1, t - 1}});
    f.add({{0, 0}, {3, t}, {1, t - 1}}, 2);
    f.add({{0, 0}, {1, t}, {2, t - 1}}, 2);
    f.add({{0, 0}, {0, t}, {3, t - 1}}, 3);
    f.add({{0, 0}, {3, t}, {0, t - 1}});
    f.add({{0, 0}, {0, t}, {2, t - 1}});
    f.add({{0, 0}, {2, t}, {1, t - 1}});
    append(out, f.blocks());
    return finish(4, c, 6, std::move(out), what);
}

} // namespace

std::string family_name(DirectFamily f) {
    switch (f) {
    case DirectFamily::FourColumns: return "four-columns";
    case DirectFamily::SevenRows: return "seven-rows";
    case DirectFamily::OneModSix: return "one-mod-six";
    case DirectFamily::FourRowsSix: return "four-rows-index-six";
    }
    return "?";
}

bool family_covers(DirectFamily f, int r, int c) {
    switch (f) {
    case DirectFamily::FourColumns: return c == 4 && r >= 5 && r % 3 == 2;
    case DirectFamily::SevenRows: return r == 7 && c >= 8 && c % 6 == 2;
    case DirectFamily::OneModSix: return r >= 7 && r % 6 == 1 && c >= 8 && c % 6 == 2;
    case DirectFamily::FourRowsSix: return r == 4 && c >= 4 && c % 3 == 1;
    }
    return false;
}

Design direct_construction(DirectFamily f, int r, int c) {
    if (!family_covers(f, r, c))
        throw PreconditionFail(family_name(f) + " does not cover (" + std::to_string(r) + "," + std::to_string(c) + ")");
    switch (f) {
    case DirectFamily::FourColumns: return four_columns(r);
    case DirectFamily::SevenRows: return seven_rows(c);
    case DirectFamily::OneModSix: return one_mod_six(r, c);
    case DirectFamily::FourRowsSix: return four_rows_six(c);
    }
    throw DomainError("unknown family");
}

Design construct_island_3row(int c) {
    if (c < 9 || c % 2 == 0) throw PreconditionFail("island construction needs odd c >= 9");
    const int v = 3 * c;
    Design d;
    d.params = {AdjacencyScheme::is(), 3, c, 3, 1};
    for (const auto& t : roled(island_partition(c)))
        for (int j = 0; j < v; ++j) {
            Block b;
            for (int z : {j, t[0] + j, t[0] + t[1] + j}) {
                const int p = mod(z, v);
                b.push_back({p / c, p % c});
            }
            d.blocks.push_back(std::move(b));
        }
    auto rep = verify_bsa(d);
    if (!rep.ok) throw StructureError("island design failed verification: " + rep.summary());
    return d;
}

} // namespace bsa
