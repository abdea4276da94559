#include <numeric>

#include "bsa/construct.hpp"
#include "bsa/errors.hpp"

namespace bsa {

Design scale(const Design& d, int t) {
    if (t < 1) throw DomainError("scale factor must be positive");
    Design out;
    out.params = d.params;
    out.params.lambda *= t;
    out.blocks.reserve(d.blocks.size() * std::size_t(t));
    for (int i = 0; i < t; ++i) out.blocks.insert(out.blocks.end(), d.blocks.begin(), d.blocks.end());
    return out;
}

std::vector<Block> orbit_fill(const std::vector<std::array<int, 3>>& bases, const std::vector<IntBlock>& ingredient,
                              Axis axis, int r, int c) {
    const int len = axis == Axis::Row ? r : c;
    const int n = axis == Axis::Row ? c : r;
    std::vector<Block> out;
    out.reserve(bases.size() * std::size_t(len) * ingredient.size());
    for (const auto& t : bases)
        for (int j = 0; j < len; ++j) {
            int line[3];
            for (int q = 0; q < 3; ++q) line[q] = ((t[std::size_t(q)] + j) % len + len) % len;
            for (const auto& ib : ingredient) {
                Block b;
                for (int x : ib) {
                    const int g = x / n, pos = x % n;
                    b.push_back(axis == Axis::Row ? GridPoint{line[g], pos} : GridPoint{pos, line[g]});
                }
                out.push_back(std::move(b));
            }
        }
    return out;
}

Ingredient default_ingredient(const IngredientSpec& s) {
    const bool grid = (s.kind == IngredientKind::BSEC2D || (s.kind == IngredientKind::QMGDD && s.m == 3)) && s.k == 3 &&
                      s.n >= 3 && s.m >= 3;
    if (!grid) return obtain_ingredient(s);
    try {
        auto c = construct_2bsec_traced(s.n, s.m, s.lambda);
        return {s, to_int_blocks(c.design), "construct:" + c.route};
    } catch (const IngredientUnavailable& e) {
        throw IngredientUnavailable(canonical_key(s), e);
    } catch (const Error& e) {
        throw IngredientUnavailable(canonical_key(s) + " (" + e.what() + ")");
    }
}

namespace {

Ingredient need(const IngredientProvider& get, const IngredientSpec& s, const std::string& outer) {
    try {
        return get(s);
    } catch (const IngredientUnavailable& e) {
        throw IngredientUnavailable(outer, e);
    }
}

void check(const Design& d, const std::string& what) {
    auto rep = verify_bsa(d);
    if (!rep.ok) throw StructureError(what + " failed verification: " + rep.summary());
}

} // namespace

Design fill_hgdd(const Ingredient& hgdd, const IngredientProvider& get) {
    const auto& s = hgdd.spec;
    if (s.kind != IngredientKind::HGDD) throw PreconditionFail("fill_hgdd needs an HGDD");
    if (s.sizes.size() < 2) throw PreconditionFail("fill_hgdd needs at least two holes");
    const std::string outer = "fill " + canonical_key(s);
    const int n = s.n;
    const int w = std::accumulate(s.sizes.begin(), s.sizes.end(), 0);

    Design d;
    d.params = {AdjacencyScheme::sb(), n, w, s.k, s.lambda};
    auto emit = [&](const IntBlock& ib, auto&& at) {
        Block b;
        for (int p : ib) b.push_back(at(p));
        d.blocks.push_back(std::move(b));
    };
    for (const auto& ib : hgdd.blocks) emit(ib, [&](int p) { return GridPoint{p / w, p % w}; });

    int off = 0;
    for (int h : s.sizes) {
        auto q = need(get, qmgdd_spec(n, h, s.k, s.lambda), outer);
        for (const auto& ib : q.blocks) emit(ib, [&](int p) { return GridPoint{p / h, off + p % h}; });
        off += h;
    }
    auto line = need(get, bsec1d_spec(w, s.k, s.lambda), outer);
    for (int g = 0; g < n; ++g)
        for (const auto& ib : line.blocks) emit(ib, [&](int z) { return GridPoint{g, z}; });

    check(d, outer);
    return d;
}

Design fill_igdd(const Ingredient& igdd, int r, const IngredientProvider& get) {
    const auto& s = igdd.spec;
    if (s.kind != IngredientKind::IGDD) throw PreconditionFail("fill_igdd needs an IGDD");
    const std::string outer = "fill " + canonical_key(s) + " over " + std::to_string(r) + " rows";
    const int u = int(s.vh.size());
    if (u < 3) throw PreconditionFail("fill_igdd needs at least three groups");
    for (const auto& [v, h] : s.vh)
        if (h != 2) throw PreconditionFail("fill_igdd needs exactly two hole points per group");

    // IGDD point -> column; group i spans [start_i, start_i + v_i) with its hole points at the ends
    std::vector<int> start(std::size_t(u) + 1, 0);
    for (int i = 0; i < u; ++i) start[std::size_t(i) + 1] = start[std::size_t(i)] + s.vh[std::size_t(i)].first;
    const int width = start.back();
    std::vector<int> col(std::size_t(width), 0);
    for (int i = 0; i < u; ++i) {
        const int a = start[std::size_t(i)], v = s.vh[std::size_t(i)].first;
        col[std::size_t(a)] = a;
        col[std::size_t(a) + 1] = a + v - 1;
        for (int t = 2; t < v; ++t) col[std::size_t(a + t)] = a + t - 1;
    }
    auto first_hole = [&](int i) { return start[std::size_t(i)]; };
    auto last_hole = [&](int i) { return start[std::size_t(i) + 1] - 1; };

    Design d;
    d.params = {AdjacencyScheme::sb(), r, width, s.k, s.lambda};
    const auto across = need(get, mgdd_spec(r, s.k, s.k, 1), outer);

    // a set of columns: MGDD across rows, optionally plus one copy inside each row
    auto spread = [&](const std::vector<int>& cols, bool rows_apart, bool within_row) {
        if (rows_apart)
            for (const auto& ib : across.blocks) {
                Block b;
                for (int p : ib) b.push_back({p / s.k, cols[std::size_t(p % s.k)]});
                d.blocks.push_back(std::move(b));
            }
        if (within_row)
            for (int a = 0; a < r; ++a) {
                Block b;
                for (int c : cols) b.push_back({a, c});
                d.blocks.push_back(std::move(b));
            }
    };

    for (const auto& ib : igdd.blocks) {
        std::vector<int> cols;
        for (int p : ib) cols.push_back(col[std::size_t(p)]);
        spread(cols, true, true);
    }

    const auto pairs = std::vector<int>(std::size_t(u), 2);
    const auto hole_gdd = need(get, gdd_spec(pairs, s.k, s.lambda), outer);
    if (int(hole_gdd.spec.sizes.size()) != u) throw IngredientUnavailable(outer + ": hole GDD has the wrong type");
    for (const auto& ib : hole_gdd.blocks) {
        std::vector<int> by_group, by_border;
        for (int p : ib) {
            const int i = p / 2;
            by_group.push_back(p % 2 == 0 ? first_hole(i) : last_hole(i));
            by_border.push_back(p % 2 == 0 ? last_hole(i) : first_hole((i + 1) % u));
        }
        spread(by_group, true, false);
        spread(by_border, false, true);
    }

    for (int i = 0; i < u; ++i) {
        const int v = s.vh[std::size_t(i)].first, a = start[std::size_t(i)];
        auto g = need(get, bsec2d_spec(r, v, s.k, s.lambda), outer);
        for (const auto& ib : g.blocks) {
            Block b;
            for (int p : ib) b.push_back({p / v, a + p % v});
            d.blocks.push_back(std::move(b));
        }
    }

    check(d, outer);
    return d;
}

Ingredient truncate_inflate_igdd(int c, int x, const IngredientProvider& get) {
    if (c < 6) throw PreconditionFail("truncation needs groups of at least 6 points");
    if (x < 3 || x > c) throw PreconditionFail("truncated group must keep between 3 and c points");
    const auto spec4 = igdd_spec({{c, 2}, {c, 2}, {c, 2}, {c, 2}}, 4, 1);
    const auto src = need(get, spec4, "truncated " + canonical_key(spec4));

    Ingredient out;
    out.spec = igdd_spec({{c, 2}, {c, 2}, {c, 2}, {x, 2}}, 3, 2);
    out.provenance = "truncate(" + src.provenance + ", x=" + std::to_string(x) + ")";
    const int cut = 3 * c + x; // points of the last group from here on are removed
    for (const auto& b : src.blocks) {
        IntBlock kept;
        for (int p : b)
            if (p < cut) kept.push_back(p);
        if (kept.size() == 4) {
            for (int skip = 0; skip < 4; ++skip) {
                IntBlock t;
                for (int q = 0; q < 4; ++q)
                    if (q != skip) t.push_back(kept[std::size_t(q)]);
                out.blocks.push_back(t);
            }
        } else if (kept.size() == 3) {
            out.blocks.push_back(kept);
            out.blocks.push_back(kept);
        } else {
            throw StructureError("4-IGDD block meets the truncated group twice");
        }
    }
    auto rep = verify_ingredient(out.spec, out.blocks);
    if (!rep.ok) throw StructureError("truncated IGDD failed verification: " + rep.summary());
    return out;
}

Design design_3c_plus_x(int r, int c, int x, const IngredientProvider& get) {
    if (r < 3) throw PreconditionFail("3c+x needs at least three rows");
    return fill_igdd(truncate_inflate_igdd(c, x, get), r, get);
}

} // namespace bsa
