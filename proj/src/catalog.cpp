#include "bsa/catalog.hpp"
#include "bsa/construct.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "bsa/design_io.hpp"
#include "bsa/embedded.hpp"
#include "bsa/errors.hpp"
#include "bsa/ingredients.hpp"
#include "bsa/partitions.hpp"

namespace bsa {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        auto j = text.find('\n', i);
        if (j == std::string_view::npos) j = text.size();
        out.emplace_back(text.substr(i, j - i));
        i = j + 1;
    }
    return out;
}

std::vector<std::string> words(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

int to_int(const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        throw ParseError("expected integer, got '" + s + "'");
    }
    if (used != s.size()) throw ParseError("expected integer, got '" + s + "'");
    return v;
}

int parse_mult(const std::string& w) {
    if (w.size() < 2 || w[0] != 'x') throw ParseError("expected multiplicity xN, got '" + w + "'");
    int m = to_int(w.substr(1));
    if (m < 1) throw ParseError("multiplicity must be positive");
    return m;
}

std::string mult_suffix(int m) { return m > 1 ? " x" + std::to_string(m) : ""; }

Step parse_step(const std::string& w) {
    if (w == "+1") return Step::PlusOne;
    if (w == "-") return Step::Fixed;
    throw ParseError("expected +1 or -, got '" + w + "'");
}

const char* step_name(Step s) { return s == Step::PlusOne ? "+1" : "-"; }

const char* fill_name(FillKind k) {
    switch (k) {
    case FillKind::Gdd: return "gdd";
    case FillKind::Mgdd: return "mgdd";
    case FillKind::HgddPairs: return "hgdd2";
    }
    return "?";
}

} // namespace

std::string entry_kind(const CatalogEntry& e) { return e.qmgdd ? "qmgdd" : scheme_name(e.params.scheme); }

CatalogEntry parse_entry(std::string_view text) {
    auto lines = split_lines(text);
    CatalogEntry e;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw ParseError("catalog line " + std::to_string(i + 1) + ": " + why);
    };
    if (lines.size() < 2) fail("truncated entry");
    auto w0 = words(lines[0]);
    if (w0.size() != 2 || w0[0] != "entry") fail("expected 'entry <id>'");
    e.id = w0[1];
    i = 1;
    auto w1 = words(lines[1]);
    if (w1.size() != 6 || w1[0] != "design") fail("expected 'design <kind> r c k lambda'");
    if (w1[1] == "qmgdd") {
        e.qmgdd = true;
        e.params.scheme = AdjacencyScheme::sb();
    } else {
        e.params.scheme = parse_scheme(w1[1]);
    }
    e.params.r = to_int(w1[2]);
    e.params.c = to_int(w1[3]);
    e.params.k = to_int(w1[4]);
    e.params.lambda = to_int(w1[5]);
    for (i = 2; i < lines.size(); ++i) {
        const auto& line = lines[i];
        if (line.empty()) fail("blank line");
        auto w = words(line);
        if (w[0] == "part") {
            if (w.size() < 2) fail("part without a type");
            CatalogPart part;
            std::size_t nargs = 0;
            if (w[1] == "develop") {
                if (w.size() < 4) fail("develop needs a row and a column step");
                part.body = DevelopPart{{parse_step(w[2]), parse_step(w[3])}, {}};
                nargs = 4;
            } else if (w[1] == "perm-gen") {
                part.body = PermGenPart{};
                nargs = 2;
            } else if (w[1] == "orbit-fill") {
                if (w.size() < 4) fail("orbit-fill needs a kind and an axis");
                OrbitFillPart of;
                if (w[2] == "gdd") of.kind = FillKind::Gdd;
                else if (w[2] == "mgdd") of.kind = FillKind::Mgdd;
                else if (w[2] == "hgdd2") of.kind = FillKind::HgddPairs;
                else fail("unknown fill kind '" + w[2] + "'");
                if (w[3] == "row") of.axis = Axis::Row;
                else if (w[3] == "col") of.axis = Axis::Col;
                else fail("unknown axis '" + w[3] + "'");
                part.body = of;
                nargs = 4;
            } else {
                fail("unknown part type '" + w[1] + "'");
            }
            if (w.size() == nargs + 1) part.mult = parse_mult(w[nargs]);
            else if (w.size() != nargs) fail("trailing words after part header");
            e.parts.push_back(std::move(part));
            continue;
        }
        if (e.parts.empty()) fail("content before the first part");
        auto& body = e.parts.back().body;
        if (auto* d = std::get_if<DevelopPart>(&body)) {
            Block b;
            int m = parse_block_line(line, b);
            d->blocks.push_back({b, m});
        } else if (auto* g = std::get_if<PermGenPart>(&body)) {
            if (line.rfind("gen ", 0) == 0) {
                if (!g->blocks.empty()) fail("generator after blocks");
                g->generators.push_back(line.substr(4));
                continue;
            }
            if (line[0] != '{') fail("expected '{a,b,c}' or 'gen'");
            auto close = line.find('}');
            if (close == std::string::npos) fail("unclosed block");
            std::vector<int> blk;
            std::string inner = line.substr(1, close - 1);
            std::stringstream ss(inner);
            for (std::string tok; std::getline(ss, tok, ',');) blk.push_back(to_int(tok));
            int m = 1;
            std::string rest = line.substr(close + 1);
            if (!rest.empty()) {
                if (rest[0] != ' ') fail("bad block suffix");
                m = parse_mult(rest.substr(1));
            }
            g->blocks.push_back({blk, m});
        } else {
            auto& of = std::get<OrbitFillPart>(body);
            if (w[0] == "base" && w.size() == 4) {
                of.bases.push_back({to_int(w[1]), to_int(w[2]), to_int(w[3])});
            } else if (w[0] == "triples" && w.size() >= 2) {
                if (of.triples) fail("second triple source");
                of.triples = line.substr(8);
            } else {
                fail("expected 'base a b c' or 'triples <source>'");
            }
        }
    }
    return e;
}

std::string serialize_entry(const CatalogEntry& e) {
    const auto& p = e.params;
    std::string out = "entry " + e.id + "\n";
    out += "design " + entry_kind(e) + " " + std::to_string(p.r) + " " + std::to_string(p.c) + " " +
           std::to_string(p.k) + " " + std::to_string(p.lambda) + "\n";
    for (const auto& part : e.parts) {
        if (const auto* d = std::get_if<DevelopPart>(&part.body)) {
            out += std::string("part develop ") + step_name(d->action.row) + " " + step_name(d->action.col) +
                   mult_suffix(part.mult) + "\n";
            for (const auto& b : d->blocks) out += format_block(b.block) + mult_suffix(b.mult) + "\n";
        } else if (const auto* g = std::get_if<PermGenPart>(&part.body)) {
            out += "part perm-gen" + mult_suffix(part.mult) + "\n";
            for (const auto& s : g->generators) out += "gen " + s + "\n";
            for (const auto& [b, m] : g->blocks) {
                out += "{";
                for (std::size_t t = 0; t < b.size(); ++t) out += (t ? "," : "") + std::to_string(b[t]);
                out += "}" + mult_suffix(m) + "\n";
            }
        } else {
            const auto& of = std::get<OrbitFillPart>(part.body);
            out += std::string("part orbit-fill ") + fill_name(of.kind) + " " + (of.axis == Axis::Row ? "row" : "col") +
                   mult_suffix(part.mult) + "\n";
            for (const auto& t : of.bases)
                out += "base " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]) + "\n";
            if (of.triples) out += "triples " + *of.triples + "\n";
        }
    }
    return out;
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> all = [] {
        std::vector<CatalogEntry> v;
        for (const auto& path : embedded_files("catalog/")) {
            try {
                v.push_back(parse_entry(embedded_file(path)));
            } catch (const ParseError& err) {
                throw ParseError(path + ": " + err.what());
            }
        }
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
        return v;
    }();
    return all;
}

const CatalogEntry& catalog_entry(const std::string& id) {
    for (const auto& e : catalog())
        if (e.id == id) return e;
    throw NotFound("no catalog entry " + id);
}

std::optional<CatalogMatch> lookup(const DesignParams& p) {
    for (const auto& e : catalog())
        if (!e.qmgdd && e.params == p) return CatalogMatch{&e, false};
    if (p.scheme.kind == SchemeKind::OneDim) return std::nullopt;
    DesignParams t = p;
    std::swap(t.r, t.c);
    for (const auto& e : catalog())
        if (!e.qmgdd && e.params == t) return CatalogMatch{&e, true};
    return std::nullopt;
}

namespace {

// base triples of an orbit fill as offsets {0, a, c} with a + b = c (possibly mod the axis length)
std::vector<std::array<int, 3>> fill_triples(const OrbitFillPart& of) {
    auto out = of.bases;
    if (!of.triples) return out;
    auto w = words(*of.triples);
    TriplePartition tp;
    if (w.size() == 3 && w[0] == "zc-seq") {
        tp = zc_seq_partition(to_int(w[1]), to_int(w[2]));
    } else if (w.size() == 2 && w[0] == "hand") {
        tp = hand_case(w[1]).partition;
    } else {
        throw ParseError("unknown triple source '" + *of.triples + "'");
    }
    canonical_roles(tp);
    for (const auto& t : tp.triples) out.push_back({0, t[0], t[2]});
    return out;
}

std::vector<IntBlock> fill_ingredient(FillKind k, int n) {
    switch (k) {
    case FillKind::Gdd: return td3_gdd(n);
    case FillKind::Mgdd: return mgdd3(n);
    case FillKind::HgddPairs:
        if (n % 2 != 0) throw IngredientUnavailable("(3,1)-HGDD of type (3,2^u) on an odd line");
        return hgdd3_pairs(n / 2);
    }
    return {};
}

} // namespace

Design realize(const CatalogEntry& e) {
    Design d;
    d.params = e.params;
    const int r = e.params.r, c = e.params.c;
    for (const auto& part : e.parts) {
        std::vector<Block> got;
        if (const auto* dp = std::get_if<DevelopPart>(&part.body)) {
            BaseBlockFamily fam;
            fam.r = r;
            fam.c = c;
            fam.action = dp->action;
            fam.entries = dp->blocks;
            got = develop(fam);
        } else if (const auto* g = std::get_if<PermGenPart>(&part.body)) {
            std::vector<Permutation> gens;
            for (const auto& s : g->generators) gens.push_back(parse_cycles(s, r * c));
            std::vector<std::vector<int>> initial;
            for (const auto& [b, m] : g->blocks)
                for (int t = 0; t < m; ++t) initial.push_back(b);
            got = develop_under_group(initial, gens, r, c);
        } else {
            const auto& of = std::get<OrbitFillPart>(part.body);
            const int n = of.axis == Axis::Row ? c : r; // group size of the ingredient
            std::vector<IntBlock> ing;
            try {
                ing = fill_ingredient(of.kind, n);
            } catch (const IngredientUnavailable& err) {
                throw IngredientUnavailable("catalog entry " + e.id, err);
            }
            got = orbit_fill(fill_triples(of), ing, of.axis, r, c);
        }
        for (int m = 0; m < part.mult; ++m) d.blocks.insert(d.blocks.end(), got.begin(), got.end());
    }
    return d;
}

Design transpose(const Design& d) {
    Design t;
    t.params = d.params;
    std::swap(t.params.r, t.params.c);
    t.blocks.reserve(d.blocks.size());
    for (const auto& b : d.blocks) {
        Block nb;
        for (const auto& p : b) nb.push_back({p.col, p.row});
        t.blocks.push_back(std::move(nb));
    }
    return t;
}

Design realize(const CatalogMatch& m) {
    auto d = realize(*m.entry);
    return m.transposed ? transpose(d) : d;
}

VerifyReport verify_entry(const CatalogEntry& e, const Design& d) {
    if (!e.qmgdd) return verify_bsa(d);
    return verify_structured(to_int_blocks(d), qmgdd_descriptor(e.params.r, e.params.c, e.params.k, e.params.lambda));
}

std::vector<std::string> list_entries(const CatalogFilter& f) {
    std::vector<std::string> out;
    for (const auto& e : catalog()) {
        if (f.kind && *f.kind != entry_kind(e)) continue;
        if (f.r && *f.r != e.params.r) continue;
        if (f.c && *f.c != e.params.c) continue;
        if (f.k && *f.k != e.params.k) continue;
        if (f.lambda && *f.lambda != e.params.lambda) continue;
        out.push_back(e.id);
    }
    return out;
}

} // namespace bsa
