#include "bsa/ingredient_source.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "json.hpp"

#include "bsa/catalog.hpp"
#include "bsa/errors.hpp"
#include "bsa/ingredients.hpp"

namespace bsa {

namespace {

const char* kind_name(IngredientKind k) {
    switch (k) {
    case IngredientKind::GDD: return "gdd";
    case IngredientKind::IGDD: return "igdd";
    case IngredientKind::MGDD: return "mgdd";
    case IngredientKind::HGDD: return "hgdd";
    case IngredientKind::QMGDD: return "qmgdd";
    case IngredientKind::BSEC1D: return "bsec1d";
    case IngredientKind::BSEC2D: return "bsec2d";
    }
    return "?";
}

std::string runs(const std::vector<int>& sizes) {
    std::string out;
    for (std::size_t i = 0; i < sizes.size();) {
        std::size_t j = i;
        while (j < sizes.size() && sizes[j] == sizes[i]) ++j;
        if (!out.empty()) out += ' ';
        out += std::to_string(sizes[i]) + "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

int parse_int(const std::string& s) {
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

// "a^b" -> (a, b)
std::pair<int, int> parse_power(const std::string& tok) {
    auto hat = tok.find('^');
    if (hat == std::string::npos) throw ParseError("expected a^b, got '" + tok + "'");
    return {parse_int(tok.substr(0, hat)), parse_int(tok.substr(hat + 1))};
}

std::vector<int> parse_runs(const std::vector<std::string>& toks) {
    std::vector<int> out;
    for (const auto& t : toks) {
        auto [a, b] = parse_power(t);
        if (a < 1 || b < 1) throw ParseError("type exponents must be positive");
        out.insert(out.end(), std::size_t(b), a);
    }
    return out;
}

std::vector<std::string> split_ws(std::string_view s) {
    std::istringstream in{std::string(s)};
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

bool uniform(const std::vector<int>& v) { return !v.empty() && std::all_of(v.begin(), v.end(), [&](int x) { return x == v[0]; }); }

} // namespace

int IngredientSpec::points() const {
    switch (kind) {
    case IngredientKind::GDD: {
        int s = 0;
        for (int x : sizes) s += x;
        return s;
    }
    case IngredientKind::IGDD: {
        int s = 0;
        for (auto [v, h] : vh) s += v;
        return s;
    }
    case IngredientKind::HGDD: {
        int w = 0;
        for (int x : sizes) w += x;
        return n * w;
    }
    case IngredientKind::MGDD:
    case IngredientKind::QMGDD:
    case IngredientKind::BSEC2D: return n * m;
    case IngredientKind::BSEC1D: return n;
    }
    return 0;
}

IngredientSpec gdd_spec(std::vector<int> sizes, int k, int lambda) {
    std::sort(sizes.rbegin(), sizes.rend());
    IngredientSpec s;
    s.kind = IngredientKind::GDD;
    s.sizes = std::move(sizes);
    s.k = k;
    s.lambda = lambda;
    return s;
}

IngredientSpec igdd_spec(std::vector<std::pair<int, int>> vh, int k, int lambda) {
    std::sort(vh.rbegin(), vh.rend());
    IngredientSpec s;
    s.kind = IngredientKind::IGDD;
    s.vh = std::move(vh);
    s.k = k;
    s.lambda = lambda;
    return s;
}

IngredientSpec mgdd_spec(int rows, int cols, int k, int lambda) {
    IngredientSpec s;
    s.kind = IngredientKind::MGDD;
    s.n = rows;
    s.m = cols;
    s.k = k;
    s.lambda = lambda;
    return s;
}

IngredientSpec hgdd_spec(int n, std::vector<int> hole_widths, int k, int lambda) {
    std::sort(hole_widths.rbegin(), hole_widths.rend());
    IngredientSpec s;
    s.kind = IngredientKind::HGDD;
    s.n = n;
    s.sizes = std::move(hole_widths);
    s.k = k;
    s.lambda = lambda;
    return s;
}

IngredientSpec qmgdd_spec(int rows, int cols, int k, int lambda) {
    auto s = mgdd_spec(rows, cols, k, lambda);
    s.kind = IngredientKind::QMGDD;
    return s;
}

IngredientSpec bsec1d_spec(int n, int k, int lambda) {
    IngredientSpec s;
    s.kind = IngredientKind::BSEC1D;
    s.n = n;
    s.k = k;
    s.lambda = lambda;
    return s;
}

IngredientSpec bsec2d_spec(int r, int c, int k, int lambda) {
    auto s = mgdd_spec(r, c, k, lambda);
    s.kind = IngredientKind::BSEC2D;
    return s;
}

std::string canonical_key(const IngredientSpec& s) {
    std::string type;
    switch (s.kind) {
    case IngredientKind::GDD: type = runs(s.sizes); break;
    case IngredientKind::IGDD:
        for (std::size_t i = 0; i < s.vh.size();) {
            std::size_t j = i;
            while (j < s.vh.size() && s.vh[j] == s.vh[i]) ++j;
            if (!type.empty()) type += ' ';
            type += "(" + std::to_string(s.vh[i].first) + "," + std::to_string(s.vh[i].second) + ")^" +
                    std::to_string(j - i);
            i = j;
        }
        break;
    case IngredientKind::HGDD: type = "(" + std::to_string(s.n) + "," + runs(s.sizes) + ")"; break;
    case IngredientKind::MGDD:
    case IngredientKind::QMGDD: type = std::to_string(s.m) + "^" + std::to_string(s.n); break;
    case IngredientKind::BSEC1D: type = std::to_string(s.n); break;
    case IngredientKind::BSEC2D: type = std::to_string(s.n) + "x" + std::to_string(s.m); break;
    }
    return std::string(kind_name(s.kind)) + " " + type + " k=" + std::to_string(s.k) + " lambda=" +
           std::to_string(s.lambda);
}

IngredientSpec parse_spec(std::string_view text) {
    auto w = split_ws(text);
    if (w.size() < 4) throw ParseError("ingredient spec needs '<kind> <type> k=K lambda=L'");
    auto take = [&](const std::string& tok, const std::string& name) {
        if (tok.rfind(name + "=", 0) != 0) throw ParseError("expected " + name + "=..., got '" + tok + "'");
        return parse_int(tok.substr(name.size() + 1));
    };
    int k = take(w[w.size() - 2], "k");
    int lambda = take(w[w.size() - 1], "lambda");
    if (k < 2 || lambda < 1) throw ParseError("k must be at least 2 and lambda positive");
    std::vector<std::string> type(w.begin() + 1, w.end() - 2);
    const std::string& kind = w[0];
    if (kind == "gdd") return gdd_spec(parse_runs(type), k, lambda);
    if (kind == "igdd") {
        std::vector<std::pair<int, int>> vh;
        for (const auto& t : type) {
            auto close = t.find(")^");
            if (t.empty() || t[0] != '(' || close == std::string::npos) throw ParseError("expected (v,h)^u, got '" + t + "'");
            auto comma = t.find(',');
            int v = parse_int(t.substr(1, comma - 1));
            int h = parse_int(t.substr(comma + 1, close - comma - 1));
            int u = parse_int(t.substr(close + 2));
            if (v < 1 || h < 0 || u < 1) throw ParseError("bad IGDD type '" + t + "'");
            vh.insert(vh.end(), std::size_t(u), {v, h});
        }
        return igdd_spec(vh, k, lambda);
    }
    if (kind == "hgdd") {
        std::string joined;
        for (const auto& t : type) joined += (joined.empty() ? "" : " ") + t;
        if (joined.size() < 5 || joined.front() != '(' || joined.back() != ')')
            throw ParseError("expected (n,h^u ...), got '" + joined + "'");
        auto comma = joined.find(',');
        if (comma == std::string::npos) throw ParseError("expected (n,h^u ...), got '" + joined + "'");
        int n = parse_int(joined.substr(1, comma - 1));
        auto holes = parse_runs(split_ws(joined.substr(comma + 1, joined.size() - comma - 2)));
        return hgdd_spec(n, holes, k, lambda);
    }
    if (type.size() != 1) throw ParseError("unexpected type '" + std::string(text) + "'");
    if (kind == "mgdd" || kind == "qmgdd") {
        auto [c, r] = parse_power(type[0]);
        return kind == "mgdd" ? mgdd_spec(r, c, k, lambda) : qmgdd_spec(r, c, k, lambda);
    }
    if (kind == "bsec1d") return bsec1d_spec(parse_int(type[0]), k, lambda);
    if (kind == "bsec2d") {
        auto x = type[0].find('x');
        if (x == std::string::npos) throw ParseError("expected RxC, got '" + type[0] + "'");
        return bsec2d_spec(parse_int(type[0].substr(0, x)), parse_int(type[0].substr(x + 1)), k, lambda);
    }
    throw ParseError("unknown ingredient kind '" + kind + "'");
}

namespace {

DesignParams grid_params(const IngredientSpec& s) {
    DesignParams p;
    p.k = s.k;
    p.lambda = s.lambda;
    if (s.kind == IngredientKind::BSEC1D) {
        p.scheme = AdjacencyScheme::one_dim(1);
        p.r = 1;
        p.c = s.n;
    } else {
        p.scheme = AdjacencyScheme::sb();
        p.r = s.n;
        p.c = s.m;
    }
    return p;
}

StructureDescriptor descriptor(const IngredientSpec& s) {
    switch (s.kind) {
    case IngredientKind::GDD: return gdd_descriptor(s.sizes, s.k, s.lambda);
    case IngredientKind::IGDD: return igdd_descriptor(s.vh, s.k, s.lambda);
    case IngredientKind::MGDD: return mgdd_descriptor(s.n, s.m, s.k, s.lambda);
    case IngredientKind::HGDD: return hgdd_descriptor(s.n, s.sizes, s.k, s.lambda);
    case IngredientKind::QMGDD: return qmgdd_descriptor(s.n, s.m, s.k, s.lambda);
    default: throw DomainError("grid ingredients have no structure descriptor");
    }
}

bool grid_kind(const IngredientSpec& s) { return s.kind == IngredientKind::BSEC1D || s.kind == IngredientKind::BSEC2D; }

} // namespace

PairTarget pair_target(const IngredientSpec& s) {
    return grid_kind(s) ? PairTarget::from_params(grid_params(s)) : PairTarget::from_descriptor(descriptor(s));
}

VerifyReport verify_ingredient(const IngredientSpec& s, const std::vector<IntBlock>& blocks) {
    if (!grid_kind(s)) return verify_structured(blocks, descriptor(s));
    Design d;
    d.params = grid_params(s);
    const int c = d.params.c;
    for (const auto& b : blocks) {
        Block g;
        for (int x : b) g.push_back({x / c, x % c});
        d.blocks.push_back(std::move(g));
    }
    return verify_bsa(d);
}

bool spec_admissible(const IngredientSpec& s, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    const long L = s.lambda;
    if (s.k == 3) {
        switch (s.kind) {
        case IngredientKind::GDD:
            if (uniform(s.sizes)) {
                long g = s.sizes[0], u = long(s.sizes.size());
                if (u < 3) return fail("a 3-GDD needs at least three groups");
                if ((L * g * (u - 1)) % 2 != 0) return fail("lambda g (u-1) is odd");
                if ((L * u * (u - 1) * g * g) % 6 != 0) return fail("lambda u (u-1) g^2 is not 0 mod 6");
                return true;
            }
            break;
        case IngredientKind::IGDD: {
            bool same = std::all_of(s.vh.begin(), s.vh.end(), [&](auto p) { return p == s.vh[0]; });
            if (same && !s.vh.empty()) {
                long m = s.vh[0].first, h = s.vh[0].second, u = long(s.vh.size());
                if (u < 3) return fail("a 3-IGDD needs at least three groups");
                if (m < 2 * h) return fail("group smaller than twice its hole part");
                if ((L * m * (u - 1)) % 2 != 0 || (L * (m - h) * (u - 1)) % 2 != 0) return fail("parity condition fails");
                if ((L * u * (u - 1) * (m * m - h * h)) % 6 != 0) return fail("lambda u (u-1) (m^2-h^2) is not 0 mod 6");
                return true;
            }
            break;
        }
        case IngredientKind::MGDD: {
            long r = s.n, c = s.m;
            if (r < 3 || c < 3) return fail("an MGDD needs at least three rows and columns");
            if ((L * (r - 1) * (c - 1)) % 2 != 0) return fail("lambda (r-1)(c-1) is odd");
            if ((L * r * (r - 1) * c * (c - 1)) % 3 != 0) return fail("lambda r(r-1)c(c-1) is not 0 mod 3");
            return true;
        }
        case IngredientKind::HGDD: {
            long n = s.n;
            if (uniform(s.sizes)) {
                long h = s.sizes[0], u = long(s.sizes.size());
                if (n < 3 || u < 3) return fail("an HGDD needs n, u >= 3");
                if ((L * (u - 1) * (n - 1) * h) % 2 != 0) return fail("lambda (u-1)(n-1)h is odd");
                if ((L * u * (u - 1) * n * (n - 1) * h * h) % 3 != 0) return fail("lambda u(u-1)n(n-1)h^2 is not 0 mod 3");
                return true;
            }
            // type (n, h^u w^1), lambda 1; larger lambda by repetition
            std::vector<int> rest(s.sizes.begin() + 1, s.sizes.end());
            std::vector<int> head(s.sizes.begin(), s.sizes.end() - 1);
            long h = 0, u = 0, w = 0;
            if (uniform(head) && s.sizes.back() != s.sizes.front()) {
                h = head[0];
                u = long(head.size());
                w = s.sizes.back();
            } else if (uniform(rest) && s.sizes.front() != s.sizes.back()) {
                h = rest[0];
                u = long(rest.size());
                w = s.sizes.front();
            } else {
                break;
            }
            if (n < 3 || u < 3) return fail("an HGDD (n, h^u w^1) needs n, u >= 3");
            if (w > h * (u - 1)) return fail("w exceeds h(u-1)");
            if ((h * u * (n - 1)) % 2 != 0) return fail("hu(n-1) is odd");
            if (((n - 1) * (w - h)) % 2 != 0) return fail("(n-1)(w-h) is odd");
            if ((h * u * n * (n - 1) * (h * (u - 1) - w)) % 3 != 0) return fail("hun(n-1)(h(u-1)-w) is not 0 mod 3");
            return true;
        }
        case IngredientKind::BSEC1D:
            if (s.n < 9) return fail("a 1-BSEC with k=3 needs N >= 9");
            if ((L * (s.n - 3)) % 6 != 0) return fail("lambda (N-3) is not 0 mod 6");
            return true;
        case IngredientKind::BSEC2D: {
            auto p = grid_params(s);
            auto rep = admissibility(p);
            if (rep.status != Admissibility::Admissible) return fail(rep.failed.empty() ? rep.note : rep.failed);
            return true;
        }
        case IngredientKind::QMGDD: break;
        }
    }
    if (s.k == 4 && s.lambda == 1 && s.kind == IngredientKind::IGDD && s.vh.size() == 4 &&
        std::all_of(s.vh.begin(), s.vh.end(), [&](auto p) { return p == s.vh[0]; })) {
        auto [v, h] = s.vh[0];
        if (h < 1 || v < 3 * h) return fail("a 4-IGDD of type (v,h)^4 needs v >= 3h, h >= 1");
        if (v == 6 && h == 1) return fail("no 4-IGDD of type (6,1)^4 exists");
        return true;
    }
    if (!pair_target(s).divisible(s.k)) return fail("pair counts are not divisible into blocks");
    return true;
}

std::uint64_t default_search_budget(const IngredientSpec& s) {
    if (s.k != 3) return 20'000'000;
    std::uint64_t v = std::uint64_t(s.points());
    return std::max<std::uint64_t>(2'000'000, 400 * v * v * std::uint64_t(s.lambda));
}

Ingredient search_ingredient(const IngredientSpec& s, std::uint64_t seed, std::uint64_t budget) {
    std::string why;
    if (!spec_admissible(s, &why)) throw InadmissibleSpec(canonical_key(s) + ": " + why);
    auto target = pair_target(s);
    Ingredient out;
    out.spec = s;
    if (s.k == 3) {
        out.blocks = hill_climb_triples(target, seed, budget);
    } else if (s.lambda == 1) {
        out.blocks = exact_cover_blocks(target, s.k, seed, budget);
    } else {
        throw DomainError("search supports k = 3, or lambda = 1 for larger k");
    }
    auto rep = verify_ingredient(s, out.blocks);
    if (!rep.ok) throw StructureError("search produced an invalid " + canonical_key(s) + ": " + rep.summary());
    out.provenance = "search:seed=" + std::to_string(seed);
    return out;
}

std::optional<std::string> cache_dir() {
    const char* d = std::getenv("BSA_CACHE_DIR");
    if (!d || !*d) return std::nullopt;
    return std::string(d);
}

namespace {

std::vector<IntBlock> repeat(const std::vector<IntBlock>& b, int t) {
    std::vector<IntBlock> out;
    out.reserve(b.size() * std::size_t(t));
    for (int i = 0; i < t; ++i) out.insert(out.end(), b.begin(), b.end());
    return out;
}

std::optional<Ingredient> from_catalog(const IngredientSpec& s) {
    if (s.k != 3) return std::nullopt;
    for (const auto& e : catalog()) {
        const auto& p = e.params;
        bool hit = false;
        bool flip = false;
        if (s.kind == IngredientKind::QMGDD && e.qmgdd) hit = p.r == s.n && p.c == s.m;
        if (s.kind == IngredientKind::MGDD && !e.qmgdd && p.scheme.kind == SchemeKind::RowColumn) {
            hit = p.r == s.n && p.c == s.m;
            flip = !hit && p.r == s.m && p.c == s.n;
            hit = hit || flip;
        }
        if (s.kind == IngredientKind::BSEC2D && !e.qmgdd && p.scheme.kind == SchemeKind::SharingBorder) {
            hit = p.r == s.n && p.c == s.m;
            flip = !hit && p.r == s.m && p.c == s.n;
            hit = hit || flip;
        }
        if (!hit || s.lambda % p.lambda != 0) continue;
        Design d = realize(e);
        if (flip) d = transpose(d);
        Ingredient out;
        out.spec = s;
        out.blocks = repeat(to_int_blocks(d), s.lambda / p.lambda);
        out.provenance = "catalog:" + e.id;
        return out;
    }
    return std::nullopt;
}

std::optional<Ingredient> from_formula(const IngredientSpec& s) {
    if (s.k != 3) return std::nullopt;
    Ingredient out;
    out.spec = s;
    if (s.kind == IngredientKind::GDD && s.sizes.size() == 3 && uniform(s.sizes)) {
        out.blocks = repeat(td3_gdd(s.sizes[0]), s.lambda);
        out.provenance = "formula:td3";
        return out;
    }
    if (s.kind == IngredientKind::MGDD && (s.n == 3 || s.m == 3) && s.n >= 3 && s.m >= 3) {
        if (s.n == 3) {
            out.blocks = mgdd3(s.m);
        } else {
            for (const auto& b : mgdd3(s.n)) {
                IntBlock t;
                for (int x : b) t.push_back((x % s.n) * 3 + x / s.n);
                out.blocks.push_back(t);
            }
        }
        out.blocks = repeat(out.blocks, s.lambda);
        out.provenance = "formula:idempotent-latin-square";
        return out;
    }
    if (s.kind == IngredientKind::HGDD && s.n == 3 && uniform(s.sizes) && s.sizes[0] == 2 && s.sizes.size() >= 3) {
        const int u = int(s.sizes.size());
        for (const auto& b : hgdd3_pairs(u)) {
            IntBlock t;
            for (int x : b) {
                int g = x / (2 * u), p = x % (2 * u);
                t.push_back(g * 2 * u + 2 * (p % u) + p / u);
            }
            out.blocks.push_back(t);
        }
        out.blocks = repeat(out.blocks, s.lambda);
        out.provenance = "formula:latin-square-pairs";
        return out;
    }
    return std::nullopt;
}

std::string file_stem(const std::string& key) {
    std::string out;
    for (char ch : key) out += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
    return out;
}

std::string fnv1a(const std::vector<IntBlock>& blocks) {
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& b : blocks) {
        for (int x : b) {
            h ^= std::uint64_t(std::uint32_t(x));
            h *= 1099511628211ull;
        }
        h ^= 0xff;
        h *= 1099511628211ull;
    }
    std::ostringstream o;
    o << std::hex << h;
    return o.str();
}

std::optional<Ingredient> load_cached(const IngredientSpec& s) {
    auto dir = cache_dir();
    if (!dir) return std::nullopt;
    auto key = canonical_key(s);
    std::filesystem::path txt = std::filesystem::path(*dir) / (file_stem(key) + ".txt");
    std::filesystem::path meta = std::filesystem::path(*dir) / (file_stem(key) + ".json");
    std::ifstream in(txt);
    if (!in) return std::nullopt;
    Ingredient out;
    out.spec = s;
    std::string line;
    bool ok = bool(std::getline(in, line)) && line == "ingredient " + key;
    while (ok && std::getline(in, line)) {
        if (line.size() < 2 || line.front() != '{' || line.back() != '}') {
            ok = false;
            break;
        }
        IntBlock b;
        std::stringstream ss(line.substr(1, line.size() - 2));
        try {
            for (std::string tok; std::getline(ss, tok, ',');) b.push_back(parse_int(tok));
        } catch (const ParseError&) {
            ok = false;
        }
        out.blocks.push_back(b);
    }
    if (ok) ok = verify_ingredient(s, out.blocks).ok;
    if (!ok) {
        // stale or corrupt entry: evict and let the caller derive it again
        std::error_code ec;
        std::filesystem::remove(txt, ec);
        std::filesystem::remove(meta, ec);
        return std::nullopt;
    }
    out.provenance = "cache";
    std::ifstream mi(meta);
    if (mi) {
        try {
            auto j = nlohmann::json::parse(mi);
            out.provenance = j.value("source", std::string("cache"));
        } catch (const nlohmann::json::exception&) {
        }
    }
    return out;
}

void store_cached(const Ingredient& g, std::uint64_t seed, std::uint64_t budget) {
    auto dir = cache_dir();
    if (!dir) return;
    std::error_code ec;
    std::filesystem::create_directories(*dir, ec);
    auto key = canonical_key(g.spec);
    auto stem = std::filesystem::path(*dir) / file_stem(key);
    {
        std::ofstream out(stem.string() + ".txt");
        out << "ingredient " << key << "\n";
        for (const auto& b : g.blocks) {
            out << "{";
            for (std::size_t i = 0; i < b.size(); ++i) out << (i ? "," : "") << b[i];
            out << "}\n";
        }
    }
    nlohmann::json j;
    j["spec"] = key;
    j["source"] = g.provenance;
    j["seed"] = seed;
    j["budget"] = budget;
    j["blocks"] = g.blocks.size();
    j["fnv1a"] = fnv1a(g.blocks);
    std::ofstream(stem.string() + ".json") << j.dump(2) << "\n";
}

Ingredient derive(const IngredientSpec& s, std::uint64_t seed) {
    if (auto c = from_catalog(s)) return *c;
    if (auto f = from_formula(s)) return *f;
    if (auto c = load_cached(s)) return *c;
    const std::uint64_t budget = default_search_budget(s);
    std::string last;
    for (std::uint64_t attempt = 0; attempt < 4; ++attempt) {
        try {
            auto g = search_ingredient(s, seed + attempt, budget);
            store_cached(g, seed + attempt, budget);
            return g;
        } catch (const BudgetExceeded& e) {
            last = e.what();
        }
    }
    throw BudgetExceeded(last);
}

} // namespace

Ingredient obtain_ingredient(const IngredientSpec& s, std::uint64_t seed) {
    static std::mutex mu;
    static std::map<std::pair<std::string, std::uint64_t>, Ingredient> memo;
    const auto key = canonical_key(s);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find({key, seed});
        if (it != memo.end()) return it->second;
    }
    // search at the smallest lambda the existence conditions allow, then repeat
    int base = s.lambda;
    for (int d = 1; d <= s.lambda; ++d) {
        if (s.lambda % d != 0) continue;
        IngredientSpec t = s;
        t.lambda = d;
        if (spec_admissible(t)) {
            base = d;
            break;
        }
    }
    IngredientSpec t = s;
    t.lambda = base;
    Ingredient g;
    try {
        g = derive(t, seed);
    } catch (const InadmissibleSpec& e) {
        throw IngredientUnavailable(key + " (" + e.what() + ")");
    } catch (const BudgetExceeded&) {
        throw IngredientUnavailable(key + " (search budget exhausted)");
    } catch (const NotFound&) {
        throw IngredientUnavailable(key + " (search space exhausted)");
    }
    if (base != s.lambda) {
        g.blocks = repeat(g.blocks, s.lambda / base);
        g.provenance += " x" + std::to_string(s.lambda / base);
    }
    g.spec = s;
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(std::make_pair(key, seed), g);
    return g;
}

} // namespace bsa
