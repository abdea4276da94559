#include "bsa/grid.hpp"

#include <algorithm>
#include <numeric>

#include "bsa/errors.hpp"

namespace bsa {

AdjacencyScheme AdjacencyScheme::one_dim(int m) {
    if (m < 1) throw DomainError("OneDim radius must be >= 1");
    return {SchemeKind::OneDim, m};
}

std::string scheme_name(const AdjacencyScheme& s) {
    switch (s.kind) {
    case SchemeKind::RowColumn: return "rc";
    case SchemeKind::SharingBorder: return "sb";
    case SchemeKind::Island: return "is";
    case SchemeKind::OneDim: return s.m == 1 ? "1d" : "1d:" + std::to_string(s.m);
    }
    return "?";
}

AdjacencyScheme parse_scheme(const std::string& s) {
    if (s == "rc") return AdjacencyScheme::rc();
    if (s == "sb") return AdjacencyScheme::sb();
    if (s == "is") return AdjacencyScheme::is();
    if (s == "1d") return AdjacencyScheme::one_dim(1);
    if (s.rfind("1d:", 0) == 0) {
        std::size_t used = 0;
        int m = 0;
        try {
            m = std::stoi(s.substr(3), &used);
        } catch (const std::exception&) {
            throw ParseError("bad scheme: " + s);
        }
        if (used != s.size() - 3) throw ParseError("bad scheme: " + s);
        return AdjacencyScheme::one_dim(m);
    }
    throw ParseError("bad scheme: " + s);
}

void DesignParams::validate() const {
    if (k < 2) throw DomainError("block size must be >= 2");
    if (lambda < 1) throw DomainError("index must be >= 1");
    if (scheme.kind == SchemeKind::OneDim) {
        if (r != 1) throw DomainError("OneDim designs use r = 1");
        if (c <= 2 * scheme.m + 1) throw DomainError("population too small for OneDim radius");
        return;
    }
    // IS/SB/RC adjacency is only defined for r, c >= 3
    if (r < 3 || c < 3) throw DomainError("grid schemes need r, c >= 3");
}

void canonicalize(Design& d) {
    for (auto& b : d.blocks) std::sort(b.begin(), b.end());
    std::sort(d.blocks.begin(), d.blocks.end());
}

static int mod(int a, int n) {
    int x = a % n;
    return x < 0 ? x + n : x;
}

GridPoint diff(const GridPoint& q, const GridPoint& p, int r, int c) {
    return {mod(q.row - p.row, r), mod(q.col - p.col, c)};
}

static void check_bounds(const GridPoint& p, int r, int c) {
    if (p.row < 0 || p.row >= r || p.col < 0 || p.col >= c)
        throw BoundsError("point (" + std::to_string(p.row) + "," + std::to_string(p.col) +
                          ") outside " + std::to_string(r) + "x" + std::to_string(c));
}

static bool is_pm1(int d, int n) { return d == 1 || d == n - 1; }

bool adjacent(const AdjacencyScheme& s, const GridPoint& p, const GridPoint& q, int r, int c) {
    check_bounds(p, r, c);
    check_bounds(q, r, c);
    if (p == q) throw DomainError("adjacency is defined on distinct units");
    GridPoint d = diff(q, p, r, c);
    switch (s.kind) {
    case SchemeKind::RowColumn:
        return d.row == 0 || d.col == 0;
    case SchemeKind::SharingBorder:
        return (d.row == 0 && is_pm1(d.col, c)) || (d.col == 0 && is_pm1(d.row, r));
    case SchemeKind::Island:
        return (d.row == 0 || is_pm1(d.row, r)) && (d.col == 0 || is_pm1(d.col, c));
    case SchemeKind::OneDim: {
        // linear index over the r x c array, r = 1 in practice
        int n = r * c;
        int a = p.row * c + p.col, b = q.row * c + q.col;
        int x = mod(b - a, n);
        return x <= s.m || x >= n - s.m;
    }
    }
    return false;
}

std::vector<GridPoint> forbidden_difference_set(const AdjacencyScheme& s, int r, int c,
                                                ForbiddenVariant v) {
    std::vector<GridPoint> out;
    if (v == ForbiddenVariant::Qmgdd) {
        for (int j = 0; j < c; ++j) out.push_back({0, j});
        out.push_back({1 % r, 0});
        out.push_back({mod(-1, r), 0});
    } else {
        out.push_back({0, 0});
        GridPoint origin{0, 0};
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) {
                GridPoint q{i, j};
                if (q == origin) continue;
                if (adjacent(s, origin, q, r, c)) out.push_back(q);
            }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

static std::int64_t nonadjacent_degree(const DesignParams& p) {
    std::int64_t n = std::int64_t(p.r) * p.c;
    switch (p.scheme.kind) {
    case SchemeKind::RowColumn: return std::int64_t(p.r - 1) * (p.c - 1);
    case SchemeKind::SharingBorder: return n - 5;
    case SchemeKind::Island: return n - 9;
    case SchemeKind::OneDim: return n - 2 * p.scheme.m - 1;
    }
    return 0;
}

std::int64_t nonadjacent_pairs(const DesignParams& p) {
    std::int64_t n = std::int64_t(p.r) * p.c;
    return n * nonadjacent_degree(p) / 2;
}

std::int64_t expected_block_count(const DesignParams& p) {
    std::int64_t num = std::int64_t(p.lambda) * nonadjacent_pairs(p);
    std::int64_t den = std::int64_t(p.k) * (p.k - 1) / 2;
    if (num % den != 0)
        throw InadmissibleCount("lambda*P = " + std::to_string(num) + " not divisible by C(k,2) = " +
                                std::to_string(den));
    return num / den;
}

bool congruences_hold(const DesignParams& p, std::string* failed) {
    std::int64_t n = std::int64_t(p.r) * p.c;
    std::int64_t d = nonadjacent_degree(p);
    std::int64_t lam = p.lambda, k = p.k;
    auto fail = [&](const std::string& what) {
        if (failed) *failed = what;
        return false;
    };
    if (p.scheme.kind == SchemeKind::OneDim && p.scheme.m == 1 && p.k == 3) {
        if (n < 9) return fail("N >= 9");
        if ((lam * (n - 3)) % 6 != 0) return fail("lambda(N-3) = 0 mod 6");
        return true;
    }
    if ((lam * d) % (k - 1) != 0) {
        if (k == 3) {
            switch (p.scheme.kind) {
            case SchemeKind::SharingBorder: return fail("lambda(rc-5) = 0 mod 2");
            case SchemeKind::Island: return fail("lambda(rc-9) = 0 mod 2");
            case SchemeKind::RowColumn: return fail("lambda(r-1)(c-1) = 0 mod 2");
            default: break;
            }
        }
        return fail("replication: lambda*" + std::to_string(d) + " = 0 mod " + std::to_string(k - 1));
    }
    if ((lam * n * d) % (k * (k - 1)) != 0) {
        if (k == 3) {
            switch (p.scheme.kind) {
            case SchemeKind::SharingBorder: return fail("lambda rc(rc-5) = 0 mod 6");
            case SchemeKind::Island: return fail("lambda rc(rc-9) = 0 mod 6");
            case SchemeKind::RowColumn: return fail("lambda r(r-1)c(c-1) = 0 mod 3");
            default: break;
            }
        }
        return fail("block count: lambda*" + std::to_string(n * d) + " = 0 mod " +
                    std::to_string(k * (k - 1)));
    }
    return true;
}

AdmissibilityReport admissibility(const DesignParams& p) {
    AdmissibilityReport rep;
    int scan = p.k == 3 ? 6 : p.k * (p.k - 1);
    for (int l = 1; l <= scan; ++l) {
        DesignParams q = p;
        q.lambda = l;
        if (congruences_hold(q)) {
            rep.minimal_lambda = l;
            break;
        }
    }
    std::string failed;
    if (!congruences_hold(p, &failed)) {
        rep.status = Admissibility::DivisibilityFail;
        rep.failed = failed;
    }
    bool three_by_four = (p.r == 3 && p.c == 4) || (p.r == 4 && p.c == 3);
    if (p.scheme.kind == SchemeKind::SharingBorder && p.k == 3 && three_by_four) {
        rep.status = Admissibility::KnownNonexistent;
        rep.note = "no 2-BSEC(4,3,3,lambda) exists for any lambda";
    }
    bool six_by_four = (p.r == 6 && p.c == 4) || (p.r == 4 && p.c == 6);
    if (p.scheme.kind == SchemeKind::RowColumn && p.k == 4 && p.lambda == 1 && six_by_four) {
        rep.known_exception = true;
        rep.note = "(4,1)-MGDD of type 4^6 does not exist";
    }
    return rep;
}

std::string to_string(Admissibility a) {
    switch (a) {
    case Admissibility::Admissible: return "admissible";
    case Admissibility::DivisibilityFail: return "divisibility-fail";
    case Admissibility::KnownNonexistent: return "known-nonexistent";
    }
    return "?";
}

} // namespace bsa
