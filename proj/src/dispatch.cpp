#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "bsa/construct.hpp"
#include "bsa/errors.hpp"

namespace bsa {

namespace {

using Builder = std::function<Construction()>;

struct Route {
    std::string name;
    Builder build;
};

DesignParams sb(int r, int c, int lambda) { return {AdjacencyScheme::sb(), r, c, 3, lambda}; }

bool admissible(int r, int c, int lambda) {
    if (r < 3 || c < 3) return false;
    return admissibility(sb(r, c, lambda)).status == Admissibility::Admissible;
}

// smallest index the case analysis builds directly; larger ones are repeats
int base_index(int lambda) {
    switch (lambda % 6) {
    case 1:
    case 5: return 1;
    case 2:
    case 4: return 2;
    case 3: return 3;
    default: return 6;
    }
}

std::vector<int> repeat(int t, int w) { return std::vector<int>(std::size_t(t), w); }

Construction hgdd_route(int n, std::vector<int> widths, int lambda) {
    auto spec = hgdd_spec(n, std::move(widths), 3, lambda);
    auto h = default_ingredient(spec);
    return {fill_hgdd(h), "fill-hgdd[" + canonical_key(spec) + " <- " + h.provenance + "]", {}};
}

Construction build(int r, int c, int lambda);

Construction memo_build(int r, int c, int lambda);

Construction transposed(Construction x) {
    x.design = transpose(x.design);
    return x;
}

// routes producing an a x b design, in priority order within each tier
void routes_for(int a, int b, int lambda, std::vector<Route>& direct, std::vector<Route>& recursive) {
    for (auto f : {DirectFamily::FourColumns, DirectFamily::SevenRows, DirectFamily::OneModSix, DirectFamily::FourRowsSix}) {
        const int index = f == DirectFamily::FourRowsSix ? 6 : 2;
        if (index == lambda && family_covers(f, a, b))
            direct.push_back({"direct:" + family_name(f), [=] { return Construction{direct_construction(f, a, b), "direct:" + family_name(f), {}}; }});
    }
    auto hg = [&](int n, std::vector<int> w, bool swap) {
        recursive.push_back({"fill-hgdd", [=] {
                                 auto x = hgdd_route(n, w, lambda);
                                 return swap ? transposed(x) : x;
                             }});
    };
    if (lambda == 2) {
        if (a % 3 == 0 && a >= 9 && b != 4) hg(b, repeat(a / 3, 3), true);
        if (a % 3 == 2 && b % 12 == 4 && b >= 16)
            recursive.push_back({"fill-igdd", [=] {
                                     auto spec = igdd_spec(std::vector<std::pair<int, int>>(std::size_t(b / 4), {4, 2}), 3, 2);
                                     auto g = default_ingredient(spec);
                                     return Construction{fill_igdd(g, a), "fill-igdd[" + canonical_key(spec) + " <- " + g.provenance + "]", {}};
                                 }});
        for (int x = 3; 3 * 6 + x <= b; ++x) {
            if ((b - x) % 3 != 0) continue;
            const int cc = (b - x) / 3;
            if (x > cc || !admissible(a, cc, 2) || !admissible(a, x, 2)) continue;
            recursive.push_back({"3c+x", [=] {
                                     auto d = design_3c_plus_x(a, cc, x);
                                     return Construction{d, "3c+x[c=" + std::to_string(cc) + ",x=" + std::to_string(x) + "]", {}};
                                 }});
        }
    } else if (lambda == 3) {
        if (a == 5 && b % 6 == 5 && b >= 11) {
            auto w = repeat((b - 2) / 3, 3);
            w.push_back(2);
            hg(5, w, false);
        }
        if (a == 7 && b % 6 == 1 && b >= 19) {
            auto w = repeat((b - 7) / 3, 3);
            w.push_back(7);
            hg(7, w, false);
        }
    } else if (lambda == 6) {
        if ((a == 5 || a == 8) && b % 6 == 2 && b >= 14) hg(a, repeat(b / 2, 2), false);
        if (a == 7 && b % 6 == 4 && b >= 10) hg(7, repeat(b / 2, 2), false);
        if (a == 8 && b % 6 == 5 && b >= 17) {
            auto w = repeat((b - 5) / 3, 3);
            w.push_back(5);
            hg(8, w, false);
        }
    }
}

Construction build(int r, int c, int lambda) {
    std::vector<Route> routes;
    if (auto m = lookup(sb(r, c, lambda)))
        routes.push_back({"catalog", [m] { return Construction{realize(*m), "catalog:" + m->entry->id + (m->transposed ? " transposed" : ""), {}}; }});

    std::vector<Route> direct, recursive;
    routes_for(r, c, lambda, direct, recursive);
    if (r != c) {
        std::vector<Route> d2, r2;
        routes_for(c, r, lambda, d2, r2);
        for (auto& x : d2) direct.push_back({x.name, [f = x.build] { return transposed(f()); }});
        for (auto& x : r2) recursive.push_back({x.name, [f = x.build] { return transposed(f()); }});
    }
    routes.insert(routes.end(), direct.begin(), direct.end());
    routes.insert(routes.end(), recursive.begin(), recursive.end());

    // a smaller index repeated, largest admissible divisor first
    for (int d : {3, 2, 1}) {
        if (d >= lambda || lambda % d != 0 || !admissible(r, c, d)) continue;
        const int t = lambda / d;
        routes.push_back({"repeat", [=] {
                              auto x = memo_build(r, c, d);
                              return Construction{scale(x.design, t), std::to_string(t) + " x " + x.route, {}};
                          }});
    }
    routes.push_back({"search", [=] {
                          auto g = obtain_ingredient(bsec2d_spec(r, c, 3, lambda));
                          Design d;
                          d.params = sb(r, c, lambda);
                          for (const auto& ib : g.blocks) {
                              Block b;
                              for (int p : ib) b.push_back({p / c, p % c});
                              d.blocks.push_back(std::move(b));
                          }
                          return Construction{d, g.provenance, {}};
                      }});

    std::vector<std::string> failures;
    for (const auto& rt : routes) {
        try {
            auto x = rt.build();
            auto rep = verify_bsa(x.design);
            if (!rep.ok) {
                failures.push_back(x.route + ": " + rep.summary());
                continue;
            }
            if (std::int64_t(x.design.blocks.size()) != expected_block_count(x.design.params)) {
                failures.push_back(x.route + ": wrong block count");
                continue;
            }
            x.failures = std::move(failures);
            return x;
        } catch (const Error& e) {
            failures.push_back(rt.name + ": " + e.what());
        }
    }
    std::string all;
    for (const auto& f : failures) all += (all.empty() ? "" : "; ") + f;
    throw IngredientUnavailable(canonical_key(bsec2d_spec(r, c, 3, lambda)) + " [" + all + "]");
}

std::mutex memo_mu;
std::map<std::tuple<int, int, int>, std::shared_ptr<const Construction>> memo;

// memoized on the orientation with r <= c
Construction memo_build(int r, int c, int lambda) {
    const bool flip = r > c;
    const auto key = std::make_tuple(std::min(r, c), std::max(r, c), lambda);
    std::shared_ptr<const Construction> hit;
    {
        std::lock_guard<std::mutex> lock(memo_mu);
        if (auto it = memo.find(key); it != memo.end()) hit = it->second;
    }
    if (!hit) {
        auto made = std::make_shared<const Construction>(build(std::get<0>(key), std::get<1>(key), lambda));
        std::lock_guard<std::mutex> lock(memo_mu);
        hit = memo.emplace(key, made).first->second;
    }
    return flip ? transposed(*hit) : *hit;
}

} // namespace

Construction construct_2bsec_traced(int r, int c, int lambda) {
    if (r < 3 || c < 3) throw DomainError("a 2-BSEC needs r, c >= 3");
    if (lambda < 1) throw DomainError("lambda must be positive");
    const auto rep = admissibility(sb(r, c, lambda));
    if (rep.status == Admissibility::KnownNonexistent)
        throw KnownNonexistent("no 2-BSEC(" + std::to_string(r) + "," + std::to_string(c) + ",3," + std::to_string(lambda) +
                               ") exists: " + rep.note);
    if (rep.status == Admissibility::DivisibilityFail)
        throw InadmissibleParams("2-BSEC(" + std::to_string(r) + "," + std::to_string(c) + ",3," + std::to_string(lambda) +
                                 ") fails " + rep.failed);
    const int base = base_index(lambda);
    auto x = memo_build(r, c, base);
    if (lambda != base) {
        x.design = scale(x.design, lambda / base);
        x.route = std::to_string(lambda / base) + " x " + x.route;
    }
    auto check = verify_bsa(x.design);
    if (!check.ok) throw StructureError("constructed design failed verification: " + check.summary());
    return x;
}

Design construct_2bsec(int r, int c, int lambda) { return construct_2bsec_traced(r, c, lambda).design; }

} // namespace bsa
