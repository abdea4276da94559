#include "bsa/ingredients.hpp"

#include <array>
#include <map>
#include <mutex>
#include <string>

#include "bsa/dlx.hpp"
#include "bsa/errors.hpp"

namespace bsa {

std::vector<IntBlock> td3_gdd(int n) {
    if (n < 1) throw DomainError("td3_gdd needs n >= 1");
    std::vector<IntBlock> out;
    out.reserve(std::size_t(n) * std::size_t(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) out.push_back({x, n + y, 2 * n + (x + y) % n});
    return out;
}

static std::vector<std::vector<int>> search_idempotent(int n, std::uint64_t seed) {
    // columns: cell (i,j), row i has symbol s, column j has symbol s
    auto cell = [n](int i, int j) { return i * n + j; };
    auto rs = [n](int i, int s) { return n * n + i * n + s; };
    auto cs = [n](int j, int s) { return 2 * n * n + j * n + s; };
    ExactCover ec(3 * n * n);
    std::vector<std::array<int, 3>> rows;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int s = 0; s < n; ++s) {
                if ((i == j) != (s == i)) continue; // diagonal fixed to the identity
                if (i != j && (s == i || s == j)) continue;
                ec.add_row({cell(i, j), rs(i, s), cs(j, s)});
                rows.push_back({i, j, s});
            }
    auto res = ec.solve_with_restarts(seed, 50'000'000);
    if (!res.rows) throw IngredientUnavailable("idempotent Latin square of order " + std::to_string(n));
    std::vector<std::vector<int>> L(std::size_t(n), std::vector<int>(std::size_t(n), -1));
    for (int r : *res.rows) {
        auto [i, j, s] = rows[std::size_t(r)];
        L[std::size_t(i)][std::size_t(j)] = s;
    }
    return L;
}

std::vector<std::vector<int>> idempotent_latin_square(int n, std::uint64_t seed) {
    if (n < 1 || n == 2) throw IngredientUnavailable("idempotent Latin square of order " + std::to_string(n));
    if (n % 2 == 1) {
        std::vector<std::vector<int>> L(std::size_t(n), std::vector<int>(std::size_t(n), 0));
        const long half = (n + 1) / 2;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) L[std::size_t(i)][std::size_t(j)] = int((long(i + j) * half) % n);
        return L;
    }
    static std::mutex mu;
    static std::map<std::pair<int, std::uint64_t>, std::vector<std::vector<int>>> memo;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, seed);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, search_idempotent(n, seed)).first;
    return it->second;
}

std::vector<IntBlock> mgdd3(int n) {
    if (n == 2) throw IngredientUnavailable("(3,1)-MGDD of type 2^3");
    auto L = idempotent_latin_square(n);
    std::vector<IntBlock> out;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (x != y) out.push_back({x, n + y, 2 * n + L[std::size_t(x)][std::size_t(y)]});
    return out;
}

std::vector<IntBlock> hgdd3_pairs(int u) {
    if (u < 3) throw IngredientUnavailable("(3,1)-HGDD of type (3,2^" + std::to_string(u) + ")");
    auto L = idempotent_latin_square(u);
    const int n = 2 * u;
    std::vector<IntBlock> out;
    for (int x = 0; x < u; ++x)
        for (int y = 0; y < u; ++y) {
            if (x == y) continue;
            int z = L[std::size_t(x)][std::size_t(y)];
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) out.push_back({x + a * u, n + y + b * u, 2 * n + z + ((a + b) % 2) * u});
        }
    return out;
}

} // namespace bsa
