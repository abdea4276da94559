#include "doctest.h"

#include <string>

#include "bsa/catalog.hpp"
#include "bsa/construct.hpp"
#include "bsa/errors.hpp"
#include "bsa/ingredients.hpp"
#include "oracle.hpp"

using namespace bsa;

namespace {

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

void check_design(const Design& d) {
    CHECK(verify_bsa(d).ok);
    CHECK(std::int64_t(d.blocks.size()) == expected_block_count(d.params));
    if (d.params.scheme.kind == SchemeKind::SharingBorder) CHECK(oracle::sb_balanced(d));
    if (d.params.scheme.kind == SchemeKind::Island) CHECK(oracle::is_balanced(d));
}

} // namespace

TEST_CASE("scale repeats blocks and multiplies lambda") {
    auto base = realize(catalog_entry("rc-4x3-l1"));
    auto s3 = scale(base, 3);
    CHECK(s3.params.lambda == 3);
    CHECK(s3.blocks.size() == 3 * base.blocks.size());
    CHECK(verify_bsa(s3).ok);
    CHECK(scale(base, 1).blocks == base.blocks);
    CHECK_THROWS_AS(scale(base, 0), DomainError);
}

TEST_CASE("transversal design ingredients have the expected block counts") {
    CHECK(td3_gdd(3).size() == 9);
    CHECK(td3_gdd(10).size() == 100);
    auto g = obtain_ingredient(gdd_spec({4, 4, 4}, 3, 2));
    CHECK(g.blocks.size() == 32);
    CHECK(verify_ingredient(g.spec, g.blocks).ok);
}

TEST_CASE("HGDD fills produce verified grids") {
    SUBCASE("five rows, eleven columns, index 3") {
        auto h = default_ingredient(hgdd_spec(5, {3, 3, 3, 2}, 3, 3));
        auto d = fill_hgdd(h);
        CHECK(d.params.r == 5);
        CHECK(d.params.c == 11);
        CHECK(d.blocks.size() == 1375);
        check_design(d);
    }
    SUBCASE("seven rows, ten columns, index 6") {
        auto h = default_ingredient(hgdd_spec(7, {2, 2, 2, 2, 2}, 3, 6));
        auto d = fill_hgdd(h);
        CHECK(d.blocks.size() == 4550);
        check_design(d);
    }
    SUBCASE("fewer than two holes is rejected") {
        Ingredient one{hgdd_spec(5, {3}, 3, 3), {}, "test"};
        CHECK_THROWS_AS(fill_hgdd(one), PreconditionFail);
        Ingredient none{hgdd_spec(5, {}, 3, 3), {}, "test"};
        CHECK_THROWS_AS(fill_hgdd(none), PreconditionFail);
    }
    SUBCASE("a non-HGDD ingredient is rejected") {
        Ingredient g{gdd_spec({2, 2, 2}, 3, 1), {}, "test"};
        CHECK_THROWS_AS(fill_hgdd(g), PreconditionFail);
    }
}

TEST_CASE("IGDD fills produce verified grids") {
    SUBCASE("three rows, 3c+x with c = 6, x = 3") {
        auto d = design_3c_plus_x(3, 6, 3);
        CHECK(d.params.c == 21);
        CHECK(d.blocks.size() == 1218);
        check_design(d);
    }
    SUBCASE("five rows from the IGDD (4,2)^4") {
        auto g = default_ingredient(igdd_spec({{4, 2}, {4, 2}, {4, 2}, {4, 2}}, 3, 2));
        auto d = fill_igdd(g, 5);
        CHECK(d.params.c == 16);
        CHECK(d.blocks.size() == 2000);
        check_design(d);
    }
    SUBCASE("a provider returning the wrong hole GDD is reported") {
        auto g = default_ingredient(igdd_spec({{4, 2}, {4, 2}, {4, 2}, {4, 2}}, 3, 2));
        IngredientProvider bad = [](const IngredientSpec& s) {
            if (s.kind == IngredientKind::GDD) return obtain_ingredient(gdd_spec({2, 2, 2}, 3, 2));
            return default_ingredient(s);
        };
        CHECK_THROWS_AS(fill_igdd(g, 5, bad), IngredientUnavailable);
    }
    SUBCASE("a failing provider names the outer construction") {
        auto g = default_ingredient(igdd_spec({{4, 2}, {4, 2}, {4, 2}, {4, 2}}, 3, 2));
        IngredientProvider none = [](const IngredientSpec& s) -> Ingredient {
            throw IngredientUnavailable(canonical_key(s));
        };
        try {
            fill_igdd(g, 5, none);
            FAIL("expected IngredientUnavailable");
        } catch (const IngredientUnavailable& e) {
            CHECK(std::string(e.what()).find("igdd") != std::string::npos);
        }
    }
}

TEST_CASE("truncated IGDD") {
    SUBCASE("x = 3 keeps a verified IGDD") {
        auto g = truncate_inflate_igdd(6, 3);
        CHECK(verify_ingredient(g.spec, g.blocks).ok);
        CHECK(g.spec == igdd_spec({{6, 2}, {6, 2}, {6, 2}, {3, 2}}, 3, 2));
    }
    SUBCASE("x = c turns every block into its four triples") {
        auto src = obtain_ingredient(igdd_spec({{6, 2}, {6, 2}, {6, 2}, {6, 2}}, 4, 1));
        auto g = truncate_inflate_igdd(6, 6);
        CHECK(g.blocks.size() == 4 * src.blocks.size());
        CHECK(verify_ingredient(g.spec, g.blocks).ok);
    }
    SUBCASE("out of range parameters") {
        CHECK_THROWS_AS(truncate_inflate_igdd(6, 2), PreconditionFail);
        CHECK_THROWS_AS(truncate_inflate_igdd(6, 7), PreconditionFail);
        CHECK_THROWS_AS(truncate_inflate_igdd(5, 3), PreconditionFail);
    }
}

TEST_CASE("direct families") {
    SUBCASE("four columns") {
        auto d = direct_construction(DirectFamily::FourColumns, 8, 4);
        CHECK(d.blocks.size() == 288);
        check_design(d);
        for (int r : {5, 14, 17, 20, 23, 26, 29, 32}) {
            CAPTURE(r);
            check_design(direct_construction(DirectFamily::FourColumns, r, 4));
        }
        CHECK(starts_with(construct_2bsec_traced(11, 4, 2).route, "catalog:sb-11x4-l2"));
    }
    SUBCASE("seven rows") {
        for (int c = 14; c <= 38; c += 6) {
            CAPTURE(c);
            check_design(direct_construction(DirectFamily::SevenRows, 7, c));
        }
        CHECK(starts_with(construct_2bsec_traced(7, 8, 2).route, "catalog:sb-7x8-l2"));
    }
    SUBCASE("rows one mod six") {
        for (auto [r, c] : {std::pair{13, 8}, {13, 14}, {19, 8}, {19, 20}, {25, 14}}) {
            CAPTURE(r);
            CAPTURE(c);
            check_design(direct_construction(DirectFamily::OneModSix, r, c));
        }
    }
    SUBCASE("four rows, index 6") {
        for (int c : {7, 10, 16, 22, 25, 28, 31, 34, 37}) {
            CAPTURE(c);
            check_design(direct_construction(DirectFamily::FourRowsSix, 4, c));
        }
    }
    SUBCASE("outside the residue classes") {
        CHECK_FALSE(family_covers(DirectFamily::FourColumns, 6, 4));
        CHECK_THROWS_AS(direct_construction(DirectFamily::FourColumns, 6, 4), PreconditionFail);
        CHECK_THROWS_AS(direct_construction(DirectFamily::SevenRows, 7, 9), PreconditionFail);
        CHECK_THROWS_AS(direct_construction(DirectFamily::OneModSix, 9, 8), PreconditionFail);
        CHECK_THROWS_AS(direct_construction(DirectFamily::FourRowsSix, 4, 6), PreconditionFail);
    }
}

TEST_CASE("three-row island designs") {
    auto d9 = construct_island_3row(9);
    CHECK(d9.blocks.size() == 81);
    check_design(d9);
    auto d11 = construct_island_3row(11);
    CHECK(d11.blocks.size() == 132);
    check_design(d11);
    for (int c : {13, 15, 17}) {
        CAPTURE(c);
        check_design(construct_island_3row(c));
    }
    CHECK_THROWS_AS(construct_island_3row(8), PreconditionFail);
    CHECK_THROWS_AS(construct_island_3row(7), PreconditionFail);
}

TEST_CASE("dispatcher examples") {
    CHECK_THROWS_AS(construct_2bsec(4, 3, 5), KnownNonexistent);
    CHECK_THROWS_AS(construct_2bsec(3, 4, 2), KnownNonexistent);
    CHECK_THROWS_AS(construct_2bsec(4, 4, 1), InadmissibleParams);
    CHECK_THROWS_AS(construct_2bsec(2, 4, 1), DomainError);

    auto a = construct_2bsec(6, 6, 2);
    CHECK(a.blocks.size() == 372);
    check_design(a);
    auto b = construct_2bsec(5, 5, 3);
    CHECK(b.blocks.size() == 250);
    check_design(b);
}

TEST_CASE("both orientations are built and agree with the memo") {
    auto x = construct_2bsec(4, 5, 2);
    auto y = construct_2bsec(5, 4, 2);
    CHECK(x.params.r == 4);
    CHECK(y.params.r == 5);
    check_design(x);
    check_design(y);
    CHECK(transpose(x).blocks == y.blocks);
    // a repeated call returns the memoized construction
    CHECK(construct_2bsec_traced(5, 4, 2).route == construct_2bsec_traced(5, 4, 2).route);
    CHECK(construct_2bsec(5, 4, 2).blocks == y.blocks);
}

TEST_CASE("every admissible small grid is constructed; decisions agree with admissibility") {
    for (int r = 3; r <= 12; ++r)
        for (int c = r; c <= 12; ++c)
            for (int lambda = 1; lambda <= 6; ++lambda) {
                CAPTURE(r);
                CAPTURE(c);
                CAPTURE(lambda);
                const auto rep = admissibility({AdjacencyScheme::sb(), r, c, 3, lambda});
                switch (rep.status) {
                case Admissibility::KnownNonexistent:
                    CHECK_THROWS_AS(construct_2bsec(r, c, lambda), KnownNonexistent);
                    break;
                case Admissibility::DivisibilityFail:
                    CHECK_THROWS_AS(construct_2bsec(r, c, lambda), InadmissibleParams);
                    break;
                case Admissibility::Admissible: {
                    auto d = construct_2bsec(r, c, lambda);
                    CHECK(d.params.lambda == lambda);
                    CHECK(verify_bsa(d).ok);
                    CHECK(std::int64_t(d.blocks.size()) == expected_block_count(d.params));
                    break;
                }
                }
            }
}
