#include "doctest.h"

#include <map>
#include <set>

#include "bsa/catalog.hpp"
#include "bsa/design_io.hpp"
#include "bsa/embedded.hpp"
#include "bsa/errors.hpp"
#include "oracle.hpp"

using namespace bsa;


TEST_CASE("catalog files round-trip byte for byte") {
    auto files = embedded_files("catalog/");
    REQUIRE(files.size() == 51);
    for (const auto& f : files) {
        CAPTURE(f);
        auto text = embedded_file(f);
        CHECK(serialize_entry(parse_entry(text)) == std::string(text));
    }
}

TEST_CASE("catalog ids are unique and match their parameters") {
    std::set<std::string> ids;
    for (const auto& e : catalog()) {
        CHECK(ids.insert(e.id).second);
        std::string want = entry_kind(e) + "-" + std::to_string(e.params.r) + "x" + std::to_string(e.params.c) +
                           "-l" + std::to_string(e.params.lambda);
        CHECK(e.id == want);
    }
}

TEST_CASE("every catalog entry realizes to a verified design") {
    for (const auto& e : catalog()) {
        CAPTURE(e.id);
        Design d;
        REQUIRE_NOTHROW(d = realize(e));
        auto rep = verify_entry(e, d);
        CHECK_MESSAGE(rep.ok, rep.summary());
        if (!e.qmgdd) {
            CHECK(std::int64_t(d.blocks.size()) == expected_block_count(e.params));
            if (e.params.scheme.kind == SchemeKind::SharingBorder) CHECK(oracle::sb_balanced(d));
        }
    }
}

TEST_CASE("block counts of selected entries") {
    CHECK(realize(catalog_entry("sb-7x8-l2")).blocks.size() == 952);
    CHECK(realize(catalog_entry("sb-5x10-l2")).blocks.size() == 750);
    CHECK(realize(catalog_entry("sb-4x9-l2")).blocks.size() == 372);
    CHECK(realize(catalog_entry("rc-4x3-l1")).blocks.size() == 12);
}

TEST_CASE("lookup by parameters") {
    auto sb = AdjacencyScheme::sb();
    auto m = lookup({sb, 7, 8, 3, 2});
    REQUIRE(m);
    CHECK(!m->transposed);
    CHECK(m->entry->id == "sb-7x8-l2");

    auto t = lookup({sb, 8, 7, 3, 2});
    REQUIRE(t);
    CHECK(t->transposed);
    auto d = realize(*t);
    CHECK(d.params.r == 8);
    CHECK(d.params.c == 7);
    CHECK(verify_bsa(d).ok);

    CHECK(!lookup({sb, 9, 9, 3, 1}));
    CHECK(!lookup({sb, 5, 2, 3, 1})); // QMGDD entries never match a 2-BSA lookup
}

TEST_CASE("filtered listing") {
    CatalogFilter f;
    f.kind = "qmgdd";
    CHECK(list_entries(f).size() == 5);
    f = {};
    f.r = 3;
    for (const auto& id : list_entries(f)) CHECK(catalog_entry(id).params.r == 3);
    f = {};
    f.lambda = 6;
    CHECK(list_entries(f).size() == 7);
    CHECK_THROWS_AS(catalog_entry("sb-99x99-l1"), NotFound);
}

TEST_CASE("develop-only entries are difference families") {
    for (const auto& e : catalog()) {
        if (e.parts.size() != 1 || !std::holds_alternative<DevelopPart>(e.parts[0].body)) continue;
        const auto& dp = std::get<DevelopPart>(e.parts[0].body);
        if (dp.action != RowColCyclic{}) continue;
        CAPTURE(e.id);
        BaseBlockFamily fam{e.params.r, e.params.c, dp.blocks, dp.action};
        auto params = e.params;
        params.lambda /= e.parts[0].mult;
        auto rep = check_difference_family(fam, params, e.qmgdd ? ForbiddenVariant::Qmgdd : ForbiddenVariant::Scheme);
        CHECK(rep.ok);
    }
}

TEST_CASE("malformed entries are rejected") {
    CHECK_THROWS_AS(parse_entry("entry x\n"), ParseError);
    CHECK_THROWS_AS(parse_entry("entry x\ndesign sb 3 3 3\n"), ParseError);
    CHECK_THROWS_AS(parse_entry("entry x\ndesign sb 3 3 3 1\n(0,0)(1,1)(2,2)\n"), ParseError);
    CHECK_THROWS_AS(parse_entry("entry x\ndesign sb 3 3 3 1\npart develop +2 +1\n"), ParseError);
    CHECK_THROWS_AS(parse_entry("entry x\ndesign sb 3 3 3 1\npart orbit-fill gdd diag\n"), ParseError);
    CHECK_THROWS_AS(parse_entry("entry x\ndesign sb 3 3 3 1\npart develop +1 +1 x0\n"), ParseError);
}

TEST_CASE("design text round trip") {
    auto d = realize(catalog_entry("sb-4x9-l2"));
    auto back = parse_design(format_design(d));
    CHECK(back.params == d.params);
    CHECK(back.blocks == d.blocks);
    CHECK_THROWS_AS(parse_design("sb 4 9 3\n"), ParseError);
    CHECK_THROWS_AS(parse_design("sb 4 9 3 2\n(0,0)(1,"), ParseError);
}

TEST_CASE("transpose swaps the grid") {
    auto d = realize(catalog_entry("sb-4x9-l2"));
    auto t = transpose(d);
    CHECK(t.params.r == 9);
    CHECK(t.params.c == 4);
    CHECK(verify_bsa(t).ok);
    CHECK(transpose(t).blocks == d.blocks);
}
