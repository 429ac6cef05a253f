#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pgx/report.hpp"

#include <set>

using namespace pgx;

TEST_CASE("fixture inventory matches the expected tables") {
    const Catalog& cat = catalog();
    for (int order : {32, 243}) {
        auto rows = load_expected(order == 32 ? "table3" : "table4");
        auto ids = cat.fixture_ids(order);
        CHECK(ids.size() == rows.size());
        std::set<int> have(ids.begin(), ids.end());
        for (const auto& row : rows)
            CHECK_MESSAGE(have.count(std::stoi(row.key)) == 1,
                          "missing fixture for id " << row.key);
    }
    CHECK(cat.fixture_ids(32).size() == 44);
    CHECK(cat.fixture_ids(243).size() == 60);
}

TEST_CASE("fixtures load consistently with the right orders") {
    const Catalog& cat = catalog();
    for (int order : {32, 243})
        for (int id : cat.fixture_ids(order)) {
            PcPresentation g = cat.fixture_group(order, id);  // checks consistency
            CHECK(g.order() == order);
            CHECK(!derived_subgroup(g).trivial());  // tables list nonabelian groups only
        }
    CHECK_THROWS_AS(cat.fixture_group(32, 1), pgx_error);   // abelian ids not shipped
    CHECK_THROWS_AS(cat.fixture_group(243, 999), pgx_error);
}

TEST_CASE("fixtures are pairwise nonisomorphic") {
    const Catalog& cat = catalog();
    for (int order : {32, 243}) {
        std::vector<std::pair<int, PcPresentation>> groups;
        for (int id : cat.fixture_ids(order))
            groups.push_back({id, cat.fixture_group(order, id)});
        for (std::size_t i = 0; i < groups.size(); ++i)
            for (std::size_t j = i + 1; j < groups.size(); ++j)
                CHECK_MESSAGE(!brute_isomorphic(groups[i].second, groups[j].second),
                              "ids " << groups[i].first << " and " << groups[j].first
                                     << " of order " << order << " are isomorphic");
    }
}

TEST_CASE("auxiliary wedge targets X and Y") {
    const Catalog& cat = catalog();
    PcPresentation x = cat.fixture_named("X");
    CHECK(x.order() == 729);
    CHECK(nilpotency_class(x) == 2);
    PcPresentation y = cat.fixture_named("Y");
    CHECK(y.order() == 243);
    CHECK(nilpotency_class(y) == 2);
    CHECK(!brute_isomorphic(y, cat.fixture_group(243, 2)));
}
