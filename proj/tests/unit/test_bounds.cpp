#include "schur/bounds.hpp"
#include "schur/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace schur;

TEST_CASE("built-in Ramsey values")
{
    CHECK(ramsey_number(2, 3).lower == 6);
    CHECK(ramsey_number(2, 3).exact());
    CHECK(ramsey_number(2, 4).upper == 18);
    CHECK(ramsey_number(3, 3).lower == 17);
    CHECK(ramsey_number(3, 3).exact());

    auto r25 = ramsey_number(2, 5);
    CHECK(r25.lower == 43);
    CHECK(r25.upper == 46);
    CHECK_FALSE(r25.exact());

    auto r43 = ramsey_number(4, 3);
    CHECK(r43.lower == 51);
    CHECK(r43.upper == 62);
    CHECK_FALSE(r43.exact());

    for (const auto& e : RamseyTable::builtin().entries())
        CHECK_FALSE(e.source.empty());
}

TEST_CASE("trivial Ramsey identities")
{
    CHECK(ramsey_number(7, 1).lower == 1);
    CHECK(ramsey_number(7, 2).lower == 2);
    CHECK(ramsey_number(1, 9).lower == 9);
    CHECK(ramsey_number(1, 9).exact());
    CHECK_THROWS_AS(ramsey_number(5, 3), NotTabulated);
    CHECK_THROWS_AS(ramsey_number(2, 9), NotTabulated);
    CHECK_THROWS_AS(ramsey_number(0, 3), InputError);
}

TEST_CASE("upper_bound_S examples")
{
    CHECK(upper_bound_S(2, 2, 2, 3).value == 35);
    CHECK(upper_bound_S(1, 1, 2, 3).value == 5);
    CHECK(upper_bound_S(5, 2, 2, 3).value == 35);
    CHECK(upper_bound_S(3, 3, 2, 4).value == 18 * 18 * 18 - 1);
    CHECK(upper_bound_S(1, 1, 3, 3).value == 16);
    CHECK(upper_bound_S(1, 1, 3, 3).from_exact_ramsey);

    auto inexact = upper_bound_S(2, 2, 4, 3);
    CHECK(inexact.value == 62 * 62 - 1);
    CHECK_FALSE(inexact.from_exact_ramsey);

    CHECK_THROWS_AS(upper_bound_S(1, 2, 2, 3), InputError);
    CHECK_THROWS_AS(upper_bound_S(3, 3, 2, 3), InputError);
    CHECK_THROWS_AS(upper_bound_S(2, 0, 2, 3), InputError);
    CHECK_THROWS_AS(upper_bound_S(2, 2, 9, 3), NotTabulated);
}

TEST_CASE("one-dimensional bound dominates the classical Schur numbers")
{
    for (auto [r, s] : known_schur_numbers()) {
        if (r > 3)
            break;
        CHECK(s <= upper_bound_S(1, 1, r, 3).value);
    }
}

TEST_CASE("closed form for S(3, k)")
{
    CHECK(schur_3k_formula(3) == 14);
    CHECK(schur_3k_formula(4) == 43);
    CHECK(schur_3k_formula(5) == 94);
    CHECK_THROWS_AS(schur_3k_formula(2), InputError);
}

TEST_CASE("classical Schur numbers")
{
    const auto& s = known_schur_numbers();
    CHECK(s.at(1) == 2);
    CHECK(s.at(2) == 5);
    CHECK(s.at(3) == 14);
    CHECK(s.at(4) == 45);
    CHECK(s.at(5) == 161);
}

TEST_CASE("table parsing")
{
    auto t = RamseyTable::parse(R"(// local override
{"format": "ramsey_table", "version": 1,
 "entries": [{"r": 4, "k": 3, "lower": 51, "upper": 51, "source": "hypothetical"}]})");
    CHECK(t.lookup(4, 3).exact());
    CHECK(upper_bound_S(2, 2, 4, 3, t).value == 51 * 51 - 1);
    CHECK(upper_bound_S(2, 2, 4, 3, t).from_exact_ramsey);
    CHECK_THROWS_AS(t.lookup(2, 3), NotTabulated);

    CHECK_THROWS_AS(RamseyTable::parse("{"), ParseError);
    CHECK_THROWS_AS(RamseyTable::parse(R"({"entries": []})"), ParseError);
    CHECK_THROWS_AS(RamseyTable::parse(R"({"format": "ramsey_table", "entries": [{"r": 2, "k": 3, "lower": 7, "upper": 6}]})"),
                    ParseError);
    CHECK_THROWS_AS(RamseyTable::load("/nonexistent/table.json"), IoError);
}

TEST_CASE("shipped table file matches the built-in copy")
{
    auto file = RamseyTable::load(std::string(SCHUR_DATA_DIR) + "/ramsey_table.json");
    REQUIRE(file.entries().size() == RamseyTable::builtin().entries().size());
    for (const auto& e : file.entries()) {
        auto b = RamseyTable::builtin().lookup(e.r, e.k);
        CHECK(b.lower == e.lower);
        CHECK(b.upper == e.upper);
    }
}

TEST_CASE("set replaces an entry")
{
    RamseyTable t = RamseyTable::builtin();
    t.set({2, 5, 44, 46, "test"});
    CHECK(t.lookup(2, 5).lower == 44);
    CHECK(t.entries().size() == RamseyTable::builtin().entries().size());
}
