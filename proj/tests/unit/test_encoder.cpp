#include "oracles.hpp"

#include "schur/encoder.hpp"
#include "schur/errors.hpp"
#include "schur/sat.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace schur;

using Clauses = std::vector<std::vector<Literal>>;

namespace {

VarMap vm(int n, int d, int r)
{
    VarMap m;
    m.n = n;
    m.d = d;
    m.r = r;
    return m;
}

FamilyParams fp(int n, int d, int k, int j) { return {n, d, k, j}; }

} // namespace

TEST_CASE("var_index examples")
{
    CHECK(vm(6, 2, 2).var_index(Point({1, 1}), 1) == 1);
    CHECK(vm(6, 2, 2).var_index(Point({6, 6}), 1) == 36);
    CHECK(vm(17, 2, 3).var_index(Point({1, 1}), 2) == 2);
    CHECK_THROWS_AS(vm(6, 2, 2).var_index(Point({1, 1}), 2), InputError);
    CHECK_THROWS_AS(vm(6, 2, 3).var_index(Point({1, 1}), 0), InputError);
    CHECK_THROWS_AS(vm(6, 2, 3).var_index(Point({7, 1}), 1), InputError);
}

TEST_CASE("var_index is a bijection onto [1, (r-1)N^d]")
{
    for (int r = 2; r <= 4; ++r)
        for (int d = 1; d <= 3; ++d) {
            VarMap m = vm(3, d, r);
            Box b(3, d);
            std::set<int> seen;
            for (std::size_t p = 0; p < b.size(); ++p)
                for (int c = 1; c < r; ++c) {
                    const int v = m.var_index(b.point(p), c);
                    CHECK(v >= 1);
                    CHECK(static_cast<std::size_t>(v) <= m.num_vars());
                    // decode the index back
                    CHECK(static_cast<std::size_t>((v - 1) / (r - 1)) == p);
                    CHECK((v - 1) % (r - 1) + 1 == c);
                    seen.insert(v);
                }
            CHECK(seen.size() == m.num_vars());
        }
}

TEST_CASE("encode_distinctness examples")
{
    CHECK(encode_distinctness(vm(5, 2, 2)).empty());
    CHECK(encode_distinctness(vm(2, 1, 3)) == Clauses({{-1, -2}, {-3, -4}}));
    CHECK(encode_distinctness(vm(1, 1, 4)) == Clauses({{-1, -2}, {-1, -3}, {-2, -3}}));
}

TEST_CASE("encode_tuple_clauses examples")
{
    auto fam = enumerate_tuples(fp(3, 2, 3, 2));
    SUBCASE("r = 2")
    {
        auto c = encode_tuple_clauses(fam, vm(3, 2, 2));
        REQUIRE(c.size() == 6);
        // (1,1) -> 1, (1,2) -> 2, (2,3) -> 6
        CHECK(c[0] == std::vector<Literal>({-1, -2, -6}));
        CHECK(c[1] == std::vector<Literal>({1, 2, 6}));
    }
    SUBCASE("r = 3")
    {
        auto c = encode_tuple_clauses(fam, vm(3, 2, 3));
        REQUIRE(c.size() == 9);
        CHECK(c[0] == std::vector<Literal>({-1, -3, -11}));
        CHECK(c[1] == std::vector<Literal>({-2, -4, -12}));
        CHECK(c[2] == std::vector<Literal>({1, 3, 11, 2, 4, 12}));
    }
    SUBCASE("empty family")
    {
        CHECK(encode_tuple_clauses(enumerate_tuples(fp(2, 2, 3, 2)), vm(2, 2, 2)).empty());
    }
    SUBCASE("repeated summand collapses to distinct points")
    {
        auto c = encode_tuple_clauses(enumerate_tuples(fp(2, 2, 3, 1)), vm(2, 2, 2));
        CHECK(c == Clauses({{-1, -4}, {1, 4}}));
    }
    CHECK_THROWS_AS(encode_tuple_clauses(fam, vm(4, 2, 2)), InputError);
}

TEST_CASE("encode examples")
{
    auto f0 = encode(fp(2, 2, 3, 2), 2);
    CHECK(f0.num_vars() == 4);
    CHECK(f0.num_clauses() == 0);
    CHECK(is_sat(solve_internal(f0)));

    auto f1 = encode(fp(3, 2, 3, 2), 2);
    CHECK(f1.num_vars() == 9);
    CHECK(f1.num_clauses() == 6);

    CHECK(is_unsat(solve_internal(encode(fp(7, 2, 3, 2), 2))));
    CHECK(is_sat(solve_internal(encode(fp(6, 2, 3, 2), 2))));
}

TEST_CASE("symmetry-break extension adds one unit clause")
{
    auto plain = encode(fp(4, 2, 3, 2), 3);
    auto pinned = encode(fp(4, 2, 3, 2), 3, {true});
    REQUIRE(pinned.num_clauses() == plain.num_clauses() + 1);
    auto last = pinned.clause(pinned.num_clauses() - 1);
    CHECK(std::vector<Literal>(last.begin(), last.end()) == std::vector<Literal>({1}));
}

TEST_CASE("one color: every tuple yields an empty clause")
{
    auto f = encode(fp(2, 1, 3, 1), 1);
    CHECK(f.num_vars() == 0);
    CHECK(f.num_clauses() == 1);
    CHECK(f.clause(0).empty());
    CHECK(is_unsat(solve_internal(f)));
    CHECK(is_sat(solve_internal(encode(fp(1, 1, 3, 1), 1))));
}

TEST_CASE("clause count formula")
{
    std::mt19937 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 2);
        const int k = 3 + static_cast<int>(rng() % 2);
        const int j = 1 + static_cast<int>(rng() % std::min(d, k - 1));
        const int n = 1 + static_cast<int>(rng() % (d == 1 ? 12 : 6));
        const int r = 1 + static_cast<int>(rng() % 4);
        auto fam = enumerate_tuples(fp(n, d, k, j));
        auto f = encode(fam, r);
        const std::size_t points = Box(n, d).size();
        CHECK(f.num_clauses() == points * (r - 1) * (r - 2) / 2 + static_cast<std::size_t>(r) * fam.size());
        CHECK(f.num_vars() == static_cast<std::size_t>(r - 1) * points);
    }
}

TEST_CASE("formula literals are in range and never complementary within a clause")
{
    auto f = encode(fp(5, 2, 3, 2), 4);
    for (std::size_t i = 0; i < f.num_clauses(); ++i) {
        auto c = f.clause(i);
        CHECK_FALSE(c.empty());
        std::set<Literal> s(c.begin(), c.end());
        CHECK(s.size() == c.size());
        for (Literal l : c) {
            CHECK(l != 0);
            CHECK(static_cast<std::size_t>(std::abs(l)) <= f.num_vars());
            CHECK(s.count(-l) == 0);
        }
    }
}

TEST_CASE("CnfFormula rejects malformed clauses")
{
    CnfFormula f(3);
    CHECK_THROWS_AS(f.add_clause({1, 0}), InputError);
    CHECK_THROWS_AS(f.add_clause({4}), InputError);
    CHECK_THROWS_AS(f.add_clause({2, -2}), InputError);
    CHECK(f.num_clauses() == 0);
    f.add_clause({1, 1, -3});
    REQUIRE(f.num_clauses() == 1);
    CHECK(f.clause(0).size() == 2);
}

TEST_CASE("decode_model examples")
{
    CHECK(decode_model(std::vector<bool>{false, true}, vm(1, 1, 2)).at(Point({1})) == 1);
    CHECK(decode_model(std::vector<bool>{false, false}, vm(1, 1, 2)).at(Point({1})) == 2);
    // r = 3, one point: phi_1 false, phi_2 true
    CHECK(decode_model(std::vector<bool>{false, false, true}, vm(1, 1, 3)).at(Point({1})) == 2);
    CHECK(decode_model(std::vector<bool>{false, false, false}, vm(1, 1, 3)).at(Point({1})) == 3);
    CHECK_THROWS_AS(decode_model(std::vector<bool>{false, true, true}, vm(1, 1, 3)), IntegrityError);
    CHECK_THROWS_AS(decode_model(std::vector<bool>{false}, vm(1, 1, 3)), InputError);
}

TEST_CASE("free colorings satisfy the encoding and models decode to free colorings")
{
    std::mt19937 rng(17);
    int free_seen = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 2);
        const int r = 2 + static_cast<int>(rng() % 2);
        auto fam = enumerate_tuples(fp(n, 2, 3, 2));
        std::vector<std::uint8_t> colors(Box(n, 2).size());
        for (auto& c : colors)
            c = static_cast<std::uint8_t>(1 + rng() % r);
        Coloring chi(n, 2, r, colors);
        auto f = encode(fam, r);
        const bool is_free = verify_free(chi, fam).is_free();
        CHECK(check_model(f, coloring_to_model(chi)) == is_free);
        free_seen += is_free;
    }
    CHECK(free_seen > 0);

    for (int n = 1; n <= 6; ++n) {
        auto fam = enumerate_tuples(fp(n, 2, 3, 2));
        auto f = encode(fam, 2);
        auto res = solve_internal(f);
        REQUIRE(is_sat(res));
        auto chi = decode_model(std::get<SatResult>(res).model, f.meta());
        CHECK(verify_free(chi, fam).is_free());
    }
}
