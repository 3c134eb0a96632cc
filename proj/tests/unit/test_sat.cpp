#include "oracles.hpp"

#include "schur/encoder.hpp"
#include "schur/errors.hpp"
#include "schur/sat.hpp"

#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace schur;

namespace {

CnfFormula formula(std::size_t vars, const std::vector<std::vector<int>>& clauses)
{
    CnfFormula f(vars);
    for (const auto& c : clauses)
        f.add_clause(c);
    return f;
}

FamilyParams fp(int n, int d, int k, int j) { return {n, d, k, j}; }

std::vector<std::string> cli_solver() { return {SCHUR_CLI_PATH, "solve"}; }

std::filesystem::path scratch_dir()
{
    auto dir = std::filesystem::temp_directory_path() / "schur_test_sat";
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("internal solver examples")
{
    CHECK(is_sat(solve_internal(formula(1, {}))));
    CHECK(is_unsat(solve_internal(formula(1, {{1}, {-1}}))));
    auto res = solve_internal(formula(2, {{1, 2}, {-1}}));
    REQUIRE(is_sat(res));
    CHECK_FALSE(std::get<SatResult>(res).model[1]);
    CHECK(std::get<SatResult>(res).model[2]);

    CnfFormula empty_clause(1);
    empty_clause.add_clause(std::vector<int>{});
    CHECK(is_unsat(solve_internal(empty_clause)));
}

TEST_CASE("internal solver agrees with a truth table on random 3-CNF")
{
    std::mt19937 rng(7);
    int sat = 0, unsat = 0;
    for (int trial = 0; trial < 600; ++trial) {
        const std::size_t vars = 3 + rng() % 10;
        const std::size_t m = 1 + rng() % (5 * vars);
        std::vector<std::vector<int>> clauses;
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<int> c;
            const int len = 1 + static_cast<int>(rng() % 3);
            for (int t = 0; t < len; ++t) {
                int v = 1 + static_cast<int>(rng() % vars);
                int l = (rng() & 1) ? v : -v;
                if (std::find(c.begin(), c.end(), -l) == c.end())
                    c.push_back(l);
            }
            clauses.push_back(c);
        }
        auto f = formula(vars, clauses);
        std::vector<std::vector<int>> kept;
        for (std::size_t i = 0; i < f.num_clauses(); ++i)
            kept.emplace_back(f.clause(i).begin(), f.clause(i).end());
        const bool expect = oracle::truth_table_sat(vars, kept);
        Budget b;
        b.seed = trial % 3;
        auto res = solve_internal(f, b);
        CHECK(is_sat(res) == expect);
        CHECK(is_unsat(res) == !expect);
        if (is_sat(res))
            CHECK(check_model(f, std::get<SatResult>(res).model));
        (expect ? sat : unsat)++;
    }
    CHECK(sat > 50);
    CHECK(unsat > 50);
}

TEST_CASE("pigeonhole 7 into 6 is refuted")
{
    const int p = 7, h = 6;
    auto var = [&](int i, int j) { return i * h + j + 1; };
    CnfFormula f(p * h);
    for (int i = 0; i < p; ++i) {
        std::vector<int> c;
        for (int j = 0; j < h; ++j)
            c.push_back(var(i, j));
        f.add_clause(c);
    }
    for (int j = 0; j < h; ++j)
        for (int a = 0; a < p; ++a)
            for (int b = a + 1; b < p; ++b)
                f.add_clause(std::vector<int>{-var(a, j), -var(b, j)});
    CHECK(is_unsat(solve_internal(f)));
}

TEST_CASE("conflict budget yields Unknown")
{
    const int p = 10, h = 9;
    auto var = [&](int i, int j) { return i * h + j + 1; };
    CnfFormula f(p * h);
    for (int i = 0; i < p; ++i) {
        std::vector<int> c;
        for (int j = 0; j < h; ++j)
            c.push_back(var(i, j));
        f.add_clause(c);
    }
    for (int j = 0; j < h; ++j)
        for (int a = 0; a < p; ++a)
            for (int b = a + 1; b < p; ++b)
                f.add_clause(std::vector<int>{-var(a, j), -var(b, j)});
    Budget b;
    b.conflicts = 300;
    CHECK(is_unknown(solve_internal(f, b)));
}

TEST_CASE("check_model")
{
    auto f = formula(2, {{1, 2}, {-1}});
    CHECK(check_model(f, {false, false, true}));
    CHECK_FALSE(check_model(f, {false, true, true}));
    CHECK_FALSE(check_model(f, {false, false, false}));
}

TEST_CASE("DIMACS golden file")
{
    auto f = encode(fp(3, 2, 3, 2), 2);
    std::ifstream in(std::string(SCHUR_GOLDEN_DIR) + "/encode_n3_d2_k3_j2_r2.cnf");
    REQUIRE(in);
    std::stringstream golden;
    golden << in.rdbuf();
    CHECK(to_dimacs(f) == golden.str());
}

TEST_CASE("DIMACS write/read round trip")
{
    for (int r = 2; r <= 4; ++r)
        for (int n = 1; n <= 4; ++n) {
            auto f = encode(fp(n, 2, 3, 2), r);
            for (bool comments : {false, true}) {
                std::stringstream s(to_dimacs(f, {comments}));
                auto g = read_dimacs(s);
                CHECK(g.num_vars() == f.num_vars());
                REQUIRE(g.num_clauses() == f.num_clauses());
                for (std::size_t i = 0; i < f.num_clauses(); ++i) {
                    auto a = f.clause(i), b = g.clause(i);
                    CHECK(std::vector<int>(a.begin(), a.end()) == std::vector<int>(b.begin(), b.end()));
                }
            }
        }
    auto f = encode(fp(3, 2, 3, 2), 3);
    auto text = to_dimacs(f, {true});
    CHECK(text.rfind("c ", 0) == 0);
    CHECK(text.find("N=3") != std::string::npos);
}

TEST_CASE("read_dimacs rejects malformed input")
{
    auto parse = [](const std::string& t) {
        std::stringstream s(t);
        return read_dimacs(s);
    };
    CHECK_THROWS_AS(parse("1 2 0\n"), ParseError);
    CHECK_THROWS_AS(parse("p cnf 2 1\n1 3 0\n"), ParseError);
    CHECK_THROWS_AS(parse("p cnf 2 2\n1 2 0\n"), ParseError);
    CHECK_THROWS_AS(parse("p cnf 2 1\n1 x 0\n"), ParseError);
    CHECK_THROWS_AS(parse("p dnf 2 1\n1 0\n"), ParseError);
    CHECK(parse("c hello\np cnf 2 1\n1\n-2 0\n").num_clauses() == 1);
}

TEST_CASE("parse_solver_output examples")
{
    auto s = parse_solver_output("c comment\ns SATISFIABLE\nv 1 -2 0\n", 2);
    REQUIRE(is_sat(s));
    CHECK(std::get<SatResult>(s).model == std::vector<bool>{false, true, false});

    auto multi = parse_solver_output("s SATISFIABLE\nv -1 2\nv 3 0\n", 4);
    REQUIRE(is_sat(multi));
    CHECK(std::get<SatResult>(multi).model == std::vector<bool>{false, false, true, true, false});

    CHECK(is_unsat(parse_solver_output("s UNSATISFIABLE\n")));
    CHECK(is_unknown(parse_solver_output("s UNKNOWN\n")));
    CHECK(is_unknown(parse_solver_output("")));
    CHECK_THROWS_AS(parse_solver_output("s SATISFIABLE\nv 1 -1 0\n", 1), ParseError);
}

TEST_CASE("split_command")
{
    CHECK(split_command("kissat -q") == std::vector<std::string>{"kissat", "-q"});
    CHECK(split_command("  a   b ") == std::vector<std::string>{"a", "b"});
    CHECK(split_command("").empty());
}

TEST_CASE("external solver via the CLI")
{
    auto sat = encode(fp(6, 2, 3, 2), 2);
    auto res = solve_external(sat, cli_solver());
    REQUIRE(is_sat(res));
    CHECK(check_model(sat, std::get<SatResult>(res).model));
    CHECK(is_unsat(solve_external(encode(fp(7, 2, 3, 2), 2), cli_solver())));
}

TEST_CASE("external solver with a wrong model is an integrity error")
{
    auto script = scratch_dir() / "liar.sh";
    {
        std::ofstream out(script);
        out << "#!/bin/sh\necho 's SATISFIABLE'\necho 'v 1 2 0'\nexit 10\n";
    }
    std::filesystem::permissions(script, std::filesystem::perms::owner_all);
    auto f = formula(2, {{-1, -2}});
    CHECK_THROWS_AS(solve_external(f, {script.string()}), IntegrityError);
}

TEST_CASE("external solver failures are Unknown")
{
    auto f = formula(2, {{1, 2}});
    CHECK(is_unknown(solve_external(f, {"/nonexistent/solver-binary"})));

    Budget b;
    b.seconds = 0.3;
    const auto t0 = std::chrono::steady_clock::now();
    auto res = solve_external(f, {"sh", "-c", "sleep 10"}, b);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(is_unknown(res));
    CHECK(secs < 5.0);
    CHECK(is_unknown(solve_external(f, {})));
}
