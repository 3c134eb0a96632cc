// schur: encode, solve, search and certify modified Schur numbers in [N]^d.

#include "schur/bounds.hpp"
#include "schur/encoder.hpp"
#include "schur/errors.hpp"
#include "schur/lattice.hpp"
#include "schur/render.hpp"
#include "schur/sat.hpp"
#include "schur/search.hpp"
#include "schur/witness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

namespace {

using namespace schur;

enum Exit : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_lower_bound = 2,
    exit_inconclusive = 3,
    exit_invalid_input = 4,
    exit_integrity = 5,
    exit_sat = 10,
    exit_unsat = 20,
};

struct ParamFlags {
    int d = 1;
    int j = 0; // 0: min(d, k-1)
    int k = 3;
    int r = 2;
    bool distinct_summands = false;

    void add(CLI::App* app)
    {
        app->add_option("--d", d, "Lattice dimension")->check(CLI::PositiveNumber);
        app->add_option("--j", j, "Nondegeneracy rank (default min(d, k-1))");
        app->add_option("--k", k, "Tuple length: x_1 + ... + x_{k-1} = x_k")->check(CLI::Range(3, 64));
        app->add_option("--r", r, "Number of colors")->check(CLI::Range(1, 255));
        app->add_flag("--distinct-summands", distinct_summands, "Skip tuples with a repeated summand");
    }

    SchurParams params() const
    {
        SchurParams p;
        p.d = d;
        p.k = k;
        p.r = r;
        p.j = j > 0 ? j : std::min(d, k - 1);
        p.allow_repeated_summands = !distinct_summands;
        return p;
    }
};

struct EngineFlags {
    std::string engine = "internal";
    std::string solver_cmd;
    double budget_s = 0;
    std::uint64_t seed = 0;
    bool symmetry_break = false;

    void add(CLI::App* app)
    {
        app->add_option("--engine", engine, "internal | external")->check(CLI::IsMember({"internal", "external"}));
        app->add_option("--solver-cmd", solver_cmd, "External solver command (default: $SCHUR_SOLVER)");
        app->add_option("--budget-s", budget_s, "Wall-clock budget per solver call, seconds")
            ->check(CLI::PositiveNumber);
        app->add_option("--seed", seed, "Seed for the internal solver (0 = default order)");
        app->add_flag("--symmetry-break", symmetry_break, "Extension: pin point (1,...,1) to color 1");
    }

    EngineConfig config() const
    {
        EngineConfig e;
        e.kind = engine == "external" ? EngineKind::external : EngineKind::internal;
        std::string cmd = solver_cmd;
        if (cmd.empty())
            if (const char* env = std::getenv("SCHUR_SOLVER"))
                cmd = env;
        e.command = split_command(cmd);
        if (e.kind == EngineKind::external && e.command.empty())
            throw InputError("--engine external needs --solver-cmd or SCHUR_SOLVER");
        if (budget_s > 0)
            e.budget.seconds = budget_s;
        e.budget.seed = seed;
        e.break_symmetry = symmetry_break;
        return e;
    }
};

void write_file(const std::string& path, const std::string& bytes)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path);
    out << bytes;
    if (!out)
        throw IoError("failed writing " + path);
}

std::string summary(const SchurWitness& w)
{
    std::string s;
    for (std::size_t i = 0; i < w.summands.size(); ++i)
        s += (i ? " + " : "") + to_string(w.summands[i]);
    return s + " = " + to_string(w.sum);
}

int run_encode(const ParamFlags& pf, int n, const std::string& out, bool symmetry_break)
{
    const SchurParams p = pf.params();
    const auto family = enumerate_tuples(p.family(n), {p.allow_repeated_summands});
    const auto f = encode(family, p.r, {symmetry_break});
    if (out.empty() || out == "-") {
        write_dimacs(f, std::cout, {true});
        std::cerr << "variables " << f.num_vars() << ", clauses " << f.num_clauses() << ", tuples " << family.size()
                  << '\n';
    } else {
        write_dimacs_file(f, out, {true});
        std::cout << "wrote " << out << ": variables " << f.num_vars() << ", clauses " << f.num_clauses()
                  << ", tuples " << family.size() << '\n';
    }
    return exit_ok;
}

int run_solve(const std::string& path, const EngineFlags& ef)
{
    const CnfFormula f = read_dimacs_file(path);
    Budget b;
    if (ef.budget_s > 0)
        b.seconds = ef.budget_s;
    b.seed = ef.seed;
    const SolveResult res = solve_internal(f, b);
    if (const auto* sat = std::get_if<SatResult>(&res)) {
        std::cout << "s SATISFIABLE\n";
        std::string line = "v";
        for (std::size_t v = 1; v <= f.num_vars(); ++v) {
            line += ' ' + std::to_string(sat->model[v] ? static_cast<long long>(v) : -static_cast<long long>(v));
            if (line.size() > 70) {
                std::cout << line << '\n';
                line = "v";
            }
        }
        std::cout << line << " 0\n";
        return exit_sat;
    }
    if (is_unsat(res)) {
        std::cout << "s UNSATISFIABLE\n";
        return exit_unsat;
    }
    std::cout << "c " << std::get<UnknownResult>(res).reason << "\ns UNKNOWN\n";
    return exit_ok;
}

int run_probe(const ParamFlags& pf, int n, const EngineFlags& ef, const std::string& out_dir)
{
    const SchurParams p = pf.params();
    const ProbeResult r = probe(n, p, ef.config());
    std::cout << "N=" << n << " " << to_string(p) << ": " << to_string(r.status) << " (" << r.solver << ", "
              << r.wall_ms << " ms, " << r.tuples << " tuples)\n";
    if (r.certificate && !out_dir.empty())
        std::cout << "certificate " << save_certificate(*r.certificate, out_dir) << '\n';
    if (r.status == ProbeStatus::unknown) {
        std::cout << "reason: " << r.reason << '\n';
        return exit_inconclusive;
    }
    return exit_ok;
}

int run_search(const ParamFlags& pf, const EngineFlags& ef, int n_start, int n_max, bool binary,
               const std::string& out_dir, std::string ledger, const RamseyTable& table)
{
    const SchurParams p = pf.params();
    if (ledger.empty())
        ledger = (std::filesystem::path(out_dir) / "results.csv").string();
    std::filesystem::create_directories(out_dir);
    SearchOptions opt;
    opt.n_start = n_start;
    opt.n_max = n_max;
    opt.binary = binary;
    opt.ramsey = &table;
    opt.on_probe = [&](const ProbeResult& r) {
        std::cerr << "  N=" << r.n << ": " << to_string(r.status) << " (" << r.wall_ms << " ms)\n";
        append_ledger_row(ledger, p, {r.n, r.status, r.solver, r.wall_ms, r.reason});
        if (r.certificate)
            save_certificate(*r.certificate, out_dir);
    };
    std::cerr << "search " << to_string(p) << '\n';
    const SearchOutcome outcome = find_schur_number(p, opt, ef.config());

    if (const auto* ex = std::get_if<ExactOutcome>(&outcome.result)) {
        std::cout << "Exact " << ex->value << '\n';
        std::cout << "certificate " << (std::filesystem::path(out_dir) / certificate_filename(p, ex->value - 1)).string()
                  << '\n';
        try {
            const auto bound = upper_bound_S(p.d, p.j, p.r, p.k, table);
            std::cout << "upper bound R_r(k)^j - 1 = " << bound.value << (bound.from_exact_ramsey ? "" : " (interval)")
                      << '\n';
        } catch (const NotTabulated&) {
        }
        return exit_ok;
    }
    if (const auto* lb = std::get_if<LowerBoundOutcome>(&outcome.result)) {
        std::cout << "LowerBound " << lb->largest_colorable + 1 << " (colorable through N=" << lb->largest_colorable
                  << ")\n";
        std::cout << "certificate "
                  << (std::filesystem::path(out_dir) / certificate_filename(p, lb->largest_colorable)).string() << '\n';
        return exit_lower_bound;
    }
    const auto& inc = std::get<InconclusiveOutcome>(outcome.result);
    std::cout << "Inconclusive at N=" << inc.stalled_at << '\n';
    for (const auto& l : outcome.levels)
        std::cout << "  N=" << l.n << ": " << to_string(l.status) << (l.reason.empty() ? "" : " (" + l.reason + ")")
                  << '\n';
    return exit_inconclusive;
}

int run_verify(const std::string& path)
{
    const Certificate cert = load_certificate(path);
    const CertificateCheck check = verify_certificate(cert);
    if (check.valid) {
        std::cout << "Valid: " << to_string(cert.params) << " N=" << cert.n << '\n';
        return exit_ok;
    }
    std::cout << "Invalid: ";
    if (check.violation)
        std::cout << "monochromatic tuple " << to_string(check.violation->tuple) << " in color "
                  << check.violation->color << '\n';
    else
        std::cout << check.problem << '\n';
    return exit_failure;
}

int run_witness(const ParamFlags& pf, int n, const std::string& coloring_path, std::optional<std::uint64_t> random_seed,
                const std::string& out, const RamseyTable& table)
{
    Coloring chi;
    SchurParams p = pf.params();
    if (!coloring_path.empty()) {
        Certificate c = load_certificate(coloring_path);
        chi = c.coloring;
        p.d = chi.d();
        p.r = chi.r();
        p.k = c.params.k;
        p.j = std::min(p.d, p.k - 1);
    } else {
        if (!random_seed)
            throw InputError("witness needs --coloring or --random");
        const RamseyEntry e = table.lookup(p.r, p.k);
        if (!e.exact())
            throw InputError("R_" + std::to_string(p.r) + "(" + std::to_string(p.k) + ") is not known exactly");
        if (n <= 0) {
            std::int64_t t = 1;
            for (int i = 0; i < p.d; ++i)
                t *= e.upper;
            n = static_cast<int>(t - 1);
        }
        std::mt19937_64 rng(*random_seed);
        std::uniform_int_distribution<int> dist(1, p.r);
        const Box box(n, p.d);
        std::vector<std::uint8_t> colors(box.size());
        for (auto& c : colors)
            c = static_cast<std::uint8_t>(dist(rng));
        chi = Coloring(n, p.d, p.r, std::move(colors));
    }
    const SchurWitness w = extract_schur_witness(chi, p.r, p.k, p.d, table);
    std::cout << "clique";
    for (int v : w.clique)
        std::cout << ' ' << v;
    std::cout << "\nsolution " << summary(w) << "\ncolor " << w.color << "\ndeterminant " << w.determinant << '\n';
    if (!out.empty()) {
        Certificate env;
        env.params = p;
        env.n = chi.n();
        env.coloring = chi;
        env.provenance = {"witness-extractor", random_seed.value_or(0), 0, utc_timestamp()};
        env.witness = w;
        write_file(out, certificate_to_json(env));
        std::cout << "wrote " << out << '\n';
    }
    return exit_ok;
}

int run_render(const std::string& path, const std::string& format, const std::string& out, int cell)
{
    const Certificate cert = load_certificate(path);
    const CertificateCheck check = verify_certificate(cert);
    if (!check.valid)
        throw InputError("refusing to render an invalid certificate");
    std::string bytes;
    if (format == "ascii")
        bytes = render_ascii(cert.coloring);
    else if (format == "ppm")
        bytes = render_ppm(cert.coloring, cell);
    else
        bytes = render_svg(cert.coloring, cell);
    if (out.empty() || out == "-")
        std::cout << bytes;
    else
        write_file(out, bytes);
    return exit_ok;
}

int run_bounds(const ParamFlags& pf, const RamseyTable& table)
{
    const SchurParams p = pf.params();
    try {
        const RamseyEntry e = table.lookup(p.r, p.k);
        std::cout << "R_" << p.r << "(" << p.k << ") ";
        if (e.exact())
            std::cout << "= " << e.lower;
        else
            std::cout << "in [" << e.lower << ", " << e.upper << "]";
        std::cout << "  [" << e.source << "]\n";
        const auto b = upper_bound_S(p.d, p.j, p.r, p.k, table);
        std::cout << "S_{" << p.d << "," << p.j << "}(" << p.r << "," << p.k << ") <= " << b.value
                  << (b.from_exact_ramsey ? "" : "  (from the upper end of the Ramsey interval)") << '\n';
    } catch (const NotTabulated& e) {
        std::cout << e.what() << '\n';
    }
    std::cout << "known Schur numbers:";
    for (const auto& [r, v] : known_schur_numbers())
        std::cout << " S(" << r << ")=" << v;
    std::cout << '\n';
    if (p.r == 3 && p.k >= 3)
        std::cout << "S(3," << p.k << ") = k^3-k^2-k-1 = " << schur_3k_formula(p.k) << '\n';
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Modified Schur numbers in integer lattices"};
    app.require_subcommand(1);
    std::string ramsey_path;
    app.add_option("--ramsey-table", ramsey_path, "ramsey_table JSON overriding the built-in values");

    ParamFlags pf;
    EngineFlags ef;
    int n = 0;
    int n_start = 2;
    int n_max = 0;
    bool binary = false;
    std::string out;
    std::string search_out = "certificates";
    std::string ledger;
    std::string format = "ascii";
    std::string path;
    std::string coloring_path;
    std::uint64_t random_seed = 0;
    int cell = 16;

    auto* enc = app.add_subcommand("encode", "Write the coloring problem for [N]^d as DIMACS CNF");
    pf.add(enc);
    enc->add_option("--n", n, "Box size N")->required()->check(CLI::PositiveNumber);
    enc->add_option("--out", out, "Output path (default stdout)");
    enc->add_flag("--symmetry-break", ef.symmetry_break, "Extension: pin point (1,...,1) to color 1");

    auto* solve = app.add_subcommand("solve", "Solve a DIMACS file with the internal engine (competition output)");
    solve->add_option("cnf", path, "DIMACS CNF file")->required();
    solve->add_option("--budget-s", ef.budget_s, "Wall-clock budget, seconds");
    solve->add_option("--seed", ef.seed, "Seed (0 = default order)");

    auto* prb = app.add_subcommand("probe", "Decide a single box size");
    pf.add(prb);
    ef.add(prb);
    prb->add_option("--n", n, "Box size N")->required()->check(CLI::PositiveNumber);
    prb->add_option("--out", out, "Directory for the certificate");

    auto* search = app.add_subcommand("search", "Find S_{d,j}(r,k) by ascending N");
    pf.add(search);
    ef.add(search);
    search->add_option("--n-start", n_start, "First N to probe")->check(CLI::PositiveNumber);
    search->add_option("--n-max", n_max, "Last N to probe (default R_r(k)^j - 1)");
    search->add_flag("--binary", binary, "Binary search instead of linear ascent");
    search->add_option("--out", search_out, "Certificate directory")->capture_default_str();
    search->add_option("--ledger", ledger, "Results CSV (default <out>/results.csv)");

    auto* verify = app.add_subcommand("verify", "Re-verify a certificate file");
    verify->add_option("certificate", path, "Certificate JSON")->required();

    auto* wit = app.add_subcommand("witness", "Extract a monochromatic nondegenerate solution via the Ramsey graph");
    pf.add(wit);
    wit->add_option("--n", n, "Box size for --random (default R_r(k)^d - 1)");
    auto* col_opt = wit->add_option("--coloring", coloring_path, "Certificate JSON holding the coloring");
    auto* rnd_opt = wit->add_option("--random", random_seed, "Seed for a uniformly random coloring");
    col_opt->excludes(rnd_opt);
    wit->add_option("--out", out, "Write the witness envelope JSON here");

    auto* render = app.add_subcommand("render", "Draw a certificate");
    render->add_option("certificate", path, "Certificate JSON")->required();
    render->add_option("--format", format, "ascii | ppm | svg")->check(CLI::IsMember({"ascii", "ppm", "svg"}));
    render->add_option("--out", out, "Output path (default stdout)");
    render->add_option("--cell", cell, "Pixels per lattice point")->check(CLI::PositiveNumber);

    auto* bounds = app.add_subcommand("bounds", "Print Ramsey values and the upper bound R_r(k)^j - 1");
    pf.add(bounds);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_invalid_input;
    }

    try {
        const RamseyTable table = ramsey_path.empty() ? RamseyTable::builtin() : RamseyTable::load(ramsey_path);
        if (*enc)
            return run_encode(pf, n, out, ef.symmetry_break);
        if (*solve)
            return run_solve(path, ef);
        if (*prb)
            return run_probe(pf, n, ef, out);
        if (*search)
            return run_search(pf, ef, n_start, n_max, binary, search_out, ledger, table);
        if (*verify)
            return run_verify(path);
        if (*wit)
            return run_witness(pf, n, coloring_path, rnd_opt->count() ? std::optional(random_seed) : std::nullopt, out,
                               table);
        if (*render)
            return run_render(path, format, out, cell);
        if (*bounds)
            return run_bounds(pf, table);
    } catch (const IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << '\n';
        return exit_integrity;
    } catch (const InputError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return exit_invalid_input;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_invalid_input;
    } catch (const NotTabulated& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return exit_invalid_input;
    } catch (const RenderError& e) {
        std::cerr << "render error: " << e.what() << '\n';
        return exit_invalid_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_failure;
}
