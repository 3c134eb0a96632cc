#include "schur/bounds.hpp"
#include "schur/encoder.hpp"
#include "schur/errors.hpp"
#include "schur/lattice.hpp"
#include "schur/render.hpp"
#include "schur/sat.hpp"
#include "schur/search.hpp"
#include "schur/witness.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace schur;

namespace {

using PyPoint = std::vector<Coord>;

SchurParams make_params(int d, int j, int k, int r, bool repeated)
{
    SchurParams p;
    p.d = d;
    p.j = j;
    p.k = k;
    p.r = r;
    p.allow_repeated_summands = repeated;
    return p;
}

Coloring make_coloring(int n, int d, int r, const std::vector<int>& colors)
{
    std::vector<std::uint8_t> c;
    c.reserve(colors.size());
    for (int x : colors) {
        if (x < 1 || x > 255)
            throw InputError("color " + std::to_string(x) + " out of range");
        c.push_back(static_cast<std::uint8_t>(x));
    }
    return Coloring(n, d, r, std::move(c));
}

std::vector<int> colors_of(const Coloring& chi) { return {chi.colors().begin(), chi.colors().end()}; }

py::dict tuple_dict(const SchurTuple& t)
{
    py::list summands;
    for (const auto& s : t.summands)
        summands.append(py::tuple(py::cast(s.coords)));
    py::dict out;
    out["summands"] = summands;
    out["sum"] = py::tuple(py::cast(t.sum.coords));
    return out;
}

const char* status_name(ProbeStatus s)
{
    switch (s) {
    case ProbeStatus::colorable:
        return "colorable";
    case ProbeStatus::not_colorable:
        return "not_colorable";
    default:
        return "unknown";
    }
}

EngineConfig engine_config(std::optional<double> seconds, std::uint64_t seed, const std::string& solver_cmd)
{
    EngineConfig e;
    e.budget.seconds = seconds;
    e.budget.seed = seed;
    // internal engine first, escalating to the command on Unknown
    e.command = split_command(solver_cmd);
    return e;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Modified Schur numbers in integer lattices";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<SizeError>(m, "SizeError", PyExc_ValueError);
    py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_RuntimeError);
    py::register_exception<NotTabulated>(m, "NotTabulated", PyExc_LookupError);
    py::register_exception<RenderError>(m, "RenderError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    m.def(
        "rank", [](const std::vector<PyPoint>& rows) { return rank(std::span<const std::vector<Coord>>(rows)); },
        py::arg("vectors"), "Exact rank of integer vectors.");

    m.def(
        "enumerate_tuples",
        [](int n, int d, int k, int j, bool repeated) {
            const auto fam = enumerate_tuples({n, d, k, j}, {repeated});
            py::list out;
            for (std::size_t i = 0; i < fam.size(); ++i)
                out.append(tuple_dict(fam[i]));
            return out;
        },
        py::arg("n"), py::arg("d"), py::arg("k") = 3, py::arg("j") = 1, py::arg("repeated_summands") = true);

    m.def(
        "encode_dimacs",
        [](int n, int d, int k, int j, int r, bool repeated, bool symmetry_break, bool comments) {
            const auto fam = enumerate_tuples({n, d, k, j}, {repeated});
            return to_dimacs(encode(fam, r, {symmetry_break}), {comments});
        },
        py::arg("n"), py::arg("d"), py::arg("k") = 3, py::arg("j") = 1, py::arg("r") = 2,
        py::arg("repeated_summands") = true, py::arg("symmetry_break") = false, py::arg("comments") = false);

    m.def(
        "solve_dimacs",
        [](const std::string& text, std::optional<double> seconds, std::uint64_t seed) {
            std::istringstream in(text);
            const auto f = read_dimacs(in);
            Budget b;
            b.seconds = seconds;
            b.seed = seed;
            SolveResult res;
            {
                py::gil_scoped_release release;
                res = solve_internal(f, b);
            }
            py::dict out;
            if (const auto* sat = std::get_if<SatResult>(&res)) {
                out["status"] = "sat";
                std::vector<int> lits;
                for (std::size_t v = 1; v < sat->model.size(); ++v)
                    lits.push_back(sat->model[v] ? static_cast<int>(v) : -static_cast<int>(v));
                out["model"] = lits;
            } else if (is_unsat(res)) {
                out["status"] = "unsat";
            } else {
                out["status"] = "unknown";
                out["reason"] = std::get<UnknownResult>(res).reason;
            }
            return out;
        },
        py::arg("dimacs"), py::arg("seconds") = py::none(), py::arg("seed") = 0);

    m.def(
        "verify_coloring",
        [](int n, int d, int r, const std::vector<int>& colors, int k, int j, bool repeated) -> py::object {
            const auto chi = make_coloring(n, d, r, colors);
            const auto res = verify_free(chi, enumerate_tuples({n, d, k, j}, {repeated}));
            if (res.is_free())
                return py::none();
            py::dict v = tuple_dict(res.violation->tuple);
            v["index"] = res.violation->index;
            v["color"] = res.violation->color;
            return std::move(v);
        },
        py::arg("n"), py::arg("d"), py::arg("r"), py::arg("colors"), py::arg("k") = 3, py::arg("j") = 1,
        py::arg("repeated_summands") = true,
        "None when the coloring is free, else the first monochromatic tuple.");

    m.def(
        "probe",
        [](int n, int d, int j, int k, int r, bool repeated, std::optional<double> seconds, std::uint64_t seed,
           const std::string& solver_cmd) {
            ProbeResult res;
            {
                py::gil_scoped_release release;
                res = probe(n, make_params(d, j, k, r, repeated), engine_config(seconds, seed, solver_cmd));
            }
            py::dict out;
            out["n"] = res.n;
            out["status"] = status_name(res.status);
            out["solver"] = res.solver;
            out["wall_ms"] = res.wall_ms;
            out["tuples"] = res.tuples;
            if (res.certificate)
                out["certificate"] = certificate_to_json(*res.certificate);
            if (!res.reason.empty())
                out["reason"] = res.reason;
            return out;
        },
        py::arg("n"), py::arg("d"), py::arg("j"), py::arg("k") = 3, py::arg("r") = 2,
        py::arg("repeated_summands") = true, py::arg("seconds") = py::none(), py::arg("seed") = 0,
        py::arg("solver_cmd") = "");

    m.def(
        "find_schur_number",
        [](int d, int j, int k, int r, int n_start, int n_max, bool binary, bool repeated,
           std::optional<double> seconds, const std::string& solver_cmd) {
            SearchOptions opt;
            opt.n_start = n_start;
            opt.n_max = n_max;
            opt.binary = binary;
            SearchOutcome o;
            {
                py::gil_scoped_release release;
                o = find_schur_number(make_params(d, j, k, r, repeated), opt, engine_config(seconds, 0, solver_cmd));
            }
            py::dict out;
            if (const auto* ex = std::get_if<ExactOutcome>(&o.result)) {
                out["outcome"] = "exact";
                out["value"] = ex->value;
                out["certificate"] = certificate_to_json(ex->witness);
            } else if (const auto* lb = std::get_if<LowerBoundOutcome>(&o.result)) {
                out["outcome"] = "lower_bound";
                out["value"] = lb->largest_colorable + 1;
                out["certificate"] = certificate_to_json(lb->witness);
            } else {
                out["outcome"] = "inconclusive";
                out["value"] = std::get<InconclusiveOutcome>(o.result).stalled_at;
            }
            py::list levels;
            for (const auto& l : o.levels)
                levels.append(py::make_tuple(l.n, status_name(l.status)));
            out["levels"] = levels;
            return out;
        },
        py::arg("d"), py::arg("j"), py::arg("k") = 3, py::arg("r") = 2, py::arg("n_start") = 2, py::arg("n_max") = 0,
        py::arg("binary") = false, py::arg("repeated_summands") = true, py::arg("seconds") = py::none(),
        py::arg("solver_cmd") = "");

    m.def(
        "brute_force_oracle",
        [](int n, int d, int j, int k, int r, bool repeated) {
            return status_name(brute_force_oracle(n, make_params(d, j, k, r, repeated)));
        },
        py::arg("n"), py::arg("d"), py::arg("j"), py::arg("k") = 3, py::arg("r") = 2,
        py::arg("repeated_summands") = true);

    m.def(
        "verify_certificate",
        [](const std::string& json_text) {
            const auto check = verify_certificate(certificate_from_json(json_text));
            py::dict out;
            out["valid"] = check.valid;
            if (!check.problem.empty())
                out["problem"] = check.problem;
            if (check.violation)
                out["violation"] = tuple_dict(check.violation->tuple);
            return out;
        },
        py::arg("json_text"));

    m.def(
        "certificate_colors",
        [](const std::string& json_text) {
            const auto c = certificate_from_json(json_text);
            return py::make_tuple(c.n, c.params.d, c.params.r, colors_of(c.coloring));
        },
        py::arg("json_text"), "(n, d, r, row-major colors) of a certificate.");

    m.def(
        "extract_schur_witness",
        [](int n, int d, int r, const std::vector<int>& colors, int k) {
            const auto w = extract_schur_witness(make_coloring(n, d, r, colors), r, k, d);
            py::dict out;
            out["clique"] = w.clique;
            py::list summands;
            for (const auto& s : w.summands)
                summands.append(py::tuple(py::cast(s.coords)));
            out["summands"] = summands;
            out["sum"] = py::tuple(py::cast(w.sum.coords));
            out["color"] = w.color;
            out["determinant"] = w.determinant;
            return out;
        },
        py::arg("n"), py::arg("d"), py::arg("r"), py::arg("colors"), py::arg("k") = 3);

    m.def("vandermonde_det", [](const std::vector<Coord>& nodes) { return vandermonde_det(nodes); }, py::arg("nodes"));

    m.def(
        "ramsey_number",
        [](int r, int k) {
            const auto e = ramsey_number(r, k);
            return py::make_tuple(e.lower, e.upper, e.source);
        },
        py::arg("r"), py::arg("k"), "(lower, upper, source) for R_r(k).");

    m.def(
        "upper_bound_S", [](int d, int j, int r, int k) { return upper_bound_S(d, j, r, k).value; }, py::arg("d"),
        py::arg("j"), py::arg("r"), py::arg("k") = 3);
    m.def("schur_3k_formula", &schur_3k_formula, py::arg("k"));
    m.def("known_schur_numbers", &known_schur_numbers);

    m.def(
        "render",
        [](int n, int d, int r, const std::vector<int>& colors, const std::string& format, int cell) -> py::object {
            const auto chi = make_coloring(n, d, r, colors);
            if (format == "ascii")
                return py::str(render_ascii(chi));
            if (format == "svg")
                return py::str(render_svg(chi, cell));
            if (format == "ppm")
                return py::bytes(render_ppm(chi, cell));
            throw InputError("format must be ascii, ppm or svg");
        },
        py::arg("n"), py::arg("d"), py::arg("r"), py::arg("colors"), py::arg("format") = "ascii",
        py::arg("cell") = 16);
}
