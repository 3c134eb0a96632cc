#include "schur/search.hpp"

#include "schur/bounds.hpp"
#include "schur/errors.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>

namespace schur {

using nlohmann::json;
namespace fs = std::filesystem;

std::string to_string(const SchurParams& p)
{
    std::ostringstream os;
    os << "d=" << p.d << " j=" << p.j << " k=" << p.k << " r=" << p.r;
    return os.str();
}

std::string to_string(ProbeStatus s)
{
    switch (s) {
    case ProbeStatus::colorable:
        return "colorable";
    case ProbeStatus::not_colorable:
        return "not_colorable";
    case ProbeStatus::unknown:
        break;
    }
    return "unknown";
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// ---- certificates -------------------------------------------------------

namespace {

json point_json(const Point& p)
{
    return json(p.coords);
}

Point point_from(const json& j)
{
    return Point(j.get<std::vector<Coord>>());
}

} // namespace

std::string certificate_to_json(const Certificate& cert, int indent)
{
    json doc;
    doc["schema_version"] = certificate_schema_version;
    doc["params"] = {{"d", cert.params.d}, {"j", cert.params.j}, {"k", cert.params.k},
                     {"r", cert.params.r}, {"n", cert.n},
                     {"repeated_summands", cert.params.allow_repeated_summands}};
    std::vector<int> colors(cert.coloring.colors().begin(), cert.coloring.colors().end());
    doc["colors"] = colors;
    doc["provenance"] = {{"solver", cert.provenance.solver},
                         {"seed", cert.provenance.seed},
                         {"wall_ms", cert.provenance.wall_ms},
                         {"created", cert.provenance.created}};
    if (cert.witness) {
        const auto& w = *cert.witness;
        json summands = json::array();
        for (const auto& s : w.summands)
            summands.push_back(point_json(s));
        doc["witness"] = {{"clique", w.clique},
                          {"summands", summands},
                          {"sum", point_json(w.sum)},
                          {"color", w.color},
                          {"determinant", w.determinant}};
    }
    return doc.dump(indent) + "\n";
}

Certificate certificate_from_json(std::string_view text)
{
    try {
        const json doc = json::parse(text);
        const int version = doc.at("schema_version").get<int>();
        if (version != certificate_schema_version)
            throw ParseError("unsupported certificate schema_version " + std::to_string(version));
        const auto& p = doc.at("params");
        Certificate cert;
        cert.params.d = p.at("d").get<int>();
        cert.params.j = p.at("j").get<int>();
        cert.params.k = p.at("k").get<int>();
        cert.params.r = p.at("r").get<int>();
        cert.params.allow_repeated_summands = p.value("repeated_summands", true);
        cert.n = p.at("n").get<int>();
        const auto raw = doc.at("colors").get<std::vector<int>>();
        std::vector<std::uint8_t> colors;
        colors.reserve(raw.size());
        for (int c : raw) {
            if (c < 1 || c > 255)
                throw ParseError("certificate color " + std::to_string(c) + " out of range");
            colors.push_back(static_cast<std::uint8_t>(c));
        }
        cert.coloring = Coloring(cert.n, cert.params.d, cert.params.r, std::move(colors));
        if (doc.contains("provenance")) {
            const auto& pv = doc.at("provenance");
            cert.provenance.solver = pv.value("solver", "");
            cert.provenance.seed = pv.value("seed", std::uint64_t{0});
            cert.provenance.wall_ms = pv.value("wall_ms", std::int64_t{0});
            cert.provenance.created = pv.value("created", "");
        }
        if (doc.contains("witness")) {
            const auto& wj = doc.at("witness");
            SchurWitness w;
            w.clique = wj.at("clique").get<std::vector<int>>();
            for (const auto& s : wj.at("summands"))
                w.summands.push_back(point_from(s));
            w.sum = point_from(wj.at("sum"));
            w.color = wj.at("color").get<int>();
            w.determinant = wj.value("determinant", Coord{0});
            cert.witness = std::move(w);
        }
        return cert;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed certificate: ") + e.what());
    } catch (const InputError& e) {
        throw ParseError(std::string("malformed certificate: ") + e.what());
    }
}

std::string certificate_filename(const SchurParams& p, int n)
{
    std::ostringstream os;
    os << "S_d" << p.d << "_j" << p.j << "_k" << p.k << "_r" << p.r << "_N" << n << ".cert.json";
    return os.str();
}

std::string save_certificate(const Certificate& cert, const std::string& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path path = fs::path(dir) / certificate_filename(cert.params, cert.n);
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << certificate_to_json(cert);
    if (!out)
        throw IoError("failed writing " + path.string());
    return path.string();
}

Certificate load_certificate(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return certificate_from_json(ss.str());
}

CertificateCheck verify_certificate(const Certificate& cert)
{
    CertificateCheck out;
    const auto& p = cert.params;
    if (cert.coloring.n() != cert.n || cert.coloring.d() != p.d || cert.coloring.r() != p.r) {
        out.problem = "coloring dimensions do not match the parameters";
        return out;
    }
    TupleFamily family;
    try {
        family = enumerate_tuples(p.family(cert.n), {p.allow_repeated_summands});
    } catch (const InputError& e) {
        out.problem = e.what();
        return out;
    }
    auto res = verify_free(cert.coloring, family);
    out.violation = std::move(res.violation);
    out.valid = !out.violation.has_value();
    return out;
}

// ---- probing ------------------------------------------------------------

ProbeResult probe(int n, const SchurParams& params, const EngineConfig& engine)
{
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    ProbeResult out;
    out.n = n;

    const TupleFamily family = enumerate_tuples(params.family(n), {params.allow_repeated_summands});
    const CnfFormula formula = encode(family, params.r, {engine.break_symmetry});
    out.tuples = family.size();
    out.num_vars = formula.num_vars();
    out.num_clauses = formula.num_clauses();

    SolveResult res = UnknownResult{"not run"};
    if (engine.kind == EngineKind::internal) {
        out.solver = "internal-cdcl";
        res = solve_internal(formula, engine.budget);
        if (is_unknown(res) && engine.escalate && !engine.command.empty()) {
            out.solver = "external:" + engine.command.front();
            res = solve_external(formula, engine.command, engine.budget);
        }
    } else {
        out.solver = engine.command.empty() ? "external" : "external:" + engine.command.front();
        res = solve_external(formula, engine.command, engine.budget);
    }
    out.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - start).count();

    if (auto* sat = std::get_if<SatResult>(&res)) {
        Certificate cert;
        cert.params = params;
        cert.n = n;
        cert.coloring = decode_model(sat->model, formula.meta());
        cert.provenance = {out.solver, engine.budget.seed, out.wall_ms, utc_timestamp()};
        const auto check = verify_free(cert.coloring, family);
        if (!check.is_free())
            throw IntegrityError("decoded coloring is not free: " + to_string(check.violation->tuple));
        out.status = ProbeStatus::colorable;
        out.certificate = std::move(cert);
    } else if (is_unsat(res)) {
        out.status = ProbeStatus::not_colorable;
    } else {
        out.status = ProbeStatus::unknown;
        out.reason = std::get<UnknownResult>(res).reason;
    }
    return out;
}

namespace {

class Search {
public:
    Search(const SchurParams& p, const SearchOptions& o, const EngineConfig& e) : params_(p), opt_(o), engine_(e) {}

    ProbeResult run(int n)
    {
        ProbeResult r = probe(n, params_, engine_);
        levels_.push_back({n, r.status, r.solver, r.wall_ms, r.reason});
        if (opt_.on_probe)
            opt_.on_probe(r);
        return r;
    }

    SearchOutcome finish(std::variant<ExactOutcome, LowerBoundOutcome, InconclusiveOutcome> v)
    {
        return SearchOutcome{std::move(v), std::move(levels_)};
    }

    // `refuted` is NotColorable; walk down until a colorable level is found.
    SearchOutcome descend(int refuted)
    {
        LevelRecord refutation = levels_.back();
        for (int n = refuted - 1; n >= 1; --n) {
            ProbeResult r = run(n);
            if (r.status == ProbeStatus::unknown)
                return finish(InconclusiveOutcome{n});
            if (r.status == ProbeStatus::colorable)
                return finish(ExactOutcome{n + 1, std::move(*r.certificate), refutation});
            refutation = levels_.back();
        }
        throw IntegrityError("no box size down to N=1 is colorable");
    }

    SearchOutcome linear(int lo, int hi)
    {
        std::optional<Certificate> last;
        for (int n = lo; n <= hi; ++n) {
            ProbeResult r = run(n);
            if (r.status == ProbeStatus::unknown)
                return finish(InconclusiveOutcome{n});
            if (r.status == ProbeStatus::colorable) {
                last = std::move(r.certificate);
                continue;
            }
            if (!last) {
                if (n == 1)
                    throw IntegrityError("[1]^d has no free coloring");
                return descend(n);
            }
            return finish(ExactOutcome{n, std::move(*last), levels_.back()});
        }
        const int largest = last->n;
        return finish(LowerBoundOutcome{largest, std::move(*last)});
    }

    SearchOutcome binary(int lo, int hi)
    {
        // invariant: levels < good_n colorable (if any), levels >= bad_n not
        std::optional<Certificate> good;
        std::optional<LevelRecord> bad;
        int low = lo, high = hi;
        while (low <= high) {
            const int mid = low + (high - low) / 2;
            ProbeResult r = run(mid);
            if (r.status == ProbeStatus::unknown)
                return finish(InconclusiveOutcome{mid});
            if (r.status == ProbeStatus::colorable) {
                good = std::move(r.certificate);
                low = mid + 1;
            } else {
                bad = levels_.back();
                high = mid - 1;
            }
        }
        if (!bad) {
            const int largest = good->n;
            return finish(LowerBoundOutcome{largest, std::move(*good)});
        }
        if (good && good->n == bad->n - 1)
            return finish(ExactOutcome{bad->n, std::move(*good), *bad});
        if (bad->n == 1)
            throw IntegrityError("[1]^d has no free coloring");
        return descend(bad->n);
    }

private:
    SchurParams params_;
    SearchOptions opt_;
    EngineConfig engine_;
    std::vector<LevelRecord> levels_;
};

} // namespace

SearchOutcome find_schur_number(const SchurParams& params, const SearchOptions& options, const EngineConfig& engine)
{
    int n_max = options.n_max;
    if (n_max <= 0) {
        std::optional<SchurUpperBound> bound;
        try {
            bound = upper_bound_S(params.d, params.j, params.r, params.k,
                                  options.ramsey ? *options.ramsey : RamseyTable::builtin());
        } catch (const NotTabulated&) {
            // Linear ascent stops at the first refuted level, so it can run uncapped.
            if (options.binary)
                throw InputError("find_schur_number: R_r(k) is not tabulated; binary search needs n_max");
        }
        if (bound && bound->value > uncapped_n_max)
            throw InputError("find_schur_number: default upper bound " + std::to_string(bound->value) +
                             " is too large; pass n_max");
        n_max = bound ? static_cast<int>(bound->value) : uncapped_n_max;
    }
    if (options.n_start < 1 || options.n_start > n_max)
        throw InputError("find_schur_number: need 1 <= n_start <= n_max");
    // validates (d, j, k) early
    enumerate_tuples(params.family(1), {params.allow_repeated_summands});
    Search s(params, options, engine);
    return options.binary ? s.binary(options.n_start, n_max) : s.linear(options.n_start, n_max);
}

ProbeStatus brute_force_oracle(int n, const SchurParams& params, std::uint64_t ceiling)
{
    const TupleFamily family = enumerate_tuples(params.family(n), {params.allow_repeated_summands});
    const std::size_t points = family.box().size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < points; ++i) {
        if (total > ceiling / static_cast<std::uint64_t>(params.r))
            throw SizeError("brute_force_oracle: more than " + std::to_string(ceiling) + " colorings");
        total *= static_cast<std::uint64_t>(params.r);
    }
    std::vector<std::uint8_t> colors(points, 1);
    while (true) {
        bool free = true;
        for (std::size_t t = 0; t < family.size() && free; ++t) {
            auto row = family.ids(t);
            bool mono = true;
            for (std::size_t s = 1; s < row.size() && mono; ++s)
                mono = colors[row[s]] == colors[row[0]];
            free = !mono;
        }
        if (free)
            return ProbeStatus::colorable;
        std::size_t i = 0;
        while (i < points && colors[i] == params.r)
            colors[i++] = 1;
        if (i == points)
            return ProbeStatus::not_colorable;
        ++colors[i];
    }
}

void append_ledger_row(const std::string& path, const SchurParams& p, const LevelRecord& level)
{
    static std::mutex mu;
    std::lock_guard lock(mu);
    const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out)
        throw IoError("cannot append to " + path);
    if (fresh)
        out << "d,j,k,r,n,outcome,solver,wall_ms,created\n";
    out << p.d << ',' << p.j << ',' << p.k << ',' << p.r << ',' << level.n << ',' << to_string(level.status) << ','
        << level.solver << ',' << level.wall_ms << ',' << utc_timestamp() << '\n';
    if (!out)
        throw IoError("failed writing " + path);
}

} // namespace schur
