#include "schur/sat.hpp"

#include "schur/cdcl.hpp"
#include "schur/errors.hpp"

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace schur {

std::string describe(const SolveResult& r)
{
    if (is_sat(r))
        return "SAT";
    if (is_unsat(r))
        return "UNSAT";
    return "UNKNOWN (" + std::get<UnknownResult>(r).reason + ")";
}

bool check_model(const CnfFormula& formula, const std::vector<bool>& model)
{
    if (model.size() < formula.num_vars() + 1)
        return false;
    for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
        bool satisfied = false;
        for (Literal l : formula.clause(i)) {
            const bool v = model[static_cast<std::size_t>(std::abs(l))];
            if ((l > 0) == v) {
                satisfied = true;
                break;
            }
        }
        if (!satisfied)
            return false;
    }
    return true;
}

SolveResult solve_internal(const CnfFormula& formula, const Budget& budget)
{
    cdcl::Solver solver(formula.num_vars());
    for (std::size_t i = 0; i < formula.num_clauses(); ++i)
        if (!solver.add_clause(formula.clause(i)))
            return UnsatResult{};
    cdcl::Limits limits{budget.seconds, budget.conflicts, budget.seed, budget.interrupt};
    switch (solver.solve(limits)) {
    case cdcl::Status::sat: {
        std::vector<bool> model = solver.model();
        if (!check_model(formula, model))
            throw IntegrityError("internal solver returned a model that violates the formula");
        return SatResult{std::move(model)};
    }
    case cdcl::Status::unsat:
        return UnsatResult{};
    case cdcl::Status::unknown:
        break;
    }
    return UnknownResult{solver.stop_reason()};
}

void write_dimacs(const CnfFormula& formula, std::ostream& sink, const DimacsOptions& options)
{
    if (options.comments) {
        const auto& m = formula.meta();
        sink << "c schur lattice coloring N=" << m.n << " d=" << m.d;
        if (m.k)
            sink << " k=" << *m.k;
        if (m.j)
            sink << " j=" << *m.j;
        sink << " r=" << m.r << '\n';
        sink << "c var(p,m) = (rowmajor(p)-1)*(r-1)+m, rowmajor(p) = 1 + sum_t (p_t-1)*N^(d-t)\n";
    }
    sink << "p cnf " << formula.num_vars() << ' ' << formula.num_clauses() << '\n';
    std::string line;
    for (std::size_t i = 0; i < formula.num_clauses(); ++i) {
        line.clear();
        for (Literal l : formula.clause(i)) {
            line += std::to_string(l);
            line += ' ';
        }
        line += "0\n";
        sink << line;
    }
    sink.flush();
    if (!sink)
        throw IoError("failed to write DIMACS output");
}

std::string to_dimacs(const CnfFormula& formula, const DimacsOptions& options)
{
    std::ostringstream os;
    write_dimacs(formula, os, options);
    return os.str();
}

void write_dimacs_file(const CnfFormula& formula, const std::string& path, const DimacsOptions& options)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    write_dimacs(formula, out, options);
}

CnfFormula read_dimacs(std::istream& in)
{
    std::string line;
    std::optional<CnfFormula> f;
    std::size_t expected = 0;
    std::vector<Literal> current;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c' || line[0] == '%')
            continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, cnf;
            long long vars = -1, clauses = -1;
            ls >> p >> cnf >> vars >> clauses;
            if (f || cnf != "cnf" || vars < 0 || clauses < 0)
                throw ParseError("bad DIMACS header: " + line);
            f.emplace(static_cast<std::size_t>(vars));
            expected = static_cast<std::size_t>(clauses);
            continue;
        }
        if (!f)
            throw ParseError("clause before DIMACS header");
        long long lit = 0;
        while (ls >> lit) {
            if (lit == 0) {
                try {
                    f->add_clause(current);
                } catch (const InputError& e) {
                    throw ParseError(std::string("bad clause: ") + e.what());
                }
                current.clear();
            } else {
                current.push_back(static_cast<Literal>(lit));
            }
        }
        if (!ls.eof())
            throw ParseError("unexpected token in line: " + line);
    }
    if (!f)
        throw ParseError("missing DIMACS header");
    if (!current.empty())
        throw ParseError("last clause is not terminated by 0");
    if (f->num_clauses() != expected)
        throw ParseError("header announces " + std::to_string(expected) + " clauses, found " +
                         std::to_string(f->num_clauses()));
    return std::move(*f);
}

CnfFormula read_dimacs_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    return read_dimacs(in);
}

SolveResult parse_solver_output(std::string_view text, std::size_t num_vars)
{
    enum class Seen { none, sat, unsat, unknown } status = Seen::none;
    std::vector<std::int8_t> values(num_vars + 1, 0);
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.rfind("s ", 0) == 0) {
            const std::string s = line.substr(2);
            if (s.rfind("SATISFIABLE", 0) == 0)
                status = Seen::sat;
            else if (s.rfind("UNSATISFIABLE", 0) == 0)
                status = Seen::unsat;
            else
                status = Seen::unknown;
        } else if (line.rfind("v", 0) == 0) {
            std::istringstream ls(line.substr(1));
            long long lit = 0;
            while (ls >> lit) {
                if (lit == 0)
                    continue;
                const auto v = static_cast<std::size_t>(std::llabs(lit));
                if (v >= values.size())
                    values.resize(v + 1, 0);
                const std::int8_t want = lit > 0 ? 1 : -1;
                if (values[v] == -want)
                    throw ParseError("solver output assigns variable " + std::to_string(v) + " both ways");
                values[v] = want;
            }
        }
    }
    switch (status) {
    case Seen::sat: {
        std::vector<bool> model(values.size(), false);
        for (std::size_t v = 1; v < values.size(); ++v)
            model[v] = values[v] > 0;
        return SatResult{std::move(model)};
    }
    case Seen::unsat:
        return UnsatResult{};
    case Seen::unknown:
        return UnknownResult{"solver reported unknown status"};
    case Seen::none:
        break;
    }
    return UnknownResult{"no status line"};
}

std::vector<std::string> split_command(std::string_view command)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(command)};
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

namespace {

class TempFile {
public:
    TempFile()
    {
        const char* dir = std::getenv("TMPDIR");
        std::string tmpl = std::string(dir && *dir ? dir : "/tmp") + "/schur-XXXXXX.cnf";
        std::vector<char> buf(tmpl.begin(), tmpl.end());
        buf.push_back('\0');
        const int fd = ::mkstemps(buf.data(), 4);
        if (fd < 0)
            throw IoError("cannot create temporary file: " + std::string(std::strerror(errno)));
        ::close(fd);
        path_ = buf.data();
    }
    ~TempFile() { ::unlink(path_.c_str()); }
    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct ChildOutput {
    std::string out;
    int exit_code = -1;
    bool timed_out = false;
    bool spawn_failed = false;
};

ChildOutput run_child(const std::vector<std::string>& argv, std::optional<double> seconds)
{
    ChildOutput result;
    int pipefd[2];
    if (::pipe(pipefd) != 0) {
        result.spawn_failed = true;
        return result;
    }
    const pid_t pid = ::fork();
    if (pid < 0) {
        ::close(pipefd[0]);
        ::close(pipefd[1]);
        result.spawn_failed = true;
        return result;
    }
    if (pid == 0) {
        ::dup2(pipefd[1], STDOUT_FILENO);
        ::close(pipefd[0]);
        ::close(pipefd[1]);
        const int devnull = ::open("/dev/null", O_WRONLY);
        if (devnull >= 0)
            ::dup2(devnull, STDERR_FILENO);
        std::vector<char*> args;
        for (const auto& a : argv)
            args.push_back(const_cast<char*>(a.c_str()));
        args.push_back(nullptr);
        ::execvp(args[0], args.data());
        ::_exit(127);
    }
    ::close(pipefd[1]);

    using clock = std::chrono::steady_clock;
    const auto deadline = seconds ? clock::now() + std::chrono::duration_cast<clock::duration>(
                                                       std::chrono::duration<double>(*seconds))
                                  : clock::time_point::max();
    char buf[65536];
    while (true) {
        int wait_ms = -1;
        if (seconds) {
            const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - clock::now()).count();
            if (left <= 0) {
                result.timed_out = true;
                break;
            }
            wait_ms = static_cast<int>(std::min<long long>(left, 1000));
        }
        pollfd pfd{pipefd[0], POLLIN, 0};
        const int rc = ::poll(&pfd, 1, wait_ms);
        if (rc < 0 && errno == EINTR)
            continue;
        if (rc == 0)
            continue;
        const ssize_t n = ::read(pipefd[0], buf, sizeof buf);
        if (n < 0 && errno == EINTR)
            continue;
        if (n <= 0)
            break;
        result.out.append(buf, static_cast<std::size_t>(n));
    }
    ::close(pipefd[0]);
    if (result.timed_out)
        ::kill(pid, SIGKILL);
    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
        if (result.exit_code == 127 && result.out.empty())
            result.spawn_failed = true;
    }
    return result;
}

} // namespace

SolveResult solve_external(const CnfFormula& formula, const std::vector<std::string>& command, const Budget& budget)
{
    if (command.empty())
        return UnknownResult{"no external solver command configured"};
    TempFile cnf;
    write_dimacs_file(formula, cnf.path());
    std::vector<std::string> argv = command;
    argv.push_back(cnf.path());
    const ChildOutput child = run_child(argv, budget.seconds);
    if (child.spawn_failed)
        return UnknownResult{"failed to run external solver '" + command.front() + "'"};
    if (child.timed_out)
        return UnknownResult{"external solver timed out"};
    SolveResult r = parse_solver_output(child.out, formula.num_vars());
    if (auto* sat = std::get_if<SatResult>(&r)) {
        if (sat->model.size() < formula.num_vars() + 1)
            sat->model.resize(formula.num_vars() + 1, false);
        if (!check_model(formula, sat->model))
            throw IntegrityError("external solver '" + command.front() + "' returned a model that violates the formula");
    }
    return r;
}

} // namespace schur
