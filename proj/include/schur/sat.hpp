#pragma once

#include "schur/encoder.hpp"

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace schur {

struct SatResult {
    std::vector<bool> model; // model[v] for v in [1, num_vars]; model[0] unused
};
struct UnsatResult {};
struct UnknownResult {
    std::string reason;
};

using SolveResult = std::variant<SatResult, UnsatResult, UnknownResult>;

inline bool is_sat(const SolveResult& r) { return std::holds_alternative<SatResult>(r); }
inline bool is_unsat(const SolveResult& r) { return std::holds_alternative<UnsatResult>(r); }
inline bool is_unknown(const SolveResult& r) { return std::holds_alternative<UnknownResult>(r); }
std::string describe(const SolveResult& r);

struct Budget {
    std::optional<double> seconds;
    std::optional<std::uint64_t> conflicts;
    std::uint64_t seed = 0;
    const std::atomic<bool>* interrupt = nullptr;
};

/// True iff `model` satisfies every clause. Independent of any solver.
bool check_model(const CnfFormula& formula, const std::vector<bool>& model);

/// Embedded CDCL solver. A Sat model is re-checked with check_model before
/// being returned; a failing check throws IntegrityError.
SolveResult solve_internal(const CnfFormula& formula, const Budget& budget = {});

struct DimacsOptions {
    // Leading "c ..." lines with the (N, d, k, j, r) metadata and the
    // variable numbering rule.
    bool comments = false;
};

void write_dimacs(const CnfFormula& formula, std::ostream& sink, const DimacsOptions& options = {});
std::string to_dimacs(const CnfFormula& formula, const DimacsOptions& options = {});
void write_dimacs_file(const CnfFormula& formula, const std::string& path, const DimacsOptions& options = {});

CnfFormula read_dimacs(std::istream& in);
CnfFormula read_dimacs_file(const std::string& path);

/// Interprets the stdout of a DIMACS-conformant solver. Variables missing
/// from the v-lines default to false.
SolveResult parse_solver_output(std::string_view text, std::size_t num_vars = 0);

/// Writes the formula to a temporary file and runs `<command...> <path>`,
/// killing the child when the wall-clock budget runs out.
SolveResult solve_external(const CnfFormula& formula, const std::vector<std::string>& command,
                           const Budget& budget = {});

std::vector<std::string> split_command(std::string_view command);

} // namespace schur
