#pragma once

#include "schur/encoder.hpp"
#include "schur/lattice.hpp"
#include "schur/sat.hpp"
#include "schur/witness.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace schur {

/// Everything that defines S_{d,j}(r,k) except the box size.
struct SchurParams {
    int d = 1;
    int j = 1;
    int k = 3;
    int r = 2;
    bool allow_repeated_summands = true;

    FamilyParams family(int n) const { return {n, d, k, j}; }
    bool operator==(const SchurParams&) const = default;
};

std::string to_string(const SchurParams& p);

struct Provenance {
    std::string solver;
    std::uint64_t seed = 0;
    std::int64_t wall_ms = 0;
    std::string created; // ISO 8601, UTC
};

struct Certificate {
    SchurParams params;
    int n = 0;
    Coloring coloring;
    Provenance provenance;
    std::optional<SchurWitness> witness;
};

inline constexpr int certificate_schema_version = 1;

std::string certificate_to_json(const Certificate& cert, int indent = 2);
/// Throws ParseError on malformed input.
Certificate certificate_from_json(std::string_view text);
/// `S_d{d}_j{j}_k{k}_r{r}_N{N}.cert.json`
std::string certificate_filename(const SchurParams& params, int n);
/// Writes into `dir` (created if missing) and returns the file path.
std::string save_certificate(const Certificate& cert, const std::string& dir);
Certificate load_certificate(const std::string& path);

struct CertificateCheck {
    bool valid = false;
    std::string problem;              // set when the certificate is inconsistent
    std::optional<Violation> violation;
};

/// Recomputes the tuple family from the parameters; stored provenance is
/// never consulted.
CertificateCheck verify_certificate(const Certificate& cert);

enum class EngineKind { internal, external };

struct EngineConfig {
    EngineKind kind = EngineKind::internal;
    std::vector<std::string> command; // external solver + arguments
    Budget budget;
    // Internal Unknown falls through to `command` when one is configured.
    bool escalate = true;
    bool break_symmetry = false;
};

enum class ProbeStatus { colorable, not_colorable, unknown };
std::string to_string(ProbeStatus s);

struct ProbeResult {
    int n = 0;
    ProbeStatus status = ProbeStatus::unknown;
    std::optional<Certificate> certificate;
    std::string solver;
    std::string reason; // Unknown only
    std::int64_t wall_ms = 0;
    std::size_t tuples = 0;
    std::size_t num_vars = 0;
    std::size_t num_clauses = 0;
};

/// Decides whether [n]^d has a free r-coloring. Colorable results carry a
/// certificate that has already been re-verified.
ProbeResult probe(int n, const SchurParams& params, const EngineConfig& engine = {});

struct LevelRecord {
    int n = 0;
    ProbeStatus status = ProbeStatus::unknown;
    std::string solver;
    std::int64_t wall_ms = 0;
    std::string reason;
};

struct ExactOutcome {
    int value = 0;
    Certificate witness; // at value - 1
    LevelRecord refutation; // at value
};

/// S >= largest_colorable + 1.
struct LowerBoundOutcome {
    int largest_colorable = 0;
    Certificate witness;
};

struct InconclusiveOutcome {
    int stalled_at = 0;
};

struct SearchOutcome {
    std::variant<ExactOutcome, LowerBoundOutcome, InconclusiveOutcome> result;
    std::vector<LevelRecord> levels; // in probe order
};

inline constexpr int uncapped_n_max = 1 << 16;

struct SearchOptions {
    int n_start = 2;
    int n_max = 0; // 0: R_r(k)^j - 1, or uncapped_n_max when R_r(k) is not tabulated
    bool binary = false;
    const RamseyTable* ramsey = nullptr; // for the default n_max; built-in when null
    std::function<void(const ProbeResult&)> on_probe;
};

SearchOutcome find_schur_number(const SchurParams& params, const SearchOptions& options = {},
                                const EngineConfig& engine = {});

inline constexpr std::uint64_t default_oracle_ceiling = std::uint64_t{1} << 24;

/// Exhaustive search over all r^(N^d) colorings. Throws SizeError above
/// `ceiling` colorings.
ProbeStatus brute_force_oracle(int n, const SchurParams& params, std::uint64_t ceiling = default_oracle_ceiling);

/// Appends one CSV row (with a header for a new file). Calls are serialized.
void append_ledger_row(const std::string& path, const SchurParams& params, const LevelRecord& level);

std::string utc_timestamp();

} // namespace schur
