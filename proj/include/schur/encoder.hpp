#pragma once

#include "schur/lattice.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace schur {

using Literal = std::int32_t;

/// Maps (point, color) pairs to DIMACS variables. Color r has no variable:
/// a point is colored r when all of its r-1 variables are false.
struct VarMap {
    int n = 1;
    int d = 1;
    int r = 2;
    // Family parameters, carried only for DIMACS comments.
    std::optional<int> k;
    std::optional<int> j;

    std::size_t num_vars() const;
    int var_index(const Point& p, int m) const;
    int var_index(std::size_t point_id, int m) const;

    bool operator==(const VarMap&) const = default;
};

/// Clauses stored contiguously; clause i is literals[offsets[i], offsets[i+1]).
class CnfFormula {
public:
    CnfFormula() = default;
    explicit CnfFormula(std::size_t num_vars, VarMap meta = {});

    std::size_t num_vars() const { return num_vars_; }
    std::size_t num_clauses() const { return offsets_.size() - 1; }
    const VarMap& meta() const { return meta_; }

    std::span<const Literal> clause(std::size_t i) const;
    /// Throws InputError on a zero or out-of-range literal, or a clause
    /// containing both l and -l. Repeated literals are dropped.
    void add_clause(std::span<const Literal> lits);
    void add_clause(std::initializer_list<Literal> lits) { add_clause(std::span<const Literal>(lits.begin(), lits.size())); }
    void append(const std::vector<std::vector<Literal>>& clauses);

    std::size_t num_literals() const { return literals_.size(); }

    bool operator==(const CnfFormula& o) const
    {
        return num_vars_ == o.num_vars_ && literals_ == o.literals_ && offsets_ == o.offsets_;
    }

private:
    std::size_t num_vars_ = 0;
    VarMap meta_;
    std::vector<Literal> literals_;
    std::vector<std::size_t> offsets_{0};
};

struct EncodeOptions {
    // Extension: pin point (1,...,1) to color 1 with a unit clause. Not part of
    // the plain encoding; off by default.
    bool break_symmetry = false;
};

/// At-most-one-color clauses, (-phi_i(p) v -phi_j(p)) for i < j <= r-1.
std::vector<std::vector<Literal>> encode_distinctness(const VarMap& meta);

/// Per tuple with distinct point set P: one clause OR_{p in P} -phi_i(p)
/// for each i in [r-1], then one clause OR_i OR_p phi_i(p).
std::vector<std::vector<Literal>> encode_tuple_clauses(const TupleFamily& family, const VarMap& meta);

CnfFormula encode(const FamilyParams& params, int r, const EncodeOptions& options = {},
                  const EnumerateOptions& enumerate = {});
CnfFormula encode(const TupleFamily& family, int r, const EncodeOptions& options = {});

/// model[v] for v in [1, num_vars]; model[0] is ignored.
Coloring decode_model(const std::vector<bool>& model, const VarMap& meta);

/// phi_m(p) := (chi(p) == m).
std::vector<bool> coloring_to_model(const Coloring& chi);

} // namespace schur
