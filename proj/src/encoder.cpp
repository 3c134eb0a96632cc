#include "schur/encoder.hpp"

#include "schur/errors.hpp"

#include <algorithm>
#include <limits>

namespace schur {

std::size_t VarMap::num_vars() const
{
    return static_cast<std::size_t>(r - 1) * Box(n, d).size();
}

int VarMap::var_index(std::size_t point_id, int m) const
{
    if (m < 1 || m > r - 1)
        throw InputError("var_index: color index " + std::to_string(m) + " outside [1, r-1]");
    if (point_id >= Box(n, d).size())
        throw InputError("var_index: point id out of range");
    return static_cast<int>(point_id * (r - 1) + m);
}

int VarMap::var_index(const Point& p, int m) const
{
    return var_index(Box(n, d).index(p), m);
}

CnfFormula::CnfFormula(std::size_t num_vars, VarMap meta) : num_vars_(num_vars), meta_(std::move(meta))
{
    if (num_vars > static_cast<std::size_t>(std::numeric_limits<Literal>::max()))
        throw SizeError("too many variables for 32-bit literals");
}

std::span<const Literal> CnfFormula::clause(std::size_t i) const
{
    return std::span<const Literal>(literals_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

void CnfFormula::add_clause(std::span<const Literal> lits)
{
    const std::size_t start = literals_.size();
    for (Literal l : lits) {
        if (l == 0 || static_cast<std::size_t>(std::abs(l)) > num_vars_) {
            literals_.resize(start);
            throw InputError("literal " + std::to_string(l) + " out of range");
        }
        auto begin = literals_.begin() + static_cast<std::ptrdiff_t>(start);
        if (std::find(begin, literals_.end(), -l) != literals_.end()) {
            literals_.resize(start);
            throw InputError("clause contains both " + std::to_string(l) + " and its negation");
        }
        if (std::find(begin, literals_.end(), l) == literals_.end())
            literals_.push_back(l);
    }
    offsets_.push_back(literals_.size());
}

void CnfFormula::append(const std::vector<std::vector<Literal>>& clauses)
{
    for (const auto& c : clauses)
        add_clause(c);
}

std::vector<std::vector<Literal>> encode_distinctness(const VarMap& meta)
{
    std::vector<std::vector<Literal>> out;
    if (meta.r < 1)
        throw InputError("encode_distinctness: r must be >= 1");
    const std::size_t points = Box(meta.n, meta.d).size();
    for (std::size_t p = 0; p < points; ++p)
        for (int i = 1; i <= meta.r - 1; ++i)
            for (int j = i + 1; j <= meta.r - 1; ++j)
                out.push_back({-meta.var_index(p, i), -meta.var_index(p, j)});
    return out;
}

std::vector<std::vector<Literal>> encode_tuple_clauses(const TupleFamily& family, const VarMap& meta)
{
    if (!(family.box() == Box(meta.n, meta.d)))
        throw InputError("encode_tuple_clauses: family and variable map disagree on (N, d)");
    std::vector<std::vector<Literal>> out;
    if (meta.r == 1) {
        // No variables: the positive clause of every tuple is empty.
        out.resize(family.size());
        return out;
    }
    std::vector<PointId> pts;
    for (std::size_t t = 0; t < family.size(); ++t) {
        pts.clear();
        for (PointId id : family.ids(t))
            if (std::find(pts.begin(), pts.end(), id) == pts.end())
                pts.push_back(id);
        for (int i = 1; i <= meta.r - 1; ++i) {
            std::vector<Literal> c;
            for (PointId p : pts)
                c.push_back(-meta.var_index(p, i));
            out.push_back(std::move(c));
        }
        std::vector<Literal> pos;
        for (int i = 1; i <= meta.r - 1; ++i)
            for (PointId p : pts)
                pos.push_back(meta.var_index(p, i));
        out.push_back(std::move(pos));
    }
    return out;
}

CnfFormula encode(const TupleFamily& family, int r, const EncodeOptions& options)
{
    if (r < 1)
        throw InputError("encode: r must be >= 1");
    const auto& fp = family.params();
    VarMap meta{fp.n, fp.d, r, fp.k, fp.j};
    CnfFormula f(meta.num_vars(), meta);
    f.append(encode_distinctness(meta));
    f.append(encode_tuple_clauses(family, meta));
    if (options.break_symmetry && r > 1)
        f.add_clause({meta.var_index(std::size_t{0}, 1)});
    return f;
}

CnfFormula encode(const FamilyParams& params, int r, const EncodeOptions& options,
                  const EnumerateOptions& enumerate)
{
    return encode(enumerate_tuples(params, enumerate), r, options);
}

Coloring decode_model(const std::vector<bool>& model, const VarMap& meta)
{
    const std::size_t vars = meta.num_vars();
    if (model.size() < vars + 1)
        throw InputError("decode_model: assignment does not cover every variable");
    Box box(meta.n, meta.d);
    std::vector<std::uint8_t> colors(box.size(), static_cast<std::uint8_t>(meta.r));
    for (std::size_t p = 0; p < box.size(); ++p) {
        int found = 0;
        for (int m = 1; m <= meta.r - 1; ++m) {
            if (!model[meta.var_index(p, m)])
                continue;
            if (found)
                throw IntegrityError("decode_model: point " + to_string(box.point(p)) +
                                     " has two colors set");
            found = m;
        }
        if (found)
            colors[p] = static_cast<std::uint8_t>(found);
    }
    return Coloring(meta.n, meta.d, meta.r, std::move(colors));
}

std::vector<bool> coloring_to_model(const Coloring& chi)
{
    VarMap meta;
    meta.n = chi.n();
    meta.d = chi.d();
    meta.r = chi.r();
    std::vector<bool> model(meta.num_vars() + 1, false);
    for (std::size_t p = 0; p < chi.box().size(); ++p)
        if (chi.at_index(p) < chi.r())
            model[meta.var_index(p, chi.at_index(p))] = true;
    return model;
}

} // namespace schur
