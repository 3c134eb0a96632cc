#include "schur/lattice.hpp"

#include "schur/errors.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace schur {

namespace {

using Wide = __int128;

Coord narrow(Wide v)
{
    if (v > std::numeric_limits<Coord>::max() || v < std::numeric_limits<Coord>::min())
        throw SizeError("integer overflow in exact elimination");
    return static_cast<Coord>(v);
}

// Fraction-free elimination in place. Returns the rank; `sign` tracks row
// swaps so that the last pivot is the determinant for square full-rank input.
std::size_t bareiss(std::vector<std::vector<Coord>>& a, std::size_t cols, int& sign)
{
    const std::size_t m = a.size();
    Coord prev = 1;
    std::size_t row = 0;
    sign = 1;
    for (std::size_t col = 0; col < cols && row < m; ++col) {
        std::size_t p = row;
        while (p < m && a[p][col] == 0)
            ++p;
        if (p == m)
            continue;
        if (p != row) {
            std::swap(a[p], a[row]);
            sign = -sign;
        }
        const Coord pivot = a[row][col];
        for (std::size_t i = row + 1; i < m; ++i) {
            const Coord lead = a[i][col];
            for (std::size_t c = col + 1; c < cols; ++c) {
                Wide v = Wide(pivot) * a[i][c] - Wide(lead) * a[row][c];
                a[i][c] = narrow(v / prev);
            }
            a[i][col] = 0;
        }
        prev = pivot;
        ++row;
    }
    return row;
}

} // namespace

std::string to_string(const Point& p)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.coords.size(); ++i)
        os << (i ? "," : "") << p.coords[i];
    os << ')';
    return os.str();
}

std::string to_string(const SchurTuple& t)
{
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < t.summands.size(); ++i)
        os << (i ? "," : "") << to_string(t.summands[i]);
    os << "}->" << to_string(t.sum);
    return os.str();
}

Box::Box(int n_, int d_) : n(n_), d(d_)
{
    if (n < 1 || d < 1)
        throw InputError("box requires N >= 1 and d >= 1");
    Wide s = 1;
    for (int t = 0; t < d; ++t) {
        s *= n;
        if (s > std::numeric_limits<PointId>::max())
            throw SizeError("box [N]^d has too many points");
    }
    size_ = static_cast<std::size_t>(s);
}

bool Box::contains(const Point& p) const
{
    if (p.dim() != static_cast<std::size_t>(d))
        return false;
    return std::all_of(p.coords.begin(), p.coords.end(), [&](Coord c) { return c >= 1 && c <= n; });
}

std::size_t Box::index(const Point& p) const
{
    if (!contains(p))
        throw InputError("point " + to_string(p) + " outside [" + std::to_string(n) + "]^" + std::to_string(d));
    std::size_t idx = 0;
    for (Coord c : p.coords)
        idx = idx * n + static_cast<std::size_t>(c - 1);
    return idx;
}

Point Box::point(std::size_t index) const
{
    if (index >= size_)
        throw InputError("point index out of range");
    std::vector<Coord> c(d);
    for (int t = d - 1; t >= 0; --t) {
        c[t] = static_cast<Coord>(index % n) + 1;
        index /= n;
    }
    return Point(std::move(c));
}

std::vector<Point> SchurTuple::distinct_points() const
{
    std::vector<Point> out;
    out.reserve(summands.size() + 1);
    auto push = [&](const Point& p) {
        if (std::find(out.begin(), out.end(), p) == out.end())
            out.push_back(p);
    };
    for (const auto& s : summands)
        push(s);
    push(sum);
    return out;
}

TupleFamily::TupleFamily(FamilyParams params, std::vector<PointId> ids)
    : params_(params), box_(params.n, params.d), ids_(std::move(ids))
{
    if (params_.k < 2 || ids_.size() % params_.k != 0)
        throw InputError("tuple id list does not match k");
    count_ = ids_.size() / params_.k;
}

std::span<const PointId> TupleFamily::ids(std::size_t i) const
{
    return std::span<const PointId>(ids_).subspan(i * params_.k, params_.k);
}

SchurTuple TupleFamily::operator[](std::size_t i) const
{
    auto row = ids(i);
    SchurTuple t;
    for (std::size_t s = 0; s + 1 < row.size(); ++s)
        t.summands.push_back(box_.point(row[s]));
    t.sum = box_.point(row.back());
    return t;
}

std::size_t rank(std::span<const std::vector<Coord>> vectors)
{
    if (vectors.empty())
        return 0;
    const std::size_t cols = vectors.front().size();
    if (cols == 0)
        throw InputError("rank: vectors must have dimension >= 1");
    for (const auto& v : vectors)
        if (v.size() != cols)
            throw InputError("rank: mismatched vector dimensions");
    std::vector<std::vector<Coord>> a(vectors.begin(), vectors.end());
    int sign = 1;
    return bareiss(a, cols, sign);
}

std::size_t rank(std::span<const Point> vectors)
{
    std::vector<std::vector<Coord>> rows;
    rows.reserve(vectors.size());
    for (const auto& p : vectors)
        rows.push_back(p.coords);
    return rank(rows);
}

Coord determinant(std::vector<std::vector<Coord>> rows)
{
    const std::size_t n = rows.size();
    if (n == 0)
        return 1;
    for (const auto& r : rows)
        if (r.size() != n)
            throw InputError("determinant: matrix is not square");
    int sign = 1;
    if (bareiss(rows, n, sign) < n)
        return 0;
    return sign * rows[n - 1][n - 1];
}

bool is_j_nondegenerate(std::span<const Point> summands, int j)
{
    if (summands.empty())
        throw InputError("is_j_nondegenerate: no summands");
    const auto d = static_cast<int>(summands.front().dim());
    if (j < 1 || j > std::min<int>(d, static_cast<int>(summands.size())))
        throw InputError("is_j_nondegenerate: j out of range");
    return rank(summands) >= static_cast<std::size_t>(j);
}

namespace {

struct Enumerator {
    const FamilyParams& p;
    const EnumerateOptions& opt;
    Box box;
    int parts; // k - 1
    std::vector<std::vector<Coord>> chosen;
    std::vector<PointId> chosen_ids;
    std::vector<PointId> out;

    Enumerator(const FamilyParams& params, const EnumerateOptions& options)
        : p(params), opt(options), box(params.n, params.d), parts(params.k - 1),
          chosen(parts, std::vector<Coord>(params.d)), chosen_ids(parts)
    {
    }

    bool nondegenerate() const
    {
        if (p.j <= 1)
            return true;
        return rank(chosen) >= static_cast<std::size_t>(p.j);
    }

    void emit(PointId sum_id)
    {
        if (!opt.allow_repeated_summands)
            for (int s = 1; s < parts; ++s)
                if (chosen_ids[s] == chosen_ids[s - 1])
                    return;
        if (!nondegenerate())
            return;
        out.insert(out.end(), chosen_ids.begin(), chosen_ids.end());
        out.push_back(sum_id);
    }

    // Chooses summand `slot` with id >= `min_id` so that the summands still
    // to be placed can make up `rest`.
    void place(int slot, std::size_t min_id, const std::vector<Coord>& rest, PointId sum_id)
    {
        const int left = parts - slot; // including this slot
        if (left == 1) {
            for (Coord c : rest)
                if (c < 1 || c > p.n)
                    return;
            std::size_t id = 0;
            for (Coord c : rest)
                id = id * p.n + static_cast<std::size_t>(c - 1);
            if (id < min_id)
                return;
            chosen[slot] = rest;
            chosen_ids[slot] = static_cast<PointId>(id);
            emit(sum_id);
            return;
        }
        std::vector<Coord> next(p.d);
        for (std::size_t id = min_id; id < box.size(); ++id) {
            Point q = box.point(id);
            // the remaining summands are lexicographically >= q, so their
            // first coordinates are all >= q_1
            if (Coord(left) * q.coords[0] > rest[0])
                break;
            bool ok = true;
            for (int t = 0; t < p.d; ++t) {
                next[t] = rest[t] - q.coords[t];
                // each of the remaining left-1 summands needs a coordinate in [1, N]
                if (next[t] < left - 1 || next[t] > Coord(left - 1) * p.n) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                continue;
            chosen[slot] = q.coords;
            chosen_ids[slot] = static_cast<PointId>(id);
            place(slot + 1, id, next, sum_id);
        }
    }

    void run()
    {
        for (std::size_t sid = 0; sid < box.size(); ++sid) {
            Point s = box.point(sid);
            place(0, 0, s.coords, static_cast<PointId>(sid));
        }
    }
};

} // namespace

TupleFamily enumerate_tuples(const FamilyParams& params, const EnumerateOptions& options)
{
    if (params.n < 1 || params.d < 1)
        throw InputError("enumerate_tuples: N and d must be >= 1");
    if (params.k < 3)
        throw InputError("enumerate_tuples: k must be >= 3");
    if (params.j < 1 || params.j > std::min(params.d, params.k - 1))
        throw InputError("enumerate_tuples: j must lie in [1, min(d, k-1)]");
    Enumerator e(params, options);
    e.run();
    return TupleFamily(params, std::move(e.out));
}

Coloring::Coloring(int n, int d, int r, std::vector<std::uint8_t> colors)
    : box_(n, d), r_(r), colors_(std::move(colors))
{
    if (r < 1 || r > 255)
        throw InputError("coloring: r must lie in [1, 255]");
    if (colors_.size() != box_.size())
        throw InputError("coloring: expected " + std::to_string(box_.size()) + " colors, got " +
                         std::to_string(colors_.size()));
    for (auto c : colors_)
        if (c < 1 || c > r)
            throw InputError("coloring: color " + std::to_string(c) + " outside [1, " + std::to_string(r) + "]");
}

Coloring Coloring::constant(int n, int d, int r, int color)
{
    Box b(n, d);
    return Coloring(n, d, r, std::vector<std::uint8_t>(b.size(), static_cast<std::uint8_t>(color)));
}

VerifyResult verify_free(const Coloring& coloring, const TupleFamily& family)
{
    if (!(coloring.box() == family.box()))
        throw InputError("verify_free: coloring and family disagree on (N, d)");
    auto colors = coloring.colors();
    for (std::size_t i = 0; i < family.size(); ++i) {
        auto row = family.ids(i);
        const int c = colors[row[0]];
        bool mono = true;
        for (std::size_t s = 1; s < row.size() && mono; ++s)
            mono = colors[row[s]] == c;
        if (mono)
            return VerifyResult{Violation{i, family[i], c}};
    }
    return {};
}

Coloring induced_coloring(const Coloring& chi)
{
    if (chi.d() < 2)
        throw InputError("induced_coloring: source dimension must be >= 2");
    const int d = chi.d() - 1;
    Box low(chi.n(), d);
    std::vector<std::uint8_t> colors(low.size());
    for (std::size_t i = 0; i < low.size(); ++i) {
        Point x = low.point(i);
        x.coords.push_back(x.coords.back());
        colors[i] = static_cast<std::uint8_t>(chi.at(x));
    }
    return Coloring(chi.n(), d, chi.r(), std::move(colors));
}

SchurTuple lift_solution(const SchurTuple& solution)
{
    if (solution.summands.empty())
        throw InputError("lift_solution: no summands");
    const std::size_t d = solution.sum.dim();
    std::vector<Coord> total(d, 0);
    for (const auto& s : solution.summands) {
        if (s.dim() != d || d == 0)
            throw InputError("lift_solution: mismatched dimensions");
        for (std::size_t t = 0; t < d; ++t)
            total[t] += s.coords[t];
    }
    if (total != solution.sum.coords)
        throw InputError("lift_solution: summands do not add up to the sum");
    auto lift = [](Point p) {
        p.coords.push_back(p.coords.back());
        return p;
    };
    SchurTuple out;
    for (const auto& s : solution.summands)
        out.summands.push_back(lift(s));
    out.sum = lift(solution.sum);
    return out;
}

Coloring restrict_coloring(const Coloring& chi, int n)
{
    if (n < 1 || n > chi.n())
        throw InputError("restrict_coloring: N out of range");
    Box b(n, chi.d());
    std::vector<std::uint8_t> colors(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        colors[i] = static_cast<std::uint8_t>(chi.at(b.point(i)));
    return Coloring(n, chi.d(), chi.r(), std::move(colors));
}

} // namespace schur
