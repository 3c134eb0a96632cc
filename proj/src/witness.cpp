#include "schur/witness.hpp"

#include "schur/errors.hpp"

#include <limits>

namespace schur {

namespace {

Coord checked_mul(Coord a, Coord b)
{
    Coord out;
    if (__builtin_mul_overflow(a, b, &out))
        throw SizeError("integer overflow");
    return out;
}

Coord checked_pow(Coord base, int e)
{
    Coord p = 1;
    for (int i = 0; i < e; ++i)
        p = checked_mul(p, base);
    return p;
}

void require_increasing(std::span<const Coord> nodes)
{
    if (nodes.size() < 2)
        throw InputError("vandermonde_det: need at least two nodes");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (nodes[i] <= nodes[i - 1])
            throw InputError("vandermonde_det: nodes must be strictly increasing");
}

} // namespace

EdgeColoredGraph::EdgeColoredGraph(int m, int r)
    : EdgeColoredGraph(m, r, std::vector<std::uint8_t>(static_cast<std::size_t>(m) * (m - 1) / 2, 1))
{
}

EdgeColoredGraph::EdgeColoredGraph(int m, int r, std::vector<std::uint8_t> upper_triangle)
    : m_(m), r_(r), colors_(std::move(upper_triangle))
{
    if (m < 1 || r < 1)
        throw InputError("edge-colored graph needs M >= 1 and r >= 1");
    if (colors_.size() != static_cast<std::size_t>(m) * (m - 1) / 2)
        throw InputError("edge-colored graph: wrong number of edge colors");
    for (auto c : colors_)
        if (c < 1 || c > r)
            throw InputError("edge-colored graph: color outside [1, r]");
}

std::size_t EdgeColoredGraph::slot(int i, int j) const
{
    if (i > j)
        std::swap(i, j);
    if (i < 1 || j > m_ || i == j)
        throw InputError("edge {" + std::to_string(i) + "," + std::to_string(j) + "} not in K_" + std::to_string(m_));
    // edges (a, b), a < i, come first: sum_{a<i} (m - a)
    const std::size_t before = static_cast<std::size_t>(i - 1) * m_ - static_cast<std::size_t>(i - 1) * i / 2;
    return before + static_cast<std::size_t>(j - i - 1);
}

void EdgeColoredGraph::set_color(int i, int j, int c)
{
    if (c < 1 || c > r_)
        throw InputError("edge color outside [1, r]");
    colors_[slot(i, j)] = static_cast<std::uint8_t>(c);
}

std::vector<Point> vandermonde_points(int m, int d)
{
    if (m < 2 || d < 1)
        throw InputError("vandermonde_points: need M >= 2 and d >= 1");
    std::vector<Point> out;
    out.reserve(m);
    for (int i = 1; i <= m; ++i) {
        std::vector<Coord> c(d);
        for (int e = 1; e <= d; ++e)
            c[e - 1] = checked_pow(i, e);
        out.emplace_back(std::move(c));
    }
    return out;
}

EdgeColoredGraph graph_from_lattice_coloring(const Coloring& chi, int m, int d)
{
    if (chi.d() != d)
        throw InputError("graph_from_lattice_coloring: coloring dimension differs from d");
    const Coord needed = checked_pow(m, d) - 1;
    if (chi.n() < needed)
        throw InputError("graph_from_lattice_coloring: need N >= M^d - 1 = " + std::to_string(needed));
    const auto y = vandermonde_points(m, d);
    EdgeColoredGraph g(m, chi.r());
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) {
            Point diff = y[j - 1];
            for (int t = 0; t < d; ++t)
                diff.coords[t] -= y[i - 1].coords[t];
            g.set_color(i, j, chi.at(diff));
        }
    return g;
}

namespace {

bool extend(const EdgeColoredGraph& g, int k, int color, std::vector<int>& clique)
{
    if (static_cast<int>(clique.size()) == k)
        return true;
    const int start = clique.empty() ? 1 : clique.back() + 1;
    // not enough vertices left
    for (int v = start; v + (k - static_cast<int>(clique.size())) - 1 <= g.vertices(); ++v) {
        bool ok = true;
        for (int u : clique)
            if (g.color(u, v) != color) {
                ok = false;
                break;
            }
        if (!ok)
            continue;
        clique.push_back(v);
        if (extend(g, k, color, clique))
            return true;
        clique.pop_back();
    }
    return false;
}

} // namespace

std::optional<std::vector<int>> find_monochromatic_clique(const EdgeColoredGraph& g, int k)
{
    if (k < 2)
        throw InputError("find_monochromatic_clique: k must be >= 2");
    if (k > g.vertices())
        return std::nullopt;
    // The first two vertices fix the color, so scanning (i_1, i_2) in
    // lexicographic order yields the lexicographically first clique.
    for (int a = 1; a <= g.vertices(); ++a)
        for (int b = a + 1; b <= g.vertices(); ++b) {
            std::vector<int> clique{a, b};
            if (extend(g, k, g.color(a, b), clique))
                return clique;
        }
    return std::nullopt;
}

Coord vandermonde_det_product(std::span<const Coord> nodes)
{
    require_increasing(nodes);
    Coord p = 1;
    for (std::size_t a = 0; a < nodes.size(); ++a)
        for (std::size_t b = a + 1; b < nodes.size(); ++b)
            p = checked_mul(p, nodes[b] - nodes[a]);
    return p;
}

Coord vandermonde_det_elimination(std::span<const Coord> nodes)
{
    require_increasing(nodes);
    const std::size_t d = nodes.size() - 1;
    std::vector<std::vector<Coord>> a(d, std::vector<Coord>(d));
    for (std::size_t row = 0; row < d; ++row)
        for (std::size_t e = 1; e <= d; ++e)
            a[row][e - 1] = checked_pow(nodes[row + 1], static_cast<int>(e)) - checked_pow(nodes[row], static_cast<int>(e));
    return determinant(std::move(a));
}

Coord vandermonde_det(std::span<const Coord> nodes)
{
    const Coord by_product = vandermonde_det_product(nodes);
    const Coord by_elimination = vandermonde_det_elimination(nodes);
    if (by_product != by_elimination)
        throw IntegrityError("Vandermonde determinant mismatch: product " + std::to_string(by_product) +
                             ", elimination " + std::to_string(by_elimination));
    return by_product;
}

SchurWitness extract_schur_witness(const Coloring& chi, int r, int k, int d, const RamseyTable& table)
{
    if (chi.r() != r || chi.d() != d)
        throw InputError("extract_schur_witness: coloring does not match (r, d)");
    if (k < d + 1)
        throw InputError("extract_schur_witness: need k >= d + 1");
    const RamseyEntry ramsey = table.lookup(r, k);
    if (!ramsey.exact())
        throw InputError("extract_schur_witness: R_" + std::to_string(r) + "(" + std::to_string(k) +
                         ") is only known to lie in [" + std::to_string(ramsey.lower) + ", " +
                         std::to_string(ramsey.upper) + "]; refusing to guess a threshold");
    if (ramsey.upper > std::numeric_limits<int>::max())
        throw SizeError("extract_schur_witness: Ramsey value too large");
    const int m = static_cast<int>(ramsey.upper);
    if (m < 2)
        throw InputError("extract_schur_witness: degenerate Ramsey value");
    const Coord threshold = checked_pow(m, d) - 1;
    if (chi.n() < threshold)
        throw InputError("extract_schur_witness: need N >= R_r(k)^d - 1 = " + std::to_string(threshold));

    const auto g = graph_from_lattice_coloring(chi, m, d);
    const auto clique = find_monochromatic_clique(g, k);
    if (!clique)
        throw IntegrityError("extract_schur_witness: no monochromatic K_" + std::to_string(k) + " in K_" +
                             std::to_string(m) + "; the Ramsey table entry is wrong");

    const auto y = vandermonde_points(m, d);
    auto diff = [&](int hi, int lo) {
        Point p = y[hi - 1];
        for (int t = 0; t < d; ++t)
            p.coords[t] -= y[lo - 1].coords[t];
        return p;
    };
    SchurWitness w;
    w.clique = *clique;
    for (int t = 0; t + 1 < k; ++t)
        w.summands.push_back(diff(w.clique[t + 1], w.clique[t]));
    w.sum = diff(w.clique.back(), w.clique.front());
    w.color = chi.at(w.sum);

    std::vector<Coord> nodes(w.clique.begin(), w.clique.begin() + d + 1);
#ifdef NDEBUG
    w.determinant = vandermonde_det_product(nodes);
#else
    w.determinant = vandermonde_det(nodes);
#endif
    return w;
}

} // namespace schur
