#pragma once

#include "schur/bounds.hpp"
#include "schur/lattice.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace schur {

/// Complete graph on vertices 1..M with an r-coloring of its edges.
class EdgeColoredGraph {
public:
    EdgeColoredGraph(int m, int r);
    EdgeColoredGraph(int m, int r, std::vector<std::uint8_t> upper_triangle);

    int vertices() const { return m_; }
    int colors() const { return r_; }
    int color(int i, int j) const { return colors_[slot(i, j)]; }
    void set_color(int i, int j, int c);

private:
    std::size_t slot(int i, int j) const;

    int m_;
    int r_;
    std::vector<std::uint8_t> colors_; // pairs i<j in lexicographic order
};

/// y_i = (i, i^2, ..., i^d) for i = 1..M.
std::vector<Point> vandermonde_points(int m, int d);

/// Colors edge {i, j}, i < j, with chi(y_j - y_i).
EdgeColoredGraph graph_from_lattice_coloring(const Coloring& chi, int m, int d);

/// Lexicographically first k-subset i_1 < ... < i_k whose edges all share a
/// color; nullopt when none exists.
std::optional<std::vector<int>> find_monochromatic_clique(const EdgeColoredGraph& g, int k);

struct SchurWitness {
    std::vector<int> clique;     // i_1 < ... < i_k
    std::vector<Point> summands; // y_{i_{t+1}} - y_{i_t}, t = 1..k-1
    Point sum;                   // y_{i_k} - y_{i_1}
    int color = 0;
    Coord determinant = 0;       // det of the first d summands as rows
};

/// Monochromatic solution with d independent summands in any coloring of
/// [N]^d, N >= R_r(k)^d - 1, k >= d + 1. Refuses (InputError) when R_r(k) is
/// not exactly known. A failed clique search throws IntegrityError.
SchurWitness extract_schur_witness(const Coloring& chi, int r, int k, int d,
                                   const RamseyTable& table = RamseyTable::builtin());

/// Determinant of the difference matrix A for strictly increasing i_1..i_{d+1},
/// by exact elimination and by the product formula; throws IntegrityError if
/// the two disagree.
Coord vandermonde_det(std::span<const Coord> nodes);
Coord vandermonde_det_elimination(std::span<const Coord> nodes);
Coord vandermonde_det_product(std::span<const Coord> nodes);

} // namespace schur
