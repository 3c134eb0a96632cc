#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace schur {

using Coord = std::int64_t;
using PointId = std::uint32_t;

/// A lattice point of [N]^d. The box bound is carried by the surrounding
/// `Box`, not by the point itself.
struct Point {
    std::vector<Coord> coords;

    Point() = default;
    explicit Point(std::vector<Coord> c) : coords(std::move(c)) {}
    Point(std::initializer_list<Coord> c) : coords(c) {}

    std::size_t dim() const { return coords.size(); }
    Coord operator[](std::size_t i) const { return coords[i]; }

    auto operator<=>(const Point&) const = default;
    bool operator==(const Point&) const = default;
};

std::string to_string(const Point& p);

/// The box [N]^d. Points are numbered in row-major order (first coordinate
/// most significant), so index order coincides with lexicographic order.
struct Box {
    int n = 0;
    int d = 0;

    Box() = default;
    Box(int n_, int d_);

    std::size_t size() const { return size_; }
    bool contains(const Point& p) const;
    /// 0-based row-major index; throws InputError when p is outside the box.
    std::size_t index(const Point& p) const;
    Point point(std::size_t index) const;

    bool operator==(const Box& o) const { return n == o.n && d == o.d; }

private:
    std::size_t size_ = 0;
};

/// A canonical solution x_1 + ... + x_{k-1} = x_k. Summands are kept in
/// non-decreasing lexicographic order.
struct SchurTuple {
    std::vector<Point> summands;
    Point sum;

    /// Summands followed by the sum, duplicates removed, first occurrence wins.
    std::vector<Point> distinct_points() const;

    bool operator==(const SchurTuple&) const = default;
};

std::string to_string(const SchurTuple& t);

struct FamilyParams {
    int n = 0;
    int d = 0;
    int k = 3;
    int j = 1;

    bool operator==(const FamilyParams&) const = default;
};

struct EnumerateOptions {
    // When false, summand multisets with a repeated point are skipped.
    bool allow_repeated_summands = true;
};

/// The family of all j-nondegenerate Schur k-tuples in [N]^d, stored as
/// flat point ids: k ids per tuple, summands first, then the sum.
class TupleFamily {
public:
    TupleFamily() = default;
    TupleFamily(FamilyParams params, std::vector<PointId> ids);

    const FamilyParams& params() const { return params_; }
    const Box& box() const { return box_; }
    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    /// k ids; the last one is the sum.
    std::span<const PointId> ids(std::size_t i) const;
    SchurTuple operator[](std::size_t i) const;

private:
    FamilyParams params_;
    Box box_;
    std::vector<PointId> ids_;
    std::size_t count_ = 0;
};

/// Rank over the rationals by fraction-free (Bareiss) elimination. Throws
/// InputError on mismatched dimensions and SizeError on 64-bit overflow.
std::size_t rank(std::span<const std::vector<Coord>> vectors);
std::size_t rank(std::span<const Point> vectors);

/// Exact determinant of a square integer matrix, Bareiss elimination.
Coord determinant(std::vector<std::vector<Coord>> rows);

bool is_j_nondegenerate(std::span<const Point> summands, int j);

TupleFamily enumerate_tuples(const FamilyParams& params, const EnumerateOptions& options = {});

/// Total assignment [N]^d -> [1, r], stored in row-major order.
class Coloring {
public:
    Coloring() = default;
    Coloring(int n, int d, int r, std::vector<std::uint8_t> colors);
    static Coloring constant(int n, int d, int r, int color = 1);

    int n() const { return box_.n; }
    int d() const { return box_.d; }
    int r() const { return r_; }
    const Box& box() const { return box_; }

    int at(const Point& p) const { return colors_[box_.index(p)]; }
    int at_index(std::size_t i) const { return colors_[i]; }
    std::span<const std::uint8_t> colors() const { return colors_; }

    bool operator==(const Coloring&) const = default;

private:
    Box box_;
    int r_ = 0;
    std::vector<std::uint8_t> colors_;
};

struct Violation {
    std::size_t index = 0; // position in the family
    SchurTuple tuple;
    int color = 0;
};

struct VerifyResult {
    std::optional<Violation> violation;

    bool is_free() const { return !violation.has_value(); }
};

/// First monochromatic tuple in enumeration order, if any.
VerifyResult verify_free(const Coloring& coloring, const TupleFamily& family);

/// Restriction of a (d+1)-dimensional coloring along x -> (x_1..x_d, x_d).
Coloring induced_coloring(const Coloring& chi);

/// Applies x -> (x_1..x_d, x_d) to every point of a solution.
SchurTuple lift_solution(const SchurTuple& solution);

Coloring restrict_coloring(const Coloring& chi, int n);

} // namespace schur
