#pragma once

// Brute-force reference implementations for the tests. Nothing here shares
// code with the library routines they check.

#include "schur/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<long long>>;

// Leibniz expansion over all permutations.
inline long long leibniz_det(const Matrix& a)
{
    const std::size_t n = a.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    long long total = 0;
    do {
        long long term = 1;
        for (std::size_t i = 0; i < n; ++i)
            term *= a[i][perm[i]];
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                inversions += perm[i] > perm[j];
        total += (inversions % 2 ? -term : term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

inline void subsets(std::size_t n, std::size_t s, std::vector<std::size_t>& cur, std::size_t from,
                    std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() == s) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        subsets(n, s, cur, i + 1, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t s)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    subsets(n, s, cur, 0, out);
    return out;
}

// Largest s with a nonzero s x s minor.
inline std::size_t minor_rank(const Matrix& a)
{
    if (a.empty())
        return 0;
    const std::size_t rows = a.size(), cols = a[0].size();
    for (std::size_t s = std::min(rows, cols); s > 0; --s)
        for (const auto& rs : subsets(rows, s))
            for (const auto& cs : subsets(cols, s)) {
                Matrix m(s, std::vector<long long>(s));
                for (std::size_t i = 0; i < s; ++i)
                    for (std::size_t j = 0; j < s; ++j)
                        m[i][j] = a[rs[i]][cs[j]];
                if (leibniz_det(m) != 0)
                    return s;
            }
    return 0;
}

inline Matrix to_matrix(const std::vector<schur::Point>& ps)
{
    Matrix m;
    for (const auto& p : ps)
        m.emplace_back(p.coords.begin(), p.coords.end());
    return m;
}

using Tuple = std::pair<schur::Point, std::vector<schur::Point>>; // (sum, sorted summands)

// Every ordered (k-1)-tuple of points, canonicalized; rank by minors.
inline std::vector<Tuple> brute_force_family(int n, int d, int k, int j)
{
    std::vector<schur::Point> pts;
    {
        std::vector<long long> c(d, 1);
        while (true) {
            pts.emplace_back(std::vector<schur::Coord>(c.begin(), c.end()));
            int t = d - 1;
            while (t >= 0 && c[t] == n)
                c[t--] = 1;
            if (t < 0)
                break;
            ++c[t];
        }
    }
    std::set<Tuple> found;
    std::vector<std::size_t> idx(k - 1, 0);
    while (true) {
        std::vector<schur::Point> summands;
        schur::Point sum(std::vector<schur::Coord>(d, 0));
        for (auto i : idx) {
            summands.push_back(pts[i]);
            for (int t = 0; t < d; ++t)
                sum.coords[t] += pts[i].coords[t];
        }
        bool inside = true;
        for (auto c : sum.coords)
            inside = inside && c >= 1 && c <= n;
        if (inside && minor_rank(to_matrix(summands)) >= static_cast<std::size_t>(j)) {
            std::sort(summands.begin(), summands.end());
            found.insert({sum, summands});
        }
        int t = k - 2;
        while (t >= 0 && idx[t] == pts.size() - 1)
            idx[t--] = 0;
        if (t < 0)
            break;
        ++idx[t];
    }
    return {found.begin(), found.end()};
}

// Truth-table satisfiability for clause lists over <= ~22 variables.
inline bool truth_table_sat(std::size_t num_vars, const std::vector<std::vector<int>>& clauses)
{
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << num_vars); ++m) {
        bool all = true;
        for (const auto& c : clauses) {
            bool any = false;
            for (int l : c) {
                const bool v = (m >> (std::abs(l) - 1)) & 1u;
                if ((l > 0) == v) {
                    any = true;
                    break;
                }
            }
            if (!any) {
                all = false;
                break;
            }
        }
        if (all)
            return true;
    }
    return false;
}

} // namespace oracle
