#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace schur {

/// Known interval for the r-color Ramsey number R_r(k).
struct RamseyEntry {
    int r = 0;
    int k = 0;
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    std::string source;

    bool exact() const { return lower == upper; }
};

/// Ramsey values that cannot be derived here by brute force. Loaded from a
/// `ramsey_table` JSON file (comments allowed) or the built-in copy.
class RamseyTable {
public:
    static const RamseyTable& builtin();
    static RamseyTable parse(std::string_view json_text);
    static RamseyTable load(const std::string& path);

    /// Entry for (r, k). Trivial identities are answered without the table:
    /// R_1(k) = k, R_r(2) = 2, R_r(1) = 1. Throws NotTabulated otherwise.
    RamseyEntry lookup(int r, int k) const;
    void set(RamseyEntry entry);
    const std::vector<RamseyEntry>& entries() const { return entries_; }

private:
    std::vector<RamseyEntry> entries_;
};

RamseyEntry ramsey_number(int r, int k, const RamseyTable& table = RamseyTable::builtin());

struct SchurUpperBound {
    std::int64_t value = 0;
    // False when R_r(k) is only known as an interval and its upper end was used.
    bool from_exact_ramsey = true;
};

/// R_r(k)^j - 1, valid for any d >= j with j <= k - 1.
SchurUpperBound upper_bound_S(int d, int j, int r, int k, const RamseyTable& table = RamseyTable::builtin());

/// S(3, k) = k^3 - k^2 - k - 1 for k >= 3.
std::int64_t schur_3k_formula(int k);

/// Classical Schur numbers S(r), r = 1..5.
const std::map<int, std::int64_t>& known_schur_numbers();

} // namespace schur
