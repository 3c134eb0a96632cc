#include "schur/bounds.hpp"

#include "schur/errors.hpp"
#include "ramsey_table_builtin.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <sstream>

namespace schur {

using nlohmann::json;

const RamseyTable& RamseyTable::builtin()
{
    static const RamseyTable table = parse(detail::builtin_ramsey_table);
    return table;
}

RamseyTable RamseyTable::parse(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::exception& e) {
        throw ParseError(std::string("ramsey_table: ") + e.what());
    }
    if (doc.value("format", "") != "ramsey_table")
        throw ParseError("ramsey_table: missing \"format\": \"ramsey_table\"");
    RamseyTable t;
    try {
        for (const auto& e : doc.at("entries")) {
            RamseyEntry entry{e.at("r").get<int>(), e.at("k").get<int>(), e.at("lower").get<std::int64_t>(),
                              e.at("upper").get<std::int64_t>(), e.value("source", "")};
            if (entry.r < 1 || entry.k < 1 || entry.lower < 1 || entry.lower > entry.upper)
                throw ParseError("ramsey_table: invalid entry for r=" + std::to_string(entry.r) +
                                 " k=" + std::to_string(entry.k));
            t.set(std::move(entry));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("ramsey_table: ") + e.what());
    }
    return t;
}

RamseyTable RamseyTable::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void RamseyTable::set(RamseyEntry entry)
{
    for (auto& e : entries_) {
        if (e.r == entry.r && e.k == entry.k) {
            e = std::move(entry);
            return;
        }
    }
    entries_.push_back(std::move(entry));
}

RamseyEntry RamseyTable::lookup(int r, int k) const
{
    if (r < 1 || k < 1)
        throw InputError("ramsey_number: r and k must be >= 1");
    if (k == 1)
        return {r, k, 1, 1, "trivial"};
    if (k == 2)
        return {r, k, 2, 2, "trivial"};
    if (r == 1)
        return {r, k, k, k, "trivial"};
    for (const auto& e : entries_)
        if (e.r == r && e.k == k)
            return e;
    throw NotTabulated("R_" + std::to_string(r) + "(" + std::to_string(k) + ") is not tabulated");
}

RamseyEntry ramsey_number(int r, int k, const RamseyTable& table)
{
    return table.lookup(r, k);
}

SchurUpperBound upper_bound_S(int d, int j, int r, int k, const RamseyTable& table)
{
    if (d < 1 || j < 1 || j > std::min(d, k - 1))
        throw InputError("upper_bound_S: need 1 <= j <= min(d, k-1)");
    const RamseyEntry e = table.lookup(r, k);
    const std::int64_t base = e.upper;
    std::int64_t p = 1;
    for (int i = 0; i < j; ++i) {
        if (p > std::numeric_limits<std::int64_t>::max() / base)
            throw SizeError("upper_bound_S: R_r(k)^j overflows 64 bits");
        p *= base;
    }
    return {p - 1, e.exact()};
}

std::int64_t schur_3k_formula(int k)
{
    if (k < 3)
        throw InputError("schur_3k_formula: k must be >= 3");
    const std::int64_t kk = k;
    return kk * kk * kk - kk * kk - kk - 1;
}

const std::map<int, std::int64_t>& known_schur_numbers()
{
    static const std::map<int, std::int64_t> values{{1, 2}, {2, 5}, {3, 14}, {4, 45}, {5, 161}};
    return values;
}

} // namespace schur
