// Golden-file comparison for the solution tables shipped in tables/.
#pragma once

#include <json.hpp>

#include <fstream>

#include "ppgaps/search.hpp"

namespace ppg {

struct GoldenTable {
    u64 n = 0;  // the fixed exponent of the table
    std::vector<Solution> rows;
};

inline GoldenTable load_golden(const std::string& path, u64 n) {
    std::ifstream in(path);
    if (!in) throw domain_error("golden: cannot open " + path);
    nlohmann::json j;
    in >> j;
    GoldenTable t;
    t.n = n;
    for (const auto& r : j.at("rows")) {
        t.rows.push_back(Solution{(u64)r[0].get<long>(), r[1].get<int>(), (u64)r[2].get<long>(),
                                  BigInt(r[3].get<long>()), BigInt(r[4].get<long>()), n});
    }
    return t;
}

struct GoldenDiff {
    std::vector<Solution> missing;  // in-region table rows the oracle did not produce
    std::vector<Solution> extras;   // oracle rows (right n) not in the table
    std::vector<Solution> flagged;  // table rows failing re-substitution (never counted missing)
    size_t covered = 0;             // table rows inside the scan region

    bool clean() const { return missing.empty() && extras.empty(); }
};

// Compare oracle output against a golden table over the scan region
// x <= x_max, q^alpha <= 16 x_max^2, qmin <= q <= qmax.
inline GoldenDiff diff_golden(const GoldenTable& table, const std::vector<Solution>& oracle, u64 qmin,
                              u64 qmax, u64 x_max) {
    GoldenDiff d;
    BigInt cap = 16 * BigInt((unsigned long)x_max) * (unsigned long)x_max;
    auto in_region = [&](const Solution& s) {
        return s.q >= qmin && s.q <= qmax && s.x <= BigInt((unsigned long)x_max) &&
               big_pow(BigInt((unsigned long)s.q), s.alpha) <= cap;
    };
    for (const auto& row : table.rows) {
        if (!in_region(row)) continue;
        if (!row.verify()) {
            d.flagged.push_back(row);
            continue;
        }
        ++d.covered;
        bool found = false;
        for (const auto& s : oracle)
            if (s == row) found = true;
        if (!found) d.missing.push_back(row);
    }
    for (const auto& s : oracle) {
        if (s.n != table.n || !in_region(s)) continue;
        bool found = false;
        for (const auto& row : table.rows)
            if (s == row) found = true;
        if (!found) d.extras.push_back(s);
    }
    return d;
}

inline std::string default_tables_dir() {
    if (const char* env = std::getenv("PPGAPS_TABLES")) return env;
    return PPGAPS_TABLES_DIR;
}

}  // namespace ppg
