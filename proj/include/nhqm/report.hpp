#pragma once

// Residual tables emitted by the verification suites and by the CLI.

#include <string>
#include <vector>

#include "nhqm/core.hpp"

namespace nhqm {

struct ResidualRow {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass() const { return residual <= tolerance; }
};

struct ResidualReport {
    std::vector<ResidualRow> rows;

    void add(std::string name, double residual, double tolerance) {
        rows.push_back({std::move(name), residual, tolerance});
    }
    void append(const ResidualReport& other) {
        rows.insert(rows.end(), other.rows.begin(), other.rows.end());
    }
    bool all_pass() const {
        for (const auto& r : rows)
            if (!r.pass()) return false;
        return true;
    }
    double max_residual() const {
        double m = 0.0;
        for (const auto& r : rows) m = std::max(m, r.residual);
        return m;
    }
};

}  // namespace nhqm
