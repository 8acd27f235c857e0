#pragma once

#include <string>
#include <vector>

#include "coindex/scalar.hpp"

namespace coindex {

/// Integer polynomial in the elementary symmetric generators e_1..e_m,
/// weighted-homogeneous of degree n-1 (e_i has weight i).
struct PhiSpec {
    std::string label;
    // each term: exponents of e_1..e_m plus an integer coefficient
    std::vector<std::pair<std::vector<int>, long>> terms;

    int arity() const {
        size_t m = 0;
        for (const auto& [e, c] : terms) m = std::max(m, e.size());
        return int(m);
    }

    bool weighted_homogeneous(int degree) const {
        for (const auto& [e, c] : terms) {
            int d = 0;
            for (size_t i = 0; i < e.size(); ++i) d += int(i + 1) * e[i];
            if (d != degree) return false;
        }
        return true;
    }

    /// True when phi(-H) == phi(H) for every matrix (all terms have even weight).
    bool even() const {
        for (const auto& [e, c] : terms) {
            int d = 0;
            for (size_t i = 0; i < e.size(); ++i) d += int(i + 1) * e[i];
            if (d % 2 != 0) return false;
        }
        return true;
    }

    /// Parse "e1^2", "e2", "2*e1*e2 - 3*e3" style expressions.
    static PhiSpec parse(const std::string& text);
};

}  // namespace coindex
