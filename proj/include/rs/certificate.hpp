#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rs {

/// Witness for a spectral-picture membership verdict. For non-members,
/// `violated` names the first failed inequality in the module's canonical
/// evaluation order; `family` is one of "mayor2d", "menor2d" (dual picture)
/// or "trace", "positivity", "klyachko" (operator picture).
struct Violation {
    std::string family;
    int index = 0;                        // 1-based inequality index where meaningful
    std::vector<std::vector<int>> tuple;  // (J_0, ..., J_m) for family "klyachko"
    double lhs = 0.0;
    double rhs = 0.0;
};

struct Certificate {
    bool member = false;
    std::optional<Violation> violated;

    static Certificate member_ok() { return {true, std::nullopt}; }
};

}  // namespace rs
