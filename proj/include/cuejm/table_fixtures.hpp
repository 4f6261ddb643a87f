#pragma once

#include "cuejm/moments.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cuejm {

/// One regression fixture: the published exact value for a coefficient.
struct TableEntry {
    Family family = Family::a;
    MomentSpec spec;
    Rational expected;
};

struct TablePreset {
    std::string name;
    std::string description;
    std::vector<TableEntry> entries;
};

/// Built-in presets:
///   bkk20 - b(k, k, 2, 0) for k = 1..6
///   a21   - a(2, 1, n1, n2) for n2 <= n1 <= 3
///   b21   - b(2, 1, n1, n2) for n2 <= n1 <= 3
const std::vector<TablePreset>& table_presets();
const TablePreset* find_preset(std::string_view name);

} // namespace cuejm
