#pragma once

#include <algorithm>

#include "youngwave/grid.hpp"

inline bool same_values(const youngwave::GridField& a, const youngwave::GridField& b) {
    return std::ranges::equal(a.values(), b.values());
}
