#pragma once

#include "errors.hpp"

#include <string>

namespace cubeforge {

// 1-based re-indexing maps. raise(j,i) is j^i, lower(j,i) is j_i.

inline int raise(int j, int i)
{
    if (j < 1 || i < 1)
        throw DomainError("raise: indices must be positive");
    return j < i ? j : j + 1;
}

inline int lower(int j, int i)
{
    if (j < 1 || i < 1)
        throw DomainError("lower: indices must be positive");
    if (j == i)
        throw DomainError("lower: " + std::to_string(j) + "_" + std::to_string(i) + " is undefined");
    return j < i ? j : j - 1;
}

/** (k_i)_{j_i} */
inline int lower2(int k, int i, int j)
{
    if (i == j)
        throw DomainError("lower2: i == j");
    return lower(lower(k, i), lower(j, i));
}

/** (k^{i_j})^j */
inline int raise2(int k, int i, int j)
{
    if (i == j)
        throw DomainError("raise2: i == j");
    return raise(raise(k, lower(i, j)), j);
}

/** (k^j)_i */
inline int mixed(int k, int i, int j)
{
    if (i == j)
        throw DomainError("mixed: i == j");
    return lower(raise(k, j), i);
}

} // namespace cubeforge
