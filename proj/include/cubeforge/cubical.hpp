#pragma once

#include "cubeseq.hpp"
#include "errors.hpp"
#include "index.hpp"

#include <array>
#include <concepts>
#include <optional>
#include <string>
#include <vector>

namespace cubeforge {

/**
 * A dimension-bounded cubical omega-category with connections.
 * Operators follow the usual conventions: face(A, i, a) is d_i^a A,
 * degen(A, i) is eps_i A, conn(A, i, a) is Gamma_i^a A and
 * compose(A, B, i) is A *_i B, throwing CompositionError when undefined.
 */
template <class M>
concept CubicalModel = requires(const M& m, const typename M::Cell& a, int i, Sign s) {
    typename M::Cell;
    { m.max_dim() } -> std::convertible_to<int>;
    { m.dim(a) } -> std::convertible_to<int>;
    { m.face(a, i, s) } -> std::same_as<typename M::Cell>;
    { m.degen(a, i) } -> std::same_as<typename M::Cell>;
    { m.conn(a, i, s) } -> std::same_as<typename M::Cell>;
    { m.compose(a, a, i) } -> std::same_as<typename M::Cell>;
    { m.composable(a, a, i) } -> std::convertible_to<bool>;
    { m.describe(a) } -> std::convertible_to<std::string>;
};

// Models that can decide and construct R_k-inverses.
template <class M>
concept HasROracle = CubicalModel<M> && requires(const M& m, const typename M::Cell& a, int k) {
    { m.r_inverse(a, k) } -> std::same_as<std::optional<typename M::Cell>>;
};

// Models with a closed-form T_i-inverse.
template <class M>
concept HasTOracle = CubicalModel<M> && requires(const M& m, const typename M::Cell& a, int i) {
    { m.t_inverse(a, i) } -> std::same_as<std::optional<typename M::Cell>>;
};

template <CubicalModel M>
bool in_image_eps(const M& m, const typename M::Cell& b, int i)
{
    return m.degen(m.face(b, i, Sign::Minus), i) == b;
}

// psi_i A = Gamma_i^+ d_{i+1}^- A *_{i+1} A *_{i+1} Gamma_i^- d_{i+1}^+ A
template <CubicalModel M>
typename M::Cell psi(const M& m, const typename M::Cell& a, int i)
{
    int n = m.dim(a);
    if (i < 1 || i > n - 1)
        throw DomainError("psi: index " + std::to_string(i) + " outside [1, " + std::to_string(n - 1) + "]");
    auto left = m.conn(m.face(a, i + 1, Sign::Minus), i, Sign::Plus);
    auto right = m.conn(m.face(a, i + 1, Sign::Plus), i, Sign::Minus);
    return m.compose(m.compose(left, a, i + 1), right, i + 1);
}

// Psi_r = psi_{r-1} ... psi_1, psi_1 applied first.
template <CubicalModel M>
typename M::Cell Psi(const M& m, typename M::Cell a, int r)
{
    if (r < 1 || r > m.dim(a))
        throw DomainError("Psi: index out of range");
    for (int i = 1; i < r; ++i)
        a = psi(m, a, i);
    return a;
}

// Phi_k = Psi_1 ... Psi_k, Psi_k applied first.
template <CubicalModel M>
typename M::Cell Phi(const M& m, typename M::Cell a, int k)
{
    if (k < 0 || k > m.dim(a))
        throw DomainError("Phi: index out of range");
    for (int r = k; r >= 1; --r)
        a = Psi(m, a, r);
    return a;
}

// psi_1 ... psi_{n-1} A, psi_{n-1} applied first.
template <CubicalModel M>
typename M::Cell fold(const M& m, typename M::Cell a)
{
    for (int i = m.dim(a) - 1; i >= 1; --i)
        a = psi(m, a, i);
    return a;
}

template <CubicalModel M>
bool is_thin(const M& m, const typename M::Cell& a)
{
    if (m.dim(a) < 1)
        throw DomainError("is_thin: dimension must be at least 1");
    return in_image_eps(m, fold(m, a), 1);
}

template <class Cell>
struct Shell {
    int base_dim = 0;
    std::vector<std::array<Cell, 2>> faces; // faces[i-1][a] for 1 <= i <= base_dim + 1

    const Cell& at(int i, Sign a) const { return faces.at(i - 1)[static_cast<int>(a)]; }
    bool operator==(const Shell&) const = default;
};

template <CubicalModel M>
Shell<typename M::Cell> shell(const M& m, const typename M::Cell& a)
{
    int n = m.dim(a);
    if (n < 1)
        throw DomainError("shell: dimension must be at least 1");
    Shell<typename M::Cell> s{n - 1, {}};
    for (int i = 1; i <= n; ++i)
        s.faces.push_back({m.face(a, i, Sign::Minus), m.face(a, i, Sign::Plus)});
    return s;
}

// d_{i_j}^a A_j^b == d_{j_i}^b A_i^a for all i != j.
template <CubicalModel M>
bool shell_compatible(const M& m, const Shell<typename M::Cell>& s)
{
    int n = s.base_dim;
    for (int i = 1; i <= n + 1; ++i)
        for (int j = 1; j <= n + 1; ++j) {
            if (i == j)
                continue;
            for (Sign a : kSigns)
                for (Sign b : kSigns)
                    if (!(m.face(s.at(j, b), lower(i, j), a) == m.face(s.at(i, a), lower(j, i), b)))
                        return false;
        }
    return true;
}

/**
 * rows[r][c] composed along h inside a row and along v between rows.
 * Built row-major; in debug builds the column-major evaluation is compared.
 */
template <CubicalModel M>
typename M::Cell compose_grid(const M& m, const std::vector<std::vector<typename M::Cell>>& rows, int h, int v)
{
    if (rows.empty() || rows[0].empty())
        throw DomainError("compose_grid: empty grid");
    auto row_major = [&] {
        std::vector<typename M::Cell> rs;
        for (const auto& row : rows) {
            auto acc = row[0];
            for (std::size_t c = 1; c < row.size(); ++c)
                acc = m.compose(acc, row[c], h);
            rs.push_back(acc);
        }
        auto acc = rs[0];
        for (std::size_t r = 1; r < rs.size(); ++r)
            acc = m.compose(acc, rs[r], v);
        return acc;
    };
    auto result = row_major();
#ifndef NDEBUG
    std::vector<typename M::Cell> cs;
    for (std::size_t c = 0; c < rows[0].size(); ++c) {
        auto acc = rows[0][c];
        for (std::size_t r = 1; r < rows.size(); ++r)
            acc = m.compose(acc, rows[r][c], v);
        cs.push_back(acc);
    }
    auto other = cs[0];
    for (std::size_t c = 1; c < cs.size(); ++c)
        other = m.compose(other, cs[c], h);
    if (!(other == result))
        throw CompositionError("compose_grid: row-major and column-major evaluations differ");
#endif
    return result;
}

} // namespace cubeforge
