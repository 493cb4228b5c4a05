#pragma once

#include "cubical.hpp"
#include "perm.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cubeforge {

template <CubicalModel M>
void require_composable(const M& m, const typename M::Cell& a, const typename M::Cell& b, int k)
{
    if (!m.composable(a, b, k))
        throw CompositionError("cells are not composable along " + std::to_string(k),
                               m.describe(m.face(a, k, Sign::Plus)), m.describe(m.face(b, k, Sign::Minus)));
}

// A *_k B = eps_k d_k^- A and B *_k A = eps_k d_k^+ A
template <CubicalModel M>
bool verify_r_inverse(const M& m, const typename M::Cell& a, const typename M::Cell& b, int k)
{
    require_composable(m, a, b, k);
    require_composable(m, b, a, k);
    return m.compose(a, b, k) == m.degen(m.face(a, k, Sign::Minus), k) &&
           m.compose(b, a, k) == m.degen(m.face(a, k, Sign::Plus), k);
}

/**
 * Defining equations of B = T_i A, read as composites along i inside a row
 * and along i+1 between rows:
 *   (G+ d_{i+1}^- A . B) | (A . G- d_i^+ A)  =  G- d_i^- A . G+ d_{i+1}^+ A
 *   (G+ d_i^- A . A) | (B . G- d_{i+1}^+ A)  =  G- d_{i+1}^- A . G+ d_i^+ A
 */
template <CubicalModel M>
bool verify_t_inverse(const M& m, const typename M::Cell& a, const typename M::Cell& b, int i)
{
    using S = Sign;
    int n = m.dim(a);
    if (m.dim(b) != n || i < 1 || i >= n)
        return false;
    for (Sign s : kSigns)
        if (!(m.face(a, i, s) == m.face(b, i + 1, s)) || !(m.face(a, i + 1, s) == m.face(b, i, s)))
            return false;
    auto lhs1 = m.compose(m.compose(m.conn(m.face(a, i + 1, S::Minus), i, S::Plus), b, i),
                          m.compose(a, m.conn(m.face(a, i, S::Plus), i, S::Minus), i), i + 1);
    auto rhs1 = m.compose(m.conn(m.face(a, i, S::Minus), i, S::Minus), m.conn(m.face(a, i + 1, S::Plus), i, S::Plus), i);
    if (!(lhs1 == rhs1))
        return false;
    auto lhs2 = m.compose(m.compose(m.conn(m.face(a, i, S::Minus), i, S::Plus), a, i),
                          m.compose(b, m.conn(m.face(a, i + 1, S::Plus), i, S::Minus), i), i + 1);
    auto rhs2 = m.compose(m.conn(m.face(a, i + 1, S::Minus), i, S::Minus), m.conn(m.face(a, i, S::Plus), i, S::Plus), i);
    return lhs2 == rhs2;
}

template <HasROracle M>
bool is_r_invertible(const M& m, const typename M::Cell& a, int k)
{
    return m.r_inverse(a, k).has_value();
}

template <CubicalModel M>
bool is_plain_invertible(const M& m, const typename M::Cell& a)
{
    if (m.dim(a) < 1)
        throw DomainError("plain invertibility needs dimension at least 1");
    if constexpr (HasROracle<M>)
        return m.r_inverse(fold(m, a), 1).has_value();
    else
        throw OracleUnavailable("model has no R_1 decision procedure");
}

/**
 * T_i A assembled around R_i psi_i A: three rows stacked along i, the outer
 * rows being composites along i+1:
 *   eps_i d_{i+1}^- A . G+ d_i^+ A  /  R_i psi_i A  /  G- d_i^- A . eps_i d_{i+1}^+ A
 */
template <CubicalModel M>
typename M::Cell t_inverse_via_psi(const M& m, const typename M::Cell& a, int i)
{
    using S = Sign;
    int n = m.dim(a);
    if (i < 1 || i >= n)
        throw DomainError("t_inverse: index out of range");
    if constexpr (!HasROracle<M>) {
        throw OracleUnavailable("model has no R_i decision procedure");
    } else {
        auto p = psi(m, a, i);
        auto r = m.r_inverse(p, i);
        if (!r)
            throw NotInvertible("psi_" + std::to_string(i) + " A is not R_" + std::to_string(i) + "-invertible");
        auto top = m.compose(m.degen(m.face(a, i + 1, S::Minus), i), m.conn(m.face(a, i, S::Plus), i, S::Plus), i + 1);
        auto bottom = m.compose(m.conn(m.face(a, i, S::Minus), i, S::Minus), m.degen(m.face(a, i + 1, S::Plus), i), i + 1);
        auto t = m.compose(m.compose(top, *r, i), bottom, i);
        if (!verify_t_inverse(m, a, t, i))
            throw NotInvertible("assembled T_" + std::to_string(i) + "-inverse fails its defining equations");
        return t;
    }
}

// Closed form when the model has one, otherwise the psi route.
template <CubicalModel M>
std::optional<typename M::Cell> try_t_inverse(const M& m, const typename M::Cell& a, int i)
{
    if constexpr (HasTOracle<M>) {
        return m.t_inverse(a, i);
    } else {
        try {
            return t_inverse_via_psi(m, a, i);
        } catch (const NotInvertible&) {
            return std::nullopt;
        }
    }
}

template <CubicalModel M>
typename M::Cell t_inverse(const M& m, const typename M::Cell& a, int i)
{
    auto t = try_t_inverse(m, a, i);
    if (!t)
        throw NotInvertible("cell is not T_" + std::to_string(i) + "-invertible");
    return *t;
}

// T_i-invertibility decided through R_i psi_i.
template <HasROracle M>
bool is_t_invertible(const M& m, const typename M::Cell& a, int i)
{
    return m.r_inverse(psi(m, a, i), i).has_value();
}

template <HasROracle M>
bool has_r_invertible_shell(const M& m, const typename M::Cell& a, int i)
{
    int n = m.dim(a);
    for (int j = 1; j <= n; ++j) {
        if (j == i)
            continue;
        for (Sign s : kSigns)
            if (!m.r_inverse(m.face(a, j, s), lower(i, j)))
                return false;
    }
    return true;
}

template <HasROracle M>
bool has_t_invertible_shell(const M& m, const typename M::Cell& a, int i)
{
    int n = m.dim(a);
    if (n < 2)
        throw DomainError("T shells need dimension at least 2");
    for (int j = 1; j <= n; ++j) {
        if (j == i || j == i + 1)
            continue;
        for (Sign s : kSigns)
            if (!is_t_invertible(m, m.face(a, j, s), lower(i, j)))
                return false;
    }
    return true;
}

// (T_a . u) . A = T_a (u . A): letters act from the right end of the word.
template <CubicalModel M>
typename M::Cell apply_word(const M& m, typename M::Cell a, const TWord& w)
{
    if (w.ambient != m.dim(a))
        throw DomainError("word ambient differs from cell dimension");
    for (std::size_t k = w.letters.size(); k-- > 0;) {
        auto t = try_t_inverse(m, a, w.letters[k]);
        if (!t) {
            TWord done{w.ambient, std::vector<int>(w.letters.begin() + k + 1, w.letters.end())};
            throw NotInvertible("not T" + std::to_string(w.letters[k]) + "-invertible after applying [" + done.str() + "]");
        }
        a = *t;
    }
    return a;
}

template <CubicalModel M>
typename M::Cell sigma_act(const M& m, const typename M::Cell& a, const Perm& sigma)
{
    return apply_word(m, a, min_rep(sigma));
}

/**
 * Composite description for assembling R_k-inverses from leaf inverses.
 */
template <class Cell>
struct Expr {
    enum Kind { Leaf, Eps, Gamma, Star } kind = Leaf;
    int index = 0;
    Sign sign = Sign::Minus;
    std::optional<Cell> leaf;
    std::map<int, Cell> leaf_inverses; // R_k of the leaf, by k
    std::shared_ptr<const Expr> left, right;

    static std::shared_ptr<const Expr> make_leaf(Cell c, std::map<int, Cell> inv = {})
    {
        auto e = std::make_shared<Expr>();
        e->leaf = std::move(c);
        e->leaf_inverses = std::move(inv);
        return e;
    }
    static std::shared_ptr<const Expr> eps(int i, std::shared_ptr<const Expr> x)
    {
        auto e = std::make_shared<Expr>();
        e->kind = Eps;
        e->index = i;
        e->left = std::move(x);
        return e;
    }
    static std::shared_ptr<const Expr> gamma(int i, Sign s, std::shared_ptr<const Expr> x)
    {
        auto e = std::make_shared<Expr>();
        e->kind = Gamma;
        e->index = i;
        e->sign = s;
        e->left = std::move(x);
        return e;
    }
    static std::shared_ptr<const Expr> star(int i, std::shared_ptr<const Expr> x, std::shared_ptr<const Expr> y)
    {
        auto e = std::make_shared<Expr>();
        e->kind = Star;
        e->index = i;
        e->left = std::move(x);
        e->right = std::move(y);
        return e;
    }
};

template <CubicalModel M>
typename M::Cell eval_expr(const M& m, const Expr<typename M::Cell>& e)
{
    using E = Expr<typename M::Cell>;
    if ((e.kind != E::Leaf && !e.left) || (e.kind == E::Star && !e.right) || (e.kind == E::Leaf && !e.leaf))
        throw DomainError("malformed composite expression");
    switch (e.kind) {
    case E::Leaf: return *e.leaf;
    case E::Eps: return m.degen(eval_expr(m, *e.left), e.index);
    case E::Gamma: return m.conn(eval_expr(m, *e.left), e.index, e.sign);
    case E::Star: return m.compose(eval_expr(m, *e.left), eval_expr(m, *e.right), e.index);
    }
    throw DomainError("malformed composite expression");
}

/**
 * R_k of a composite by case analysis: order reversal along k, componentwise
 * otherwise, re-indexing through eps and Gamma, and the four corner cases
 *   R_i G_i^- A = eps_{i+1} R_i A *_i G_i^+ A
 *   R_i G_i^+ A = G_i^- A *_i eps_{i+1} R_i A
 *   R_{i+1} G_i^- A = eps_i R_i A *_{i+1} G_i^+ A
 *   R_{i+1} G_i^+ A = G_i^- A *_{i+1} eps_i R_i A
 */
template <CubicalModel M>
typename M::Cell r_inverse_by_closure(const M& m, const Expr<typename M::Cell>& e, int k)
{
    using E = Expr<typename M::Cell>;
    if ((e.kind != E::Leaf && !e.left) || (e.kind == E::Star && !e.right) || (e.kind == E::Leaf && !e.leaf))
        throw DomainError("malformed composite expression");
    const int i = e.index;
    switch (e.kind) {
    case E::Leaf: {
        auto it = e.leaf_inverses.find(k);
        if (it == e.leaf_inverses.end())
            throw DomainError("leaf has no R_" + std::to_string(k) + "-inverse supplied");
        return it->second;
    }
    case E::Eps:
        if (k == i)
            return eval_expr(m, e);
        return m.degen(r_inverse_by_closure(m, *e.left, lower(k, i)), i);
    case E::Gamma: {
        auto a = eval_expr(m, *e.left);
        if (k != i && k != i + 1)
            return m.conn(r_inverse_by_closure(m, *e.left, k < i ? k : k - 1), i, e.sign);
        auto ra = r_inverse_by_closure(m, *e.left, i);
        if (k == i) {
            if (e.sign == Sign::Minus)
                return m.compose(m.degen(ra, i + 1), m.conn(a, i, Sign::Plus), i);
            return m.compose(m.conn(a, i, Sign::Minus), m.degen(ra, i + 1), i);
        }
        if (e.sign == Sign::Minus)
            return m.compose(m.degen(ra, i), m.conn(a, i, Sign::Plus), i + 1);
        return m.compose(m.conn(a, i, Sign::Minus), m.degen(ra, i), i + 1);
    }
    case E::Star: {
        auto l = r_inverse_by_closure(m, *e.left, k);
        auto r = r_inverse_by_closure(m, *e.right, k);
        return i == k ? m.compose(r, l, k) : m.compose(l, r, i);
    }
    }
    throw DomainError("malformed composite expression");
}

/**
 * Evidence for the least p such that the model looks like a cubical
 * (omega,p)-category, gathered on finite samples.
 */
template <class Cell>
struct ClassifyReport {
    struct Dim {
        int n = 0;
        std::size_t sample = 0, invertible = 0, disagreements = 0;
        bool cond1 = true; // every sampled n-cell is invertible
        bool cond3 = true; // R_1-invertible shell implies R_1-invertible
        bool cond5 = true; // Phi_n-images are R_1-invertible
        bool cond7 = true; // T_1-invertible shell implies T_1-invertible (n >= 2)
        std::optional<Cell> witness;
    };
    std::vector<Dim> dims;
    int p_estimate = 0;
    bool witnessed = false;
    std::string sample_description;
};

/**
 * Per cell, the fold-then-oracle route is compared with the closed-form
 * oracle applied to A and to Phi_n A, and with the shell criteria.
 */
template <HasROracle M>
ClassifyReport<typename M::Cell> classify_omega_p(const M& m, const std::map<int, std::vector<typename M::Cell>>& samples,
                                                  std::string description)
{
    ClassifyReport<typename M::Cell> rep;
    rep.sample_description = std::move(description);
    for (const auto& [n, cells] : samples) {
        if (n < 1)
            continue;
        typename ClassifyReport<typename M::Cell>::Dim d;
        d.n = n;
        d.sample = cells.size();
        for (const auto& a : cells) {
            bool inv = is_plain_invertible(m, a);
            bool r1 = m.r_inverse(a, 1).has_value();
            bool r1_shell = has_r_invertible_shell(m, a, 1);
            bool phi_r1 = m.r_inverse(Phi(m, a, n), 1).has_value();
            bool agree = (inv == phi_r1) && (r1 == (inv && r1_shell));
            if (n >= 2) {
                bool t1 = try_t_inverse(m, a, 1).has_value();
                bool t1_psi = is_t_invertible(m, a, 1);
                bool t1_shell = has_t_invertible_shell(m, a, 1);
                agree = agree && (t1 == t1_psi) && (t1 == (inv && t1_shell));
                if (t1_shell && !t1)
                    d.cond7 = false;
            }
            if (!agree)
                ++d.disagreements;
            if (inv)
                ++d.invertible;
            else {
                d.cond1 = false;
                if (!d.witness)
                    d.witness = a;
            }
            if (r1_shell && !r1)
                d.cond3 = false;
            if (!phi_r1)
                d.cond5 = false;
        }
        if (d.witness) {
            rep.witnessed = true;
            rep.p_estimate = std::max(rep.p_estimate, n);
        }
        rep.dims.push_back(std::move(d));
    }
    return rep;
}

} // namespace cubeforge
