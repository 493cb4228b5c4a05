#pragma once

#include "integer.hpp"

#include <string>
#include <vector>

namespace cubeforge {

/**
 * Smith normal form of an integer matrix R.
 * P * R * Q == D and R == U * D * V, with U = P^-1, V = Q^-1 unimodular.
 * The nonzero diagonal of D is positive and each entry divides the next.
 */
struct SmithForm {
    Matrix U, D, V, P, Q;
    std::vector<Integer> factors; // nonzero diagonal entries of D
};

inline SmithForm smith(const Matrix& R)
{
    const std::size_t m = R.rows, n = R.cols;
    SmithForm f{Matrix::identity(m), R, Matrix::identity(n), Matrix::identity(m), Matrix::identity(n), {}};
    Matrix& D = f.D;

    auto swap_rows = [&](std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t c = 0; c < n; ++c)
            std::swap(D(a, c), D(b, c));
        for (std::size_t c = 0; c < m; ++c)
            std::swap(f.P(a, c), f.P(b, c));
        for (std::size_t r = 0; r < m; ++r)
            std::swap(f.U(r, a), f.U(r, b));
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t r = 0; r < m; ++r)
            std::swap(D(r, a), D(r, b));
        for (std::size_t r = 0; r < n; ++r)
            std::swap(f.Q(r, a), f.Q(r, b));
        for (std::size_t c = 0; c < n; ++c)
            std::swap(f.V(a, c), f.V(b, c));
    };
    // row a += c * row b
    auto add_row = [&](std::size_t a, std::size_t b, const Integer& c) {
        for (std::size_t k = 0; k < n; ++k)
            D(a, k) += c * D(b, k);
        for (std::size_t k = 0; k < m; ++k)
            f.P(a, k) += c * f.P(b, k);
        for (std::size_t r = 0; r < m; ++r)
            f.U(r, b) -= c * f.U(r, a);
    };
    // col a += c * col b
    auto add_col = [&](std::size_t a, std::size_t b, const Integer& c) {
        for (std::size_t r = 0; r < m; ++r)
            D(r, a) += c * D(r, b);
        for (std::size_t r = 0; r < n; ++r)
            f.Q(r, a) += c * f.Q(r, b);
        for (std::size_t k = 0; k < n; ++k)
            f.V(b, k) -= c * f.V(a, k);
    };
    auto negate_row = [&](std::size_t a) {
        for (std::size_t k = 0; k < n; ++k)
            D(a, k) = -D(a, k);
        for (std::size_t k = 0; k < m; ++k)
            f.P(a, k) = -f.P(a, k);
        for (std::size_t r = 0; r < m; ++r)
            f.U(r, a) = -f.U(r, a);
    };

    std::size_t t = 0;
    for (; t < m && t < n; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::size_t pr = m, pc = n;
            for (std::size_t r = t; r < m; ++r)
                for (std::size_t c = t; c < n; ++c)
                    if (D(r, c) != 0 && (pr == m || abs(D(r, c)) < abs(D(pr, pc)))) {
                        pr = r;
                        pc = c;
                    }
            if (pr == m)
                break;
            swap_rows(t, pr);
            swap_cols(t, pc);
            bool clean = true;
            for (std::size_t r = t + 1; r < m; ++r)
                if (D(r, t) != 0) {
                    Integer q = D(r, t) / D(t, t);
                    add_row(r, t, -q);
                    if (D(r, t) != 0)
                        clean = false;
                }
            for (std::size_t c = t + 1; c < n; ++c)
                if (D(t, c) != 0) {
                    Integer q = D(t, c) / D(t, t);
                    add_col(c, t, -q);
                    if (D(t, c) != 0)
                        clean = false;
                }
            if (!clean)
                continue;
            std::size_t bad = m;
            for (std::size_t r = t + 1; r < m && bad == m; ++r)
                for (std::size_t c = t + 1; c < n; ++c)
                    if (D(r, c) % D(t, t) != 0) {
                        bad = r;
                        break;
                    }
            if (bad == m)
                break;
            add_row(t, bad, 1);
        }
        if (D(t, t) == 0)
            break;
        if (D(t, t) < 0)
            negate_row(t);
        f.factors.push_back(D(t, t));
    }
    return f;
}

/**
 * Finitely presented abelian group Z^gens / (row space of relations).
 * Coordinates in the quotient: one entry per nontrivial invariant factor
 * (reduced modulo it), then one per free generator.
 */
struct AbelianPresentation {
    std::vector<std::string> generators;
    Matrix relations;
    SmithForm smith;

    int free_rank() const { return static_cast<int>(generators.size() - smith.factors.size()); }

    std::vector<Integer> torsion() const
    {
        std::vector<Integer> out;
        for (const Integer& d : smith.factors)
            if (d != 1)
                out.push_back(d);
        return out;
    }

    bool is_trivial() const { return free_rank() == 0 && torsion().empty(); }

    Vec reduce(const Vec& x) const
    {
        if (x.size() != generators.size())
            throw DomainError("reduce: wrong number of coordinates");
        const Matrix& Q = smith.Q;
        Vec out;
        for (std::size_t c = 0; c < Q.cols; ++c) {
            Integer y = 0;
            for (std::size_t r = 0; r < Q.rows; ++r)
                y += x[r] * Q(r, c);
            if (c < smith.factors.size()) {
                const Integer& d = smith.factors[c];
                if (d == 1)
                    continue;
                y %= d;
                if (y < 0)
                    y += d;
            }
            out.push_back(y);
        }
        return out;
    }

    // Images of the generators; they generate the image of the positivity cone.
    std::vector<Vec> cone_image() const
    {
        std::vector<Vec> out;
        for (std::size_t g = 0; g < generators.size(); ++g) {
            Vec e(generators.size());
            e[g] = 1;
            out.push_back(reduce(e));
        }
        return out;
    }

    /**
     * Boundary induced on quotient coordinates. faces[g] is the boundary of
     * generator g written over the generators of the lower presentation.
     */
    std::vector<Vec> induced_boundary(const AbelianPresentation& lower, const std::vector<Vec>& faces) const
    {
        if (faces.size() != generators.size())
            throw DomainError("induced_boundary: one face vector per generator expected");
        std::vector<Vec> out;
        for (const Vec& f : faces)
            out.push_back(lower.reduce(f));
        return out;
    }
};

inline AbelianPresentation abelianize(std::vector<std::string> gens, const std::vector<Vec>& relations)
{
    Matrix R(relations.size(), gens.size());
    for (std::size_t r = 0; r < relations.size(); ++r) {
        if (relations[r].size() != gens.size())
            throw DomainError("relation length does not match generator count");
        for (std::size_t c = 0; c < gens.size(); ++c)
            R(r, c) = relations[r][c];
    }
    AbelianPresentation p{std::move(gens), R, smith(R)};
    return p;
}

} // namespace cubeforge
