#pragma once

#include "axioms.hpp"
#include "cubical.hpp"
#include "invertibility.hpp"

#include <memory>
#include <optional>
#include <string>

namespace cubeforge {

/**
 * Box construction: agrees with the base model up to dimension n and takes
 * compatible shells as its (n+1)-cells.
 */
template <CubicalModel M>
class BoxModel {
public:
    using Base = typename M::Cell;
    using Family = Shell<Base>;

    struct Cell {
        int dim = 0;
        std::optional<Base> base;
        std::shared_ptr<const Family> shell;

        bool operator==(const Cell& o) const
        {
            if (dim != o.dim || base.has_value() != o.base.has_value())
                return false;
            return base ? *base == *o.base : *shell == *o.shell;
        }
    };

    BoxModel(const M& m, int n) : m_(m), n_(n)
    {
        if (n < 0 || n >= m.max_dim())
            throw DomainError("box level must lie below the ambient maximal dimension");
    }

    int max_dim() const { return n_ + 1; }
    int level() const { return n_; }
    int dim(const Cell& a) const { return a.dim; }
    const M& base_model() const { return m_; }

    Cell lift(const Base& b) const
    {
        int d = m_.dim(b);
        if (d > n_)
            throw DomainError("base cell above the box level");
        return Cell{d, b, nullptr};
    }

    Cell make(Family f) const
    {
        if (f.base_dim != n_ || static_cast<int>(f.faces.size()) != n_ + 1)
            throw DomainError("family of the wrong size");
        if (!shell_compatible(m_, f))
            throw DomainError("family is not a compatible shell");
        return Cell{n_ + 1, std::nullopt, std::make_shared<const Family>(std::move(f))};
    }

    Cell from_base(const Base& b) const
    {
        int d = m_.dim(b);
        if (d <= n_)
            return lift(b);
        if (d == n_ + 1)
            return make(shell(m_, b));
        throw DomainError("base cell above the box");
    }

    Cell face(const Cell& a, int i, Sign s) const
    {
        if (i < 1 || i > a.dim)
            throw DomainError("face index out of range");
        if (a.base)
            return lift(m_.face(*a.base, i, s));
        return lift(a.shell->at(i, s));
    }

    Cell degen(const Cell& a, int i) const
    {
        if (a.dim > n_)
            throw DomainError("degeneracy leaves the box");
        if (a.dim < n_)
            return lift(m_.degen(*a.base, i));
        if (i < 1 || i > n_ + 1)
            throw DomainError("degeneracy index out of range");
        const Base& x = *a.base;
        Family f{n_, {}};
        for (int j = 1; j <= n_ + 1; ++j) {
            if (j == i)
                f.faces.push_back({x, x});
            else
                f.faces.push_back({m_.degen(m_.face(x, lower(j, i), Sign::Minus), lower(i, j)),
                                   m_.degen(m_.face(x, lower(j, i), Sign::Plus), lower(i, j))});
        }
        return Cell{n_ + 1, std::nullopt, std::make_shared<const Family>(std::move(f))};
    }

    Cell conn(const Cell& a, int i, Sign s) const
    {
        if (a.dim > n_)
            throw DomainError("connection leaves the box");
        if (a.dim < n_)
            return lift(m_.conn(*a.base, i, s));
        if (i < 1 || i > n_)
            throw DomainError("connection index out of range");
        const Base& x = *a.base;
        Family f{n_, {}};
        for (int j = 1; j <= n_ + 1; ++j) {
            std::array<Base, 2> pair{x, x};
            for (Sign b : kSigns) {
                Base v = x;
                if (j == i || j == i + 1)
                    v = b == s ? x : m_.degen(m_.face(x, i, b), i);
                else
                    v = m_.conn(m_.face(x, lower(j, i), b), lower(i, j), s);
                pair[static_cast<int>(b)] = v;
            }
            f.faces.push_back(pair);
        }
        return Cell{n_ + 1, std::nullopt, std::make_shared<const Family>(std::move(f))};
    }

    bool composable(const Cell& a, const Cell& b, int i) const
    {
        if (a.dim != b.dim || i < 1 || i > a.dim)
            return false;
        if (a.base)
            return m_.composable(*a.base, *b.base, i);
        return a.shell->at(i, Sign::Plus) == b.shell->at(i, Sign::Minus);
    }

    Cell compose(const Cell& a, const Cell& b, int i) const
    {
        if (a.dim != b.dim || i < 1 || i > a.dim)
            throw DomainError("composition index or dimensions out of range");
        if (a.base)
            return lift(m_.compose(*a.base, *b.base, i));
        if (!composable(a, b, i))
            throw CompositionError("shells are not composable along " + std::to_string(i),
                                   m_.describe(a.shell->at(i, Sign::Plus)), m_.describe(b.shell->at(i, Sign::Minus)));
        Family f{n_, {}};
        for (int j = 1; j <= n_ + 1; ++j) {
            if (j == i)
                f.faces.push_back({a.shell->at(i, Sign::Minus), b.shell->at(i, Sign::Plus)});
            else
                f.faces.push_back({m_.compose(a.shell->at(j, Sign::Minus), b.shell->at(j, Sign::Minus), lower(i, j)),
                                   m_.compose(a.shell->at(j, Sign::Plus), b.shell->at(j, Sign::Plus), lower(i, j))});
        }
        return Cell{n_ + 1, std::nullopt, std::make_shared<const Family>(std::move(f))};
    }

    std::string describe(const Cell& a) const
    {
        if (a.base)
            return m_.describe(*a.base);
        std::string out = "shell{";
        for (int j = 1; j <= n_ + 1; ++j)
            for (Sign s : kSigns)
                out += std::string(j > 1 || s == Sign::Plus ? " " : "") + "d" + std::to_string(j) + sign_str(s) + "=" +
                       m_.describe(a.shell->at(j, s));
        return out + "}";
    }

    // Shells invert facewise: the k-faces swap and every other face takes its R_{k_j}-inverse.
    std::optional<Cell> r_inverse(const Cell& a, int k) const
        requires HasROracle<M>
    {
        if (a.base) {
            auto r = m_.r_inverse(*a.base, k);
            if (!r)
                return std::nullopt;
            return lift(*r);
        }
        if (k < 1 || k > a.dim)
            throw DomainError("R index out of range");
        Family f{n_, {}};
        for (int j = 1; j <= n_ + 1; ++j) {
            if (j == k) {
                f.faces.push_back({a.shell->at(k, Sign::Plus), a.shell->at(k, Sign::Minus)});
                continue;
            }
            auto lo = m_.r_inverse(a.shell->at(j, Sign::Minus), lower(k, j));
            auto hi = m_.r_inverse(a.shell->at(j, Sign::Plus), lower(k, j));
            if (!lo || !hi)
                return std::nullopt;
            f.faces.push_back({*lo, *hi});
        }
        Cell b{n_ + 1, std::nullopt, std::make_shared<const Family>(std::move(f))};
        if (!verify_r_inverse(*this, a, b, k))
            throw NotInvertible("facewise R-inverse of a shell fails its equations");
        return b;
    }

private:
    const M& m_;
    int n_;
};

template <CubicalModel M>
BoxModel<M> box_model(const M& m, int n)
{
    return BoxModel<M>(m, n);
}

// Filler on the box through the base filler; (n+1)-cells are shells of filled base cells.
template <CubicalModel M>
Filler<typename BoxModel<M>::Cell> box_filler(const BoxModel<M>& box, const Filler<typename M::Cell>& base)
{
    using BC = typename BoxModel<M>::Cell;
    return [&box, base](int n, const std::vector<FaceConstraint<BC>>& cons) -> std::optional<BC> {
        std::vector<FaceConstraint<typename M::Cell>> lowered;
        for (const auto& c : cons) {
            if (!c.face.base)
                return std::nullopt;
            lowered.push_back({c.i, c.a, *c.face.base});
        }
        auto b = base(n, lowered);
        if (!b)
            return std::nullopt;
        return box.from_base(*b);
    };
}

} // namespace cubeforge
