#pragma once

#include "axioms.hpp"
#include "cubical.hpp"

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace cubeforge {

/**
 * Globular view of a cubical model: n-cells are the Phi_n-images, with
 * source and target d_1^- and d_1^+, identity eps_1 and A #_k B = A *_{n-k} B.
 */
template <CubicalModel M>
class GammaView {
public:
    using Cell = typename M::Cell;

    explicit GammaView(const M& m) : m_(m) {}

    const M& model() const { return m_; }

    bool is_cell(const Cell& a) const { return Phi(m_, a, m_.dim(a)) == a; }
    Cell project(const Cell& a) const { return Phi(m_, a, m_.dim(a)); }

    Cell source(const Cell& a) const { return m_.face(a, 1, Sign::Minus); }
    Cell target(const Cell& a) const { return m_.face(a, 1, Sign::Plus); }
    Cell identity(const Cell& a) const { return m_.degen(a, 1); }

    // Iterated source/target down to dimension k.
    Cell boundary(Cell a, int k, Sign s) const
    {
        while (m_.dim(a) > k)
            a = m_.face(a, 1, s);
        return a;
    }

    // Iterated identity up to dimension n.
    Cell unit(Cell a, int n) const
    {
        while (m_.dim(a) < n)
            a = m_.degen(a, 1);
        return a;
    }

    bool composable(const Cell& a, const Cell& b, int k) const
    {
        int n = m_.dim(a);
        return n == m_.dim(b) && k >= 0 && k < n && boundary(a, k, Sign::Plus) == boundary(b, k, Sign::Minus);
    }

    Cell compose(const Cell& a, const Cell& b, int k) const
    {
        int n = m_.dim(a);
        if (k < 0 || k >= n)
            throw DomainError("globular composition index out of range");
        return m_.compose(a, b, n - k);
    }

private:
    const M& m_;
};

template <CubicalModel M>
GammaView<M> gamma_view(const M& m)
{
    return GammaView<M>(m);
}

/**
 * Globular axioms over a sample of Phi-images: closure of the image under
 * the operations, globularity, units, boundaries of composites,
 * associativity and exchange. Partners come from the sample and from units.
 */
template <CubicalModel M>
AxiomReport check_globular(const GammaView<M>& g, const std::vector<typename M::Cell>& sample, std::size_t max_recorded = 200)
{
    using Cell = typename M::Cell;
    const M& m = g.model();
    AxiomReport rep;
    auto eq = [&](const std::string& fam, const std::string& inst, auto&& lhs, auto&& rhs) {
        ++rep.instances[fam];
        std::string detail;
        try {
            Cell l = lhs(), r = rhs();
            if (l == r)
                return;
            detail = "lhs " + m.describe(l) + " != rhs " + m.describe(r);
        } catch (const Error& e) {
            detail = e.what();
        }
        ++rep.violation_count;
        if (rep.violations.size() < max_recorded)
            rep.violations.push_back({fam, inst, detail});
    };
    auto holds = [&](const std::string& fam, const std::string& inst, bool ok, const std::string& what) {
        ++rep.instances[fam];
        if (ok)
            return;
        ++rep.violation_count;
        if (rep.violations.size() < max_recorded)
            rep.violations.push_back({fam, inst, what});
    };

    // sample cells keyed by (k, k-source)
    std::unordered_map<std::string, std::vector<std::size_t>> by_source;
    for (std::size_t x = 0; x < sample.size(); ++x) {
        int n = m.dim(sample[x]);
        for (int k = 0; k < n; ++k)
            by_source[std::to_string(n) + "|" + std::to_string(k) + "|" + m.describe(g.boundary(sample[x], k, Sign::Minus))]
                .push_back(x);
    }
    auto partners = [&](const Cell& a, int k) {
        int n = m.dim(a);
        std::vector<Cell> out;
        Cell t = g.boundary(a, k, Sign::Plus);
        auto it = by_source.find(std::to_string(n) + "|" + std::to_string(k) + "|" + m.describe(t));
        if (it != by_source.end())
            for (std::size_t q = 0; q < it->second.size() && q < 2; ++q)
                out.push_back(sample[it->second[q]]);
        out.push_back(g.unit(t, n));
        return out;
    };

    for (const Cell& a : sample) {
        ++rep.cells;
        int n = m.dim(a);
        std::string an = "n=" + std::to_string(n);
        holds("image", an, g.is_cell(a), "sample cell is not a Phi_n-image: " + m.describe(a));
        if (n + 1 <= m.max_dim())
            holds("image", an + " identity", g.is_cell(g.identity(a)), "identity leaves the image");
        if (n >= 1) {
            holds("image", an + " source", g.is_cell(g.source(a)), "source leaves the image");
            holds("image", an + " target", g.is_cell(g.target(a)), "target leaves the image");
        }
        if (n + 1 <= m.max_dim()) {
            eq("units", an + " s(1_A)", [&] { return g.source(g.identity(a)); }, [&] { return a; });
            eq("units", an + " t(1_A)", [&] { return g.target(g.identity(a)); }, [&] { return a; });
        }
        if (n >= 2) {
            eq("globularity", an + " ss=st", [&] { return g.source(g.source(a)); }, [&] { return g.source(g.target(a)); });
            eq("globularity", an + " ts=tt", [&] { return g.target(g.source(a)); }, [&] { return g.target(g.target(a)); });
        }
        for (int k = 0; k < n; ++k) {
            std::string ak = an + " k=" + std::to_string(k);
            eq("units", ak + " right", [&] { return g.compose(a, g.unit(g.boundary(a, k, Sign::Plus), n), k); },
               [&] { return a; });
            eq("units", ak + " left", [&] { return g.compose(g.unit(g.boundary(a, k, Sign::Minus), n), a, k); },
               [&] { return a; });
            auto bs = partners(a, k);
            for (std::size_t bi = 0; bi < bs.size(); ++bi) {
                const Cell& b = bs[bi];
                std::string ab = ak + " partner=" + std::to_string(bi);
                bool closed = false;
                std::string why = "composite leaves the image";
                try {
                    closed = g.is_cell(g.compose(a, b, k));
                } catch (const Error& e) {
                    why = e.what();
                }
                holds("image", ab + " composite", closed, why);
                if (k == n - 1) {
                    eq("boundary_comp", ab + " source", [&] { return g.source(g.compose(a, b, k)); },
                       [&] { return g.source(a); });
                    eq("boundary_comp", ab + " target", [&] { return g.target(g.compose(a, b, k)); },
                       [&] { return g.target(b); });
                } else {
                    eq("boundary_comp", ab + " source", [&] { return g.source(g.compose(a, b, k)); },
                       [&] { return g.compose(g.source(a), g.source(b), k); });
                    eq("boundary_comp", ab + " target", [&] { return g.target(g.compose(a, b, k)); },
                       [&] { return g.compose(g.target(a), g.target(b), k); });
                }
                auto cs = partners(b, k);
                for (std::size_t ci = 0; ci < cs.size(); ++ci)
                    eq("associativity", ab + " third=" + std::to_string(ci),
                       [&] { return g.compose(g.compose(a, b, k), cs[ci], k); },
                       [&] { return g.compose(a, g.compose(b, cs[ci], k), k); });
                // exchange with j < k, lower row from partners of a and b along j
                for (int j = 0; j < k; ++j) {
                    auto ccs = partners(a, j);
                    auto dds = partners(b, j);
                    for (const Cell& c : ccs)
                        for (const Cell& d : dds) {
                            if (!g.composable(c, d, k))
                                continue;
                            eq("exchange", ab + " j=" + std::to_string(j),
                               [&] { return g.compose(g.compose(a, b, k), g.compose(c, d, k), j); },
                               [&] { return g.compose(g.compose(a, c, j), g.compose(b, d, j), k); });
                        }
                }
            }
        }
    }
    return rep;
}

} // namespace cubeforge
