#pragma once

#include "cubical.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace cubeforge {

// Pin the d_i^a face of a requested cell to a given lower cell.
template <class Cell>
struct FaceConstraint {
    int i;
    Sign a;
    Cell face;
};

template <class Cell>
using Filler = std::function<std::optional<Cell>(int n, const std::vector<FaceConstraint<Cell>>&)>;

struct Violation {
    std::string family;
    std::string instance;
    std::string detail;
};

struct AxiomReport {
    std::map<std::string, std::size_t> instances;
    std::vector<Violation> violations;
    std::size_t violation_count = 0;
    std::size_t cells = 0;

    bool ok() const { return violation_count == 0; }

    std::size_t total() const
    {
        std::size_t t = 0;
        for (const auto& [k, v] : instances)
            t += v;
        return t;
    }

    void merge(const AxiomReport& o)
    {
        for (const auto& [k, v] : o.instances)
            instances[k] += v;
        violations.insert(violations.end(), o.violations.begin(), o.violations.end());
        violation_count += o.violation_count;
        cells += o.cells;
    }
};

struct AxiomOptions {
    std::size_t partners_from_sample = 2; // per (cell, direction)
    bool use_filler = true;
    std::size_t max_recorded = 200;
};

namespace detail {

template <CubicalModel M>
class AxiomRun {
public:
    using Cell = typename M::Cell;

    AxiomRun(const M& m, const std::vector<Cell>& sample, const Filler<Cell>* filler, const AxiomOptions& opt)
        : m_(m), sample_(sample), filler_(filler), opt_(opt)
    {
        for (std::size_t k = 0; k < sample_.size(); ++k) {
            int n = m_.dim(sample_[k]);
            for (int j = 1; j <= n; ++j)
                by_lower_face_[key(j, m_.face(sample_[k], j, Sign::Minus))].push_back(k);
        }
    }

    AxiomReport run()
    {
        for (const Cell& a : sample_) {
            ++rep_.cells;
            unary(a);
            pairs(a);
        }
        return std::move(rep_);
    }

private:
    const M& m_;
    const std::vector<Cell>& sample_;
    const Filler<Cell>* filler_;
    AxiomOptions opt_;
    AxiomReport rep_;
    std::unordered_map<std::string, std::vector<std::size_t>> by_lower_face_;

    std::string key(int j, const Cell& f) const { return std::to_string(j) + "|" + m_.describe(f); }

    bool fits(int d) const { return d <= m_.max_dim(); }

    template <class L, class R>
    void eq(const std::string& family, const std::string& inst, L&& lhs, R&& rhs)
    {
        ++rep_.instances[family];
        std::string detail;
        try {
            Cell l = lhs();
            Cell r = rhs();
            if (l == r)
                return;
            detail = "lhs " + m_.describe(l) + " != rhs " + m_.describe(r);
        } catch (const CompositionError& e) {
            detail = std::string("undefined composite: ") + e.what();
        } catch (const DomainError& e) {
            detail = std::string("domain error: ") + e.what();
        }
        ++rep_.violation_count;
        if (rep_.violations.size() < opt_.max_recorded)
            rep_.violations.push_back({family, inst, detail});
    }

    static std::string s(Sign a) { return sign_str(a); }
    static std::string n2(int i) { return std::to_string(i); }

    void unary(const Cell& a)
    {
        const int n = m_.dim(a);
        // d_{i_j}^a d_j^b = d_{j_i}^b d_i^a
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                if (i == j)
                    continue;
                for (Sign x : kSigns)
                    for (Sign y : kSigns)
                        eq("face_face", "i=" + n2(i) + " j=" + n2(j) + " a=" + s(x) + " b=" + s(y),
                           [&] { return m_.face(m_.face(a, j, y), lower(i, j), x); },
                           [&] { return m_.face(m_.face(a, i, x), lower(j, i), y); });
            }
        if (fits(n + 1)) {
            // d_i^a eps_j = eps_{j_i} d_{i_j}^a (i != j), id (i = j)
            for (int j = 1; j <= n + 1; ++j)
                for (int i = 1; i <= n + 1; ++i)
                    for (Sign x : kSigns) {
                        std::string inst = "i=" + n2(i) + " j=" + n2(j) + " a=" + s(x);
                        if (i == j)
                            eq("face_degen", inst, [&] { return m_.face(m_.degen(a, j), i, x); }, [&] { return a; });
                        else
                            eq("face_degen", inst, [&] { return m_.face(m_.degen(a, j), i, x); },
                               [&] { return m_.degen(m_.face(a, lower(i, j), x), lower(j, i)); });
                    }
            // d_i^a G_j^b
            for (int j = 1; j <= n; ++j)
                for (int i = 1; i <= n + 1; ++i)
                    for (Sign x : kSigns)
                        for (Sign y : kSigns) {
                            std::string inst = "i=" + n2(i) + " j=" + n2(j) + " a=" + s(x) + " b=" + s(y);
                            auto lhs = [&] { return m_.face(m_.conn(a, j, y), i, x); };
                            if (i == j || i == j + 1) {
                                if (x == y)
                                    eq("face_conn", inst, lhs, [&] { return a; });
                                else
                                    eq("face_conn", inst, lhs, [&] { return m_.degen(m_.face(a, j, x), j); });
                            } else {
                                eq("face_conn", inst, lhs, [&] { return m_.conn(m_.face(a, lower(i, j), x), lower(j, i), y); });
                            }
                        }
            for (int i = 1; i <= n; ++i) {
                // transport equations
                eq("transport", "i=" + n2(i) + " along i",
                   [&] { return m_.compose(m_.conn(a, i, Sign::Plus), m_.conn(a, i, Sign::Minus), i); },
                   [&] { return m_.degen(a, i + 1); });
                eq("transport", "i=" + n2(i) + " along i+1",
                   [&] { return m_.compose(m_.conn(a, i, Sign::Plus), m_.conn(a, i, Sign::Minus), i + 1); },
                   [&] { return m_.degen(a, i); });
            }
        }
        if (fits(n + 2)) {
            // eps_{i^j} eps_j = eps_{j^i} eps_i
            for (int i = 1; i <= n + 1; ++i)
                for (int j = 1; j <= n + 1; ++j)
                    eq("degen_degen", "i=" + n2(i) + " j=" + n2(j),
                       [&] { return m_.degen(m_.degen(a, j), raise(i, j)); },
                       [&] { return m_.degen(m_.degen(a, i), raise(j, i)); });
            // G_{i^j}^a G_j^b = G_{j^i}^b G_i^a (i != j); G_{i+1}^a G_i^a = G_i^a G_i^a
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    for (Sign x : kSigns)
                        for (Sign y : kSigns) {
                            std::string inst = "i=" + n2(i) + " j=" + n2(j) + " a=" + s(x) + " b=" + s(y);
                            if (i != j)
                                eq("conn_conn", inst, [&] { return m_.conn(m_.conn(a, j, y), raise(i, j), x); },
                                   [&] { return m_.conn(m_.conn(a, i, x), raise(j, i), y); });
                            else if (x == y)
                                eq("conn_conn", inst, [&] { return m_.conn(m_.conn(a, i, x), i + 1, x); },
                                   [&] { return m_.conn(m_.conn(a, i, x), i, x); });
                        }
            // G_i^a eps_j = eps_{j^i} G_{i_j}^a (i != j), eps_i eps_i (i = j)
            for (int j = 1; j <= n + 1; ++j)
                for (int i = 1; i <= n + 1; ++i)
                    for (Sign x : kSigns) {
                        std::string inst = "i=" + n2(i) + " j=" + n2(j) + " a=" + s(x);
                        auto lhs = [&] { return m_.conn(m_.degen(a, j), i, x); };
                        if (i == j)
                            eq("conn_degen", inst, lhs, [&] { return m_.degen(m_.degen(a, i), i); });
                        else if (n >= 1)
                            eq("conn_degen", inst, lhs, [&] { return m_.degen(m_.conn(a, lower(i, j), x), raise(j, i)); });
                    }
        }
        // units
        for (int i = 1; i <= n; ++i) {
            eq("units", "right i=" + n2(i), [&] { return m_.compose(a, m_.degen(m_.face(a, i, Sign::Plus), i), i); },
               [&] { return a; });
            eq("units", "left i=" + n2(i), [&] { return m_.compose(m_.degen(m_.face(a, i, Sign::Minus), i), a, i); },
               [&] { return a; });
        }
    }

    // Cells B with d_j^- B = d_j^+ A: a few from the sample, one from the filler, and the unit.
    std::vector<Cell> partners(const Cell& a, int j)
    {
        std::vector<Cell> out;
        Cell f = m_.face(a, j, Sign::Plus);
        auto it = by_lower_face_.find(key(j, f));
        if (it != by_lower_face_.end())
            for (std::size_t k = 0; k < it->second.size() && out.size() < opt_.partners_from_sample; ++k)
                out.push_back(sample_[it->second[k]]);
        if (filler_ && opt_.use_filler)
            if (auto b = (*filler_)(m_.dim(a), {{j, Sign::Minus, f}}))
                out.push_back(*b);
        out.push_back(m_.degen(f, j));
        return out;
    }

    void pairs(const Cell& a)
    {
        const int n = m_.dim(a);
        for (int j = 1; j <= n; ++j) {
            auto bs = partners(a, j);
            for (std::size_t bi = 0; bi < bs.size(); ++bi) {
                const Cell& b = bs[bi];
                std::string tag = "j=" + n2(j) + " partner=" + n2(static_cast<int>(bi));
                // faces of a composite
                for (int i = 1; i <= n; ++i)
                    for (Sign x : kSigns) {
                        std::string inst = tag + " i=" + n2(i) + " a=" + s(x);
                        auto lhs = [&] { return m_.face(m_.compose(a, b, j), i, x); };
                        if (i != j)
                            eq("face_comp", inst, lhs,
                               [&] { return m_.compose(m_.face(a, i, x), m_.face(b, i, x), lower(j, i)); });
                        else if (x == Sign::Minus)
                            eq("face_comp", inst, lhs, [&] { return m_.face(a, i, x); });
                        else
                            eq("face_comp", inst, lhs, [&] { return m_.face(b, i, x); });
                    }
                if (fits(n + 1)) {
                    // eps_i (A *_j B) = eps_i A *_{j^i} eps_i B
                    for (int i = 1; i <= n + 1; ++i)
                        eq("degen_comp", tag + " i=" + n2(i), [&] { return m_.degen(m_.compose(a, b, j), i); },
                           [&] { return m_.compose(m_.degen(a, i), m_.degen(b, i), raise(j, i)); });
                    for (int i = 1; i <= n; ++i)
                        for (Sign x : kSigns) {
                            std::string inst = tag + " i=" + n2(i) + " a=" + s(x);
                            auto lhs = [&] { return m_.conn(m_.compose(a, b, j), i, x); };
                            if (i != j) {
                                eq("conn_comp", inst, lhs,
                                   [&] { return m_.compose(m_.conn(a, i, x), m_.conn(b, i, x), raise(j, i)); });
                            } else if (x == Sign::Minus) {
                                eq("conn_comp", inst, lhs, [&] {
                                    return compose_grid(m_, {{m_.conn(a, i, x), m_.degen(b, i + 1)},
                                                             {m_.degen(b, i), m_.conn(b, i, x)}},
                                                        i, i + 1);
                                });
                            } else {
                                eq("conn_comp", inst, lhs, [&] {
                                    return compose_grid(m_, {{m_.conn(a, i, x), m_.degen(a, i)},
                                                             {m_.degen(a, i + 1), m_.conn(b, i, x)}},
                                                        i, i + 1);
                                });
                            }
                        }
                }
                // associativity with a partner of b
                auto cs = partners(b, j);
                for (std::size_t ci = 0; ci < cs.size(); ++ci) {
                    const Cell& c = cs[ci];
                    eq("associativity", tag + " third=" + n2(static_cast<int>(ci)),
                       [&] { return m_.compose(m_.compose(a, b, j), c, j); },
                       [&] { return m_.compose(a, m_.compose(b, c, j), j); });
                }
                // interchange with a second row below (a b) along k != j
                for (int k = 1; k <= n; ++k) {
                    if (k == j)
                        continue;
                    for (auto& [c, d] : rows_below(a, b, j, k)) {
                        eq("interchange", tag + " k=" + n2(k),
                           [&] { return m_.compose(m_.compose(a, b, j), m_.compose(c, d, j), k); },
                           [&] { return m_.compose(m_.compose(a, c, k), m_.compose(b, d, k), j); });
                    }
                }
            }
        }
    }

    // (C, D) with A *_k C, B *_k D and C *_j D defined.
    std::vector<std::pair<Cell, Cell>> rows_below(const Cell& a, const Cell& b, int j, int k)
    {
        std::vector<std::pair<Cell, Cell>> out;
        int n = m_.dim(a);
        if (filler_ && opt_.use_filler) {
            auto c = (*filler_)(n, {{k, Sign::Minus, m_.face(a, k, Sign::Plus)}});
            if (c) {
                auto d = (*filler_)(n, {{k, Sign::Minus, m_.face(b, k, Sign::Plus)}, {j, Sign::Minus, m_.face(*c, j, Sign::Plus)}});
                if (d)
                    out.emplace_back(*c, *d);
            }
        }
        out.emplace_back(m_.degen(m_.face(a, k, Sign::Plus), k), m_.degen(m_.face(b, k, Sign::Plus), k));
        return out;
    }
};

} // namespace detail

/**
 * Evaluates every equation family of cubical sets with connections and of
 * cubical omega-categories on the sample. Composable partners come from the
 * sample itself, from the optional filler and from degenerate units.
 */
template <CubicalModel M>
AxiomReport check_axioms(const M& m, const std::vector<typename M::Cell>& sample,
                         const Filler<typename M::Cell>* filler = nullptr, AxiomOptions opt = {})
{
    return detail::AxiomRun<M>(m, sample, filler, opt).run();
}

} // namespace cubeforge
