#pragma once

#include "adc.hpp"
#include "axioms.hpp"
#include "cubical.hpp"
#include "invertibility.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace cubeforge {

// An n-cell of the cubical nerve: one chain per sign sequence, stored flat.
struct NerveCell {
    int n = 0;
    Vec v;
    bool operator==(const NerveCell&) const = default;
};

struct NerveCellHash {
    std::size_t operator()(const NerveCell& c) const
    {
        std::size_t h = hash_vec(c.v);
        hash_mix(h, static_cast<std::size_t>(c.n));
        return h;
    }
};

struct VecHash {
    std::size_t operator()(const Vec& v) const { return hash_vec(v); }
};

/**
 * Cubical nerve of an ADC. A[s] lies in the cone of degree |s|, degree-0
 * values have augmentation 1, and
 *   d A[s] = sum over o-slots j of (-1)^(o-slots before j) (A[s_j^-] - A[s_j^+]).
 */
class CubNerve {
public:
    using Cell = NerveCell;

    explicit CubNerve(Adc K, int max_dim = 8)
        : K_(std::make_shared<const Adc>(std::move(K))), max_dim_(max_dim)
    {
        if (max_dim < 0 || max_dim > 9)
            throw DomainError("maximal dimension must lie in [0, 9]");
        for (int n = 0; n <= max_dim_; ++n) {
            const seq::Shape& sh = seq::shape(n);
            std::vector<std::size_t> off(sh.count() + 1);
            for (int s = 0; s < sh.count(); ++s)
                off[s + 1] = off[s] + K_->rank(sh.deg[s]);
            off_.push_back(std::move(off));
        }
    }

    const Adc& adc() const { return *K_; }
    int max_dim() const { return max_dim_; }
    int dim(const Cell& a) const { return a.n; }

    std::size_t width(int n, int s) const { return off_.at(n)[s + 1] - off_[n][s]; }

    Vec at(const Cell& a, int s) const
    {
        const auto& o = off_.at(a.n);
        return Vec(a.v.begin() + o[s], a.v.begin() + o[s + 1]);
    }

    void put(Cell& a, int s, const Vec& x) const
    {
        const auto& o = off_.at(a.n);
        if (x.size() != o[s + 1] - o[s])
            throw DomainError("chain of the wrong length at " + seq::name(s, a.n));
        std::copy(x.begin(), x.end(), a.v.begin() + o[s]);
    }

    Cell blank(int n) const
    {
        if (n < 0 || n >= static_cast<int>(off_.size()))
            throw DomainError("dimension " + std::to_string(n) + " beyond the model");
        return Cell{n, Vec(off_[n].back())};
    }

    Cell make(int n, const std::vector<Vec>& values) const
    {
        Cell c = blank(n);
        if (static_cast<int>(values.size()) != seq::pow3(n))
            throw DomainError("one chain per sign sequence expected");
        for (int s = 0; s < seq::pow3(n); ++s)
            put(c, s, values[s]);
        std::string why;
        if (!valid(c, &why))
            throw DomainError("not a nerve cell: " + why);
        return c;
    }

    Vec law_rhs(const Cell& a, int s) const
    {
        int n = a.n;
        Vec r = K_->zero(seq::shape(n).deg[s] - 1);
        int before = 0;
        for (int j = 1; j <= n; ++j) {
            if (seq::get(s, j) != seq::kMid)
                continue;
            Vec m = at(a, seq::set(s, j, seq::kMinus)), p = at(a, seq::set(s, j, seq::kPlus));
            if (before % 2)
                r = r - m + p;
            else
                r = r + m - p;
            ++before;
        }
        return r;
    }

    bool valid(const Cell& a, std::string* why = nullptr) const
    {
        auto fail = [&](std::string m) {
            if (why)
                *why = std::move(m);
            return false;
        };
        if (a.n < 0 || a.n >= static_cast<int>(off_.size()) || a.v.size() != off_[a.n].back())
            return fail("wrong dimension or length");
        const seq::Shape& sh = seq::shape(a.n);
        for (int s = 0; s < sh.count(); ++s) {
            int k = sh.deg[s];
            Vec x = at(a, s);
            if (!K_->contains(k, x))
                return fail("value at " + seq::name(s, a.n) + " leaves the cone");
            if (k == 0) {
                if (K_->e(x) != 1)
                    return fail("augmentation at " + seq::name(s, a.n) + " is not 1");
            } else if (!(K_->d(k, x) == law_rhs(a, s))) {
                return fail("boundary law fails at " + seq::name(s, a.n));
            }
        }
        return true;
    }

    Cell face(const Cell& a, int i, Sign s) const
    {
        if (i < 1 || i > a.n)
            throw DomainError("face index " + std::to_string(i) + " outside [1, " + std::to_string(a.n) + "]");
        Cell b = blank(a.n - 1);
        const auto& src = off_[a.n];
        const auto& dst = off_[a.n - 1];
        for (int t = 0; t < seq::pow3(a.n - 1); ++t) {
            int u = seq::insert(t, i, seq::sym(s));
            std::copy(a.v.begin() + src[u], a.v.begin() + src[u + 1], b.v.begin() + dst[t]);
        }
        return b;
    }

    Cell degen(const Cell& a, int i) const
    {
        if (i < 1 || i > a.n + 1)
            throw DomainError("degeneracy index out of range");
        Cell b = blank(a.n + 1);
        const auto& src = off_[a.n];
        const auto& dst = off_[a.n + 1];
        for (int s = 0; s < seq::pow3(a.n + 1); ++s) {
            if (seq::get(s, i) == seq::kMid)
                continue;
            int u = seq::remove(s, i);
            std::copy(a.v.begin() + src[u], a.v.begin() + src[u + 1], b.v.begin() + dst[s]);
        }
        return b;
    }

    Cell conn(const Cell& a, int i, Sign sg) const
    {
        if (i < 1 || i > a.n)
            throw DomainError("connection index out of range");
        Cell b = blank(a.n + 1);
        const auto& src = off_[a.n];
        const auto& dst = off_[a.n + 1];
        for (int s = 0; s < seq::pow3(a.n + 1); ++s) {
            int c = seq::collapse(seq::get(s, i), seq::get(s, i + 1), sg);
            if (c < 0)
                continue;
            int u = seq::set(seq::remove(s, i + 1), i, c);
            std::copy(a.v.begin() + src[u], a.v.begin() + src[u + 1], b.v.begin() + dst[s]);
        }
        return b;
    }

    bool composable(const Cell& a, const Cell& b, int i) const
    {
        if (a.n != b.n || i < 1 || i > a.n)
            return false;
        const auto& o = off_[a.n];
        for (int t = 0; t < seq::pow3(a.n - 1); ++t) {
            int p = seq::insert(t, i, seq::kPlus), m = seq::insert(t, i, seq::kMinus);
            if (!std::equal(a.v.begin() + o[p], a.v.begin() + o[p + 1], b.v.begin() + o[m]))
                return false;
        }
        return true;
    }

    Cell compose(const Cell& a, const Cell& b, int i) const
    {
        if (a.n != b.n || i < 1 || i > a.n)
            throw DomainError("composition index or dimensions out of range");
        if (!composable(a, b, i))
            throw CompositionError("d_" + std::to_string(i) + "^+ A != d_" + std::to_string(i) + "^- B",
                                   describe(face(a, i, Sign::Plus)), describe(face(b, i, Sign::Minus)));
        Cell c = blank(a.n);
        const auto& o = off_[a.n];
        for (int s = 0; s < seq::pow3(a.n); ++s) {
            int x = seq::get(s, i);
            for (std::size_t k = o[s]; k < o[s + 1]; ++k)
                c.v[k] = x == seq::kMinus ? a.v[k] : x == seq::kPlus ? b.v[k] : a.v[k] + b.v[k];
        }
        return c;
    }

    std::string describe(const Cell& a) const
    {
        std::string out = std::to_string(a.n) + "-cell{";
        for (int s = 0; s < seq::pow3(a.n); ++s)
            out += (s ? " " : "") + seq::name(s, a.n) + "=" + vec_str(at(a, s));
        return out + "}";
    }

    // R_k A[s] = -A[s] when s(k) = o, else A[s with slot k flipped].
    std::optional<Cell> r_inverse(const Cell& a, int k) const
    {
        if (k < 1 || k > a.n)
            throw DomainError("R index out of range");
        const seq::Shape& sh = seq::shape(a.n);
        Cell b = blank(a.n);
        for (int s = 0; s < sh.count(); ++s) {
            int x = seq::get(s, k);
            if (x == seq::kMid) {
                Vec neg = -at(a, s);
                if (!K_->contains(sh.deg[s], neg))
                    return std::nullopt;
                put(b, s, neg);
            } else {
                put(b, s, at(a, seq::set(s, k, 1 - x)));
            }
        }
        if (!verify_r_inverse(*this, a, b, k))
            throw NotInvertible("closed-form R_" + std::to_string(k) + "-inverse fails its equations");
        return b;
    }

    // T_i A[s] = -A[s] when s(i) = s(i+1) = o, else A[s with slots i, i+1 swapped].
    std::optional<Cell> t_inverse(const Cell& a, int i) const
    {
        if (i < 1 || i >= a.n)
            throw DomainError("T index out of range");
        const seq::Shape& sh = seq::shape(a.n);
        Cell b = blank(a.n);
        for (int s = 0; s < sh.count(); ++s) {
            if (seq::get(s, i) == seq::kMid && seq::get(s, i + 1) == seq::kMid) {
                Vec neg = -at(a, s);
                if (!K_->contains(sh.deg[s], neg))
                    return std::nullopt;
                put(b, s, neg);
            } else {
                put(b, s, at(a, seq::swap(s, i, i + 1)));
            }
        }
        if (!verify_t_inverse(*this, a, b, i))
            throw NotInvertible("closed-form T_" + std::to_string(i) + "-inverse fails its equations");
        return b;
    }

    // Sequences whose chain must be invertible for R_k (T_i when pair is set).
    std::optional<int> first_obstruction(const Cell& a, int k, bool pair) const
    {
        const seq::Shape& sh = seq::shape(a.n);
        for (int s = 0; s < sh.count(); ++s) {
            bool hit = seq::get(s, k) == seq::kMid && (!pair || seq::get(s, k + 1) == seq::kMid);
            if (hit && !K_->contains(sh.deg[s], -at(a, s)))
                return s;
        }
        return std::nullopt;
    }

    Vec top_chain(const Cell& a) const { return at(a, seq::top(a.n)); }

    std::size_t hash(const Cell& a) const { return NerveCellHash{}(a); }

private:
    std::shared_ptr<const Adc> K_;
    int max_dim_;
    std::vector<std::vector<std::size_t>> off_;
};

inline CubNerve nc_model(const Adc& K, int max_dim = 8) { return CubNerve(K, max_dim); }

namespace detail {

// Names the sequence and, for coordinatewise cones, the basis element blocking negation.
inline std::string obstruction_message(const CubNerve& m, const NerveCell& a, int s)
{
    int k = seq::shape(a.n).deg[s];
    Vec x = m.at(a, s);
    std::string msg = "chain at " + seq::name(s, a.n) + " is not invertible";
    const Cone& c = m.adc().cone(k);
    if (c.coordinatewise())
        for (std::size_t j = 0; j < x.size(); ++j)
            if (x[j] != 0 && !c.is_free(j))
                return msg + ": basis element " + m.adc().basis[k][j] + " has coefficient " + x[j].str() +
                       " in a nonnegative coordinate";
    return msg;
}

} // namespace detail

inline NerveCell nc_r_inverse(const CubNerve& m, const NerveCell& a, int k)
{
    if (k < 1 || k > a.n)
        throw DomainError("R index out of range");
    if (auto s = m.first_obstruction(a, k, false))
        throw NotInvertible(detail::obstruction_message(m, a, *s));
    return *m.r_inverse(a, k);
}

inline NerveCell nc_t_inverse(const CubNerve& m, const NerveCell& a, int i)
{
    if (i < 1 || i >= a.n)
        throw DomainError("T index out of range");
    if (auto s = m.first_obstruction(a, i, true))
        throw NotInvertible(detail::obstruction_message(m, a, *s));
    return *m.t_inverse(a, i);
}

/**
 * Bounded chains of each degree: those in the cone with every coordinate in
 * [-bound, bound], grouped by boundary (degree 0: augmentation 1 only).
 */
class ChainTable {
public:
    ChainTable(const Adc& K, int top, int bound, std::size_t limit = 4'000'000)
    {
        if (bound < 0)
            throw DomainError("negative bound");
        for (int k = 0; k <= top; ++k) {
            std::size_t r = K.rank(k);
            const Cone& c = K.cone(k);
            std::vector<int> lo(r);
            double total = 1;
            for (std::size_t j = 0; j < r; ++j) {
                lo[j] = (c.kind == Cone::Kind::NonNeg || (c.kind == Cone::Kind::Mixed && !c.free[j])) ? 0 : -bound;
                total *= bound - lo[j] + 1;
            }
            if (total > static_cast<double>(limit))
                throw BudgetExceeded("too many bounded chains in degree " + std::to_string(k));
            std::unordered_map<Vec, std::vector<Vec>, VecHash> by;
            std::vector<Vec> all;
            Vec x(r);
            std::vector<int> cur(lo);
            while (true) {
                for (std::size_t j = 0; j < r; ++j)
                    x[j] = cur[j];
                if (K.contains(k, x)) {
                    if (k == 0) {
                        if (K.e(x) == 1)
                            all.push_back(x);
                    } else {
                        by[K.d(k, x)].push_back(x);
                        all.push_back(x);
                    }
                }
                std::size_t j = 0;
                while (j < r && cur[j] == bound) {
                    cur[j] = lo[j];
                    ++j;
                }
                if (j == r)
                    break;
                ++cur[j];
            }
            by_boundary_.push_back(std::move(by));
            all_.push_back(std::move(all));
        }
    }

    const std::vector<Vec>& candidates(int k, const Vec& boundary) const
    {
        static const std::vector<Vec> none;
        if (k == 0)
            return all_.at(0);
        auto it = by_boundary_.at(k).find(boundary);
        return it == by_boundary_[k].end() ? none : it->second;
    }

    const std::vector<Vec>& all(int k) const { return all_.at(k); }

private:
    std::vector<std::unordered_map<Vec, std::vector<Vec>, VecHash>> by_boundary_;
    std::vector<std::vector<Vec>> all_;
};

namespace detail {

// Depth-first fill of the sign sequences in packed order; faces come first.
template <class Visit, class Order>
bool fill_cells(const CubNerve& m, const ChainTable& table, int n, const std::map<int, Vec>& fixed, std::size_t& budget,
                Visit&& visit, Order&& order)
{
    const seq::Shape& sh = seq::shape(n);
    NerveCell cur = m.blank(n);
    auto rec = [&](auto&& self, int s) -> bool {
        if (s == sh.count())
            return visit(cur);
        if (budget == 0)
            throw BudgetExceeded("search node budget exhausted");
        --budget;
        int k = sh.deg[s];
        Vec rhs = k == 0 ? Vec{} : m.law_rhs(cur, s);
        auto fx = fixed.find(s);
        if (fx != fixed.end()) {
            const Vec& x = fx->second;
            bool ok = m.adc().contains(k, x) && (k == 0 ? m.adc().e(x) == 1 : m.adc().d(k, x) == rhs);
            if (!ok)
                return true;
            m.put(cur, s, x);
            return self(self, s + 1);
        }
        const auto& cands = table.candidates(k, rhs);
        for (std::size_t idx : order(cands.size())) {
            m.put(cur, s, cands[idx]);
            if (!self(self, s + 1))
                return false;
        }
        return true;
    };
    return rec(rec, 0);
}

} // namespace detail

/**
 * All n-cells whose chains have coefficients in [-bound, bound], in a
 * deterministic order.
 */
inline std::vector<NerveCell> enumerate_cells(const CubNerve& m, int n, int bound, std::size_t budget = 20'000'000)
{
    ChainTable table(m.adc(), n, bound);
    std::vector<NerveCell> out;
    detail::fill_cells(m, table, n, {}, budget, [&](const NerveCell& c) {
        out.push_back(c);
        return true;
    }, [](std::size_t k) {
        std::vector<std::size_t> idx(k);
        for (std::size_t j = 0; j < k; ++j)
            idx[j] = j;
        return idx;
    });
    return out;
}

/**
 * Seeded random sampler: a randomised depth-first fill, optionally with some
 * sequences pinned to given chains. Returns nullopt when nothing fits.
 */
class NerveSampler {
public:
    NerveSampler(const CubNerve& m, int max_n, int bound, std::uint64_t seed)
        : m_(m), table_(m.adc(), max_n, bound), rng_(seed), max_n_(max_n) {}

    std::optional<NerveCell> sample(int n, const std::map<int, Vec>& fixed = {}, std::size_t budget = 200'000)
    {
        if (n > max_n_)
            throw DomainError("sampler built for lower dimensions");
        std::optional<NerveCell> got;
        try {
            detail::fill_cells(m_, table_, n, fixed, budget, [&](const NerveCell& c) {
                got = c;
                return false;
            }, [&](std::size_t k) {
                std::vector<std::size_t> idx(k);
                for (std::size_t j = 0; j < k; ++j)
                    idx[j] = j;
                std::shuffle(idx.begin(), idx.end(), rng_);
                return idx;
            });
        } catch (const BudgetExceeded&) {
            return std::nullopt;
        }
        return got;
    }

    // A cell B with d_i^a B equal to the given (n-1)-cell.
    std::optional<NerveCell> with_face(int n, int i, Sign a, const NerveCell& f)
    {
        std::map<int, Vec> fixed;
        for (int t = 0; t < seq::pow3(n - 1); ++t)
            fixed[seq::insert(t, i, seq::sym(a))] = m_.at(f, t);
        return sample(n, fixed);
    }

    std::mt19937_64& rng() { return rng_; }

private:
    const CubNerve& m_;
    ChainTable table_;
    std::mt19937_64 rng_;
    int max_n_;
};

// Filler for the axiom checker: a random cell with the requested faces pinned.
inline Filler<NerveCell> nerve_filler(const CubNerve& m, NerveSampler& smp)
{
    return [&m, &smp](int n, const std::vector<FaceConstraint<NerveCell>>& cons) -> std::optional<NerveCell> {
        std::map<int, Vec> fixed;
        for (const auto& c : cons)
            for (int t = 0; t < seq::pow3(n - 1); ++t) {
                Vec v = m.at(c.face, t);
                auto [it, fresh] = fixed.emplace(seq::insert(t, c.i, seq::sym(c.a)), v);
                if (!fresh && !(it->second == v))
                    return std::nullopt;
            }
        return smp.sample(n, fixed);
    };
}

/**
 * An n-cell of the globular nerve: chains s_k, t_k for k < n and x in degree n.
 */
struct GlobCell {
    int n = 0;
    std::vector<Vec> s, t;
    Vec x;
    bool operator==(const GlobCell&) const = default;
};

struct GlobCellHash {
    std::size_t operator()(const GlobCell& c) const
    {
        std::size_t h = static_cast<std::size_t>(c.n);
        for (int k = 0; k < c.n; ++k) {
            hash_mix(h, hash_vec(c.s[k]));
            hash_mix(h, hash_vec(c.t[k]));
        }
        hash_mix(h, hash_vec(c.x));
        return h;
    }
};

/**
 * Globular nerve. Printed orientation: d y = t_{k-1} - s_{k-1} for y among
 * s_k, t_k, x; flipped orientation negates the right-hand side.
 */
class GlobNerve {
public:
    using Cell = GlobCell;

    GlobNerve(Adc K, Orientation o) : K_(std::make_shared<const Adc>(std::move(K))), o_(o) {}
    explicit GlobNerve(Adc K) : GlobNerve(K, K.orientation) {}

    const Adc& adc() const { return *K_; }
    Orientation orientation() const { return o_; }

    Vec required(const Vec& s, const Vec& t) const { return o_ == Orientation::Printed ? t - s : s - t; }

    bool valid(const Cell& c, std::string* why = nullptr) const
    {
        auto fail = [&](std::string m) {
            if (why)
                *why = std::move(m);
            return false;
        };
        if (c.n < 0 || static_cast<int>(c.s.size()) != c.n || static_cast<int>(c.t.size()) != c.n)
            return fail("wrong shape");
        auto check = [&](int k, const Vec& y) -> bool {
            if (y.size() != K_->rank(k) || !K_->contains(k, y))
                return false;
            if (k == 0)
                return K_->e(y) == 1;
            return K_->d(k, y) == required(c.s[k - 1], c.t[k - 1]);
        };
        for (int k = 0; k < c.n; ++k)
            if (!check(k, c.s[k]) || !check(k, c.t[k]))
                return fail("boundary law fails in degree " + std::to_string(k));
        if (!check(c.n, c.x))
            return fail("boundary law fails on the top chain");
        return true;
    }

    Cell boundary(const Cell& c, int k, Sign a) const
    {
        if (k < 0 || k >= c.n)
            throw DomainError("globular boundary index out of range");
        Cell b{k, std::vector<Vec>(c.s.begin(), c.s.begin() + k), std::vector<Vec>(c.t.begin(), c.t.begin() + k),
               a == Sign::Minus ? c.s[k] : c.t[k]};
        return b;
    }

    Cell source(const Cell& c) const { return boundary(c, c.n - 1, Sign::Minus); }
    Cell target(const Cell& c) const { return boundary(c, c.n - 1, Sign::Plus); }

    Cell identity(const Cell& c) const
    {
        Cell b = c;
        b.n = c.n + 1;
        b.s.push_back(c.x);
        b.t.push_back(c.x);
        b.x = K_->zero(c.n + 1);
        return b;
    }

    bool composable(const Cell& a, const Cell& b, int k) const
    {
        return a.n == b.n && k >= 0 && k < a.n && boundary(a, k, Sign::Plus) == boundary(b, k, Sign::Minus);
    }

    // a #_k b: below k shared, at k source of a and target of b, above k summed.
    Cell compose(const Cell& a, const Cell& b, int k) const
    {
        if (!composable(a, b, k))
            throw CompositionError("globular cells are not composable along " + std::to_string(k));
        Cell c = a;
        c.t[k] = b.t[k];
        for (int j = k + 1; j < a.n; ++j) {
            c.s[j] = a.s[j] + b.s[j];
            c.t[j] = a.t[j] + b.t[j];
        }
        c.x = a.x + b.x;
        return c;
    }

    Cell inverse(const Cell& c) const
    {
        if (c.n < 1)
            throw DomainError("0-cells have no inverse");
        if (!K_->contains(c.n, -c.x))
            throw NotInvertible("top chain " + vec_str(c.x) + " is not invertible");
        Cell b = c;
        b.x = -c.x;
        std::swap(b.s[c.n - 1], b.t[c.n - 1]);
        int k = c.n - 1;
        if (!(compose(c, b, k) == identity(source(c))) || !(compose(b, c, k) == identity(target(c))))
            throw NotInvertible("inverse fails its equations");
        return b;
    }

    std::vector<Cell> enumerate(int n, int bound, std::size_t budget = 20'000'000) const
    {
        ChainTable table(*K_, n, bound);
        std::vector<Cell> out;
        Cell cur{n, std::vector<Vec>(n), std::vector<Vec>(n), {}};
        // slots in order s_0, t_0, s_1, t_1, ..., x
        auto rec = [&](auto&& self, int slot) -> void {
            if (budget-- == 0)
                throw BudgetExceeded("search node budget exhausted");
            int k = slot / 2;
            bool top = k == n;
            Vec need = k == 0 ? Vec{} : required(cur.s[k - 1], cur.t[k - 1]);
            for (const Vec& y : table.candidates(k, need)) {
                if (top) {
                    cur.x = y;
                    out.push_back(cur);
                } else {
                    (slot % 2 ? cur.t[k] : cur.s[k]) = y;
                    self(self, slot + 1);
                }
            }
        };
        rec(rec, 0);
        return out;
    }

private:
    std::shared_ptr<const Adc> K_;
    Orientation o_;
};

inline GlobNerve ng_model(const Adc& K, Orientation o) { return GlobNerve(K, o); }

struct GammaMatch {
    std::size_t cubical_cells = 0, images = 0, globular_cells = 0, matched = 0;
    std::size_t unmatched_cubical = 0, unmatched_globular = 0, duplicates = 0;
    std::vector<std::string> examples;
    bool ok() const
    {
        return unmatched_cubical == 0 && unmatched_globular == 0 && duplicates == 0 && matched == globular_cells;
    }
};

// Globular data of a Phi_n-image: iterated d_1^- / d_1^+ give s_k / t_k.
inline GlobCell globular_data(const CubNerve& m, const NerveCell& a)
{
    GlobCell g{a.n, std::vector<Vec>(a.n), std::vector<Vec>(a.n), m.top_chain(a)};
    NerveCell lo = a, hi = a;
    for (int k = a.n - 1; k >= 0; --k) {
        lo = m.face(lo, 1, Sign::Minus);
        hi = m.face(hi, 1, Sign::Plus);
        g.s[k] = m.top_chain(lo);
        g.t[k] = m.top_chain(hi);
    }
    return g;
}

/**
 * Matches Phi_n-images of bounded cubical n-cells (the fixed points of Phi_n)
 * against bounded globular n-cells under the given orientation.
 */
inline GammaMatch gamma_vs_ng(const Adc& K, int n, int bound, Orientation o)
{
    CubNerve nc(K, n + 1);
    GlobNerve ng(K, o);
    GammaMatch r;
    auto cubes = enumerate_cells(nc, n, bound);
    r.cubical_cells = cubes.size();
    auto globs = ng.enumerate(n, bound);
    r.globular_cells = globs.size();
    std::unordered_map<GlobCell, int, GlobCellHash> hit;
    for (const auto& g : globs)
        hit.emplace(g, 0);
    for (const auto& a : cubes) {
        if (!(Phi(nc, a, n) == a))
            continue;
        ++r.images;
        GlobCell g = globular_data(nc, a);
        auto it = hit.find(g);
        if (it == hit.end()) {
            ++r.unmatched_cubical;
            if (r.examples.size() < 5)
                r.examples.push_back("no globular partner for " + nc.describe(a));
        } else if (it->second++ > 0) {
            ++r.duplicates;
        } else {
            ++r.matched;
        }
    }
    for (const auto& [g, count] : hit)
        if (count == 0)
            ++r.unmatched_globular;
    return r;
}

} // namespace cubeforge
