#pragma once

#include "cubeseq.hpp"
#include "errors.hpp"
#include "integer.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace cubeforge {

// Which reading of the boundary orientation of disk(n) is in force.
// Printed: d[x] = t - s for disks; cubes always use d[A] = [s] - [t].
// Flipped: disks follow the cube convention as well.
enum class Orientation { Printed, Flipped };

inline const char* orientation_str(Orientation o) { return o == Orientation::Printed ? "printed" : "flipped"; }

inline Orientation parse_orientation(const std::string& s)
{
    if (s == "printed")
        return Orientation::Printed;
    if (s == "flipped")
        return Orientation::Flipped;
    throw ParseError("orientation must be 'printed' or 'flipped'");
}

/**
 * Positivity submonoid of one degree. Mixed marks each basis coordinate as
 * either nonnegative or free; NonNeg and Full are its two extremes.
 * Generated cones are decided by a bounded multiplicity search.
 */
struct Cone {
    enum class Kind { NonNeg, Full, Mixed, Generated };
    Kind kind = Kind::NonNeg;
    std::vector<char> free;
    std::vector<Vec> gens;

    static Cone nonneg() { return {}; }
    static Cone full() { return {Kind::Full, {}, {}}; }
    static Cone mixed(std::vector<char> f)
    {
        bool any = std::count(f.begin(), f.end(), 1) > 0;
        bool all = std::count(f.begin(), f.end(), 0) == 0;
        if (!any)
            return nonneg();
        if (all)
            return full();
        return {Kind::Mixed, std::move(f), {}};
    }
    static Cone generated(std::vector<Vec> g) { return {Kind::Generated, {}, std::move(g)}; }

    bool coordinatewise() const { return kind != Kind::Generated; }

    bool is_free(std::size_t k) const
    {
        switch (kind) {
        case Kind::NonNeg: return false;
        case Kind::Full: return true;
        case Kind::Mixed: return free[k] != 0;
        default: throw DomainError("is_free on a generated cone");
        }
    }

    // Generator list spanning the cone, for ranks known to the caller.
    std::vector<Vec> generators(std::size_t rank) const
    {
        if (kind == Kind::Generated)
            return gens;
        std::vector<Vec> out;
        for (std::size_t k = 0; k < rank; ++k) {
            Vec e(rank);
            e[k] = 1;
            out.push_back(e);
            if (is_free(k)) {
                e[k] = -1;
                out.push_back(e);
            }
        }
        return out;
    }

    bool operator==(const Cone&) const = default;
};

inline int generated_cone_bound = 8;

inline bool in_cone(const Cone& cone, const Vec& c)
{
    switch (cone.kind) {
    case Cone::Kind::NonNeg:
        return std::all_of(c.begin(), c.end(), [](const Integer& x) { return x >= 0; });
    case Cone::Kind::Full:
        return true;
    case Cone::Kind::Mixed:
        for (std::size_t k = 0; k < c.size(); ++k)
            if (!cone.free[k] && c[k] < 0)
                return false;
        return true;
    case Cone::Kind::Generated: {
        auto rec = [&](auto&& self, std::size_t g, const Vec& rest) -> bool {
            if (is_zero(rest))
                return true;
            if (g == cone.gens.size())
                return false;
            Vec r = rest;
            for (int t = 0; t <= generated_cone_bound; ++t) {
                if (self(self, g + 1, r))
                    return true;
                r = r - cone.gens[g];
            }
            return false;
        };
        return rec(rec, 0, c);
    }
    }
    return false;
}

/**
 * Finitely based augmented directed complex. boundary[n] (n >= 1) has one
 * row per degree-(n-1) basis element and one column per degree-n element.
 */
struct Adc {
    std::vector<std::vector<std::string>> basis;
    std::vector<Matrix> boundary;
    Vec augmentation;
    std::vector<Cone> cones;
    Orientation orientation = Orientation::Printed;

    int top_degree() const { return static_cast<int>(basis.size()) - 1; }

    std::size_t rank(int k) const
    {
        if (k < 0 || k > top_degree())
            return 0;
        return basis[k].size();
    }

    Vec zero(int k) const { return Vec(rank(k)); }

    Vec d(int k, const Vec& c) const
    {
        if (k <= 0 || k > top_degree())
            return zero(k - 1);
        return boundary[k].apply(c);
    }

    Integer e(const Vec& c) const
    {
        Integer s = 0;
        for (std::size_t j = 0; j < c.size(); ++j)
            s += augmentation[j] * c[j];
        return s;
    }

    const Cone& cone(int k) const
    {
        static const Cone trivial;
        if (k < 0 || k > top_degree())
            return trivial;
        return cones[k];
    }

    bool contains(int k, const Vec& c) const { return in_cone(cone(k), c); }

    int find(int k, const std::string& name) const
    {
        auto it = std::find(basis.at(k).begin(), basis.at(k).end(), name);
        if (it == basis[k].end())
            throw DomainError("no basis element '" + name + "' in degree " + std::to_string(k));
        return static_cast<int>(it - basis[k].begin());
    }

    bool operator==(const Adc&) const = default;
};

struct AdcReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

inline AdcReport validate(const Adc& K)
{
    AdcReport r;
    int top = K.top_degree();
    if (top < 0) {
        r.violations.push_back("no degrees");
        return r;
    }
    if (K.boundary.size() != K.basis.size())
        r.violations.push_back("boundary list must have one entry per degree");
    if (K.augmentation.size() != K.rank(0))
        r.violations.push_back("augmentation length differs from degree-0 rank");
    if (K.cones.size() != K.basis.size())
        r.violations.push_back("cone list must have one entry per degree");
    if (!r.ok())
        return r;
    for (int k = 1; k <= top; ++k) {
        const Matrix& m = K.boundary[k];
        if (m.rows != K.rank(k - 1) || m.cols != K.rank(k))
            r.violations.push_back("boundary " + std::to_string(k) + " has the wrong shape");
    }
    for (int k = 0; k <= top; ++k) {
        const Cone& c = K.cones[k];
        if (c.kind == Cone::Kind::Mixed && c.free.size() != K.rank(k))
            r.violations.push_back("cone " + std::to_string(k) + ": free mask has the wrong length");
        if (c.kind == Cone::Kind::Generated)
            for (const Vec& g : c.gens)
                if (g.size() != K.rank(k))
                    r.violations.push_back("cone " + std::to_string(k) + ": generator of the wrong length");
    }
    if (!r.ok())
        return r;
    for (int k = 2; k <= top; ++k)
        if (!(K.boundary[k - 1] * K.boundary[k]).is_zero())
            r.violations.push_back("d o d != 0 at degree " + std::to_string(k));
    if (top >= 1)
        for (std::size_t c = 0; c < K.rank(1); ++c) {
            Vec col(K.rank(1));
            col[c] = 1;
            if (K.e(K.d(1, col)) != 0)
                r.violations.push_back("e o d != 0 on " + K.basis[1][c]);
        }
    return r;
}

inline bool is_omega_p_adc(const Adc& K, int p)
{
    for (int k = p + 1; k <= K.top_degree(); ++k)
        if (K.rank(k) && K.cones[k].kind != Cone::Kind::Full)
            return false;
    return true;
}

inline bool chain_invertible(const Adc& K, int k, const Vec& c)
{
    if (!K.contains(k, c))
        throw NotInCone("chain " + vec_str(c) + " is not in the degree-" + std::to_string(k) + " cone");
    return K.contains(k, -c);
}

// Offset of block (a, b) inside degree a+b of K (x) L.
inline std::size_t tensor_offset(const Adc& K, const Adc& L, int a, int b)
{
    std::size_t off = 0;
    for (int a2 = 0; a2 < a; ++a2)
        off += K.rank(a2) * L.rank(a + b - a2);
    return off;
}

inline std::size_t tensor_index(const Adc& K, const Adc& L, int a, std::size_t i, int b, std::size_t j)
{
    return tensor_offset(K, L, a, b) + i * L.rank(b) + j;
}

/**
 * Tensor product. Degree n basis: pairs (x, y) with |x| + |y| = n, ordered by
 * |x|, then x, then y. d[x (x) y] = d[x] (x) y + (-1)^|x| x (x) d[y].
 */
inline Adc tensor(const Adc& K, const Adc& L)
{
    Adc T;
    T.orientation = K.orientation;
    int top = K.top_degree() + L.top_degree();
    T.basis.assign(top + 1, {});
    for (int n = 0; n <= top; ++n)
        for (int a = 0; a <= n; ++a)
            for (std::size_t i = 0; i < K.rank(a); ++i)
                for (std::size_t j = 0; j < L.rank(n - a); ++j)
                    T.basis[n].push_back(K.basis[a][i] + "*" + L.basis[n - a][j]);
    T.boundary.assign(top + 1, Matrix());
    for (int n = 1; n <= top; ++n) {
        Matrix m(T.rank(n - 1), T.rank(n));
        for (int a = 0; a <= n; ++a) {
            int b = n - a;
            for (std::size_t i = 0; i < K.rank(a); ++i)
                for (std::size_t j = 0; j < L.rank(b); ++j) {
                    std::size_t col = tensor_index(K, L, a, i, b, j);
                    if (a >= 1)
                        for (std::size_t i2 = 0; i2 < K.rank(a - 1); ++i2)
                            m(tensor_index(K, L, a - 1, i2, b, j), col) += K.boundary[a](i2, i);
                    if (b >= 1) {
                        int sg = a % 2 ? -1 : 1;
                        for (std::size_t j2 = 0; j2 < L.rank(b - 1); ++j2)
                            m(tensor_index(K, L, a, i, b - 1, j2), col) += sg * L.boundary[b](j2, j);
                    }
                }
        }
        T.boundary[n] = std::move(m);
    }
    T.augmentation.resize(T.rank(0));
    for (std::size_t i = 0; i < K.rank(0); ++i)
        for (std::size_t j = 0; j < L.rank(0); ++j)
            T.augmentation[tensor_index(K, L, 0, i, 0, j)] = K.augmentation[i] * L.augmentation[j];
    T.cones.assign(top + 1, Cone());
    for (int n = 0; n <= top; ++n) {
        bool coord = true;
        for (int a = 0; a <= n; ++a)
            if (K.rank(a) && L.rank(n - a) && (!K.cone(a).coordinatewise() || !L.cone(n - a).coordinatewise()))
                coord = false;
        if (coord) {
            std::vector<char> f(T.rank(n), 0);
            for (int a = 0; a <= n; ++a)
                for (std::size_t i = 0; i < K.rank(a); ++i)
                    for (std::size_t j = 0; j < L.rank(n - a); ++j)
                        f[tensor_index(K, L, a, i, n - a, j)] = K.cone(a).is_free(i) || L.cone(n - a).is_free(j);
            T.cones[n] = Cone::mixed(std::move(f));
        } else {
            std::vector<Vec> gens;
            for (int a = 0; a <= n; ++a) {
                int b = n - a;
                for (const Vec& x : K.cone(a).generators(K.rank(a)))
                    for (const Vec& y : L.cone(b).generators(L.rank(b))) {
                        Vec g(T.rank(n));
                        for (std::size_t i = 0; i < x.size(); ++i)
                            for (std::size_t j = 0; j < y.size(); ++j)
                                g[tensor_index(K, L, a, i, b, j)] = x[i] * y[j];
                        gens.push_back(std::move(g));
                    }
            }
            T.cones[n] = Cone::generated(std::move(gens));
        }
    }
    return T;
}

inline Adc disk(int n, Orientation o = Orientation::Printed)
{
    if (n < 0)
        throw DomainError("disk: negative dimension");
    Adc D;
    D.orientation = o;
    D.basis.assign(n + 1, {});
    for (int k = 0; k < n; ++k)
        D.basis[k] = {"s" + std::to_string(k), "t" + std::to_string(k)};
    D.basis[n] = {"x"};
    int sg = o == Orientation::Printed ? 1 : -1; // coefficient of t in d
    D.boundary.assign(n + 1, Matrix());
    for (int k = 1; k <= n; ++k) {
        Matrix m(2, D.rank(k));
        for (std::size_t c = 0; c < D.rank(k); ++c) {
            m(0, c) = -sg;
            m(1, c) = sg;
        }
        D.boundary[k] = m;
    }
    D.augmentation.assign(D.rank(0), 1);
    D.cones.assign(n + 1, Cone::nonneg());
    return D;
}

// Copy of K with the listed degrees' cones replaced by the full group.
inline Adc with_full_cones(Adc K, int from_degree)
{
    for (int k = std::max(0, from_degree); k <= K.top_degree(); ++k)
        K.cones[k] = Cone::full();
    return K;
}

/**
 * cube(n) as the n-th tensor power of cube(1), d[(o)] = [(-)] - [(+)],
 * with basis relabelled by sign sequences in increasing packed order.
 */
inline Adc cube(int n)
{
    if (n < 0)
        throw DomainError("cube: negative dimension");
    Adc c0;
    c0.basis = {{"()"}};
    c0.boundary = {Matrix()};
    c0.augmentation = {1};
    c0.cones = {Cone::nonneg()};
    if (n == 0)
        return c0;
    Adc c1;
    c1.basis = {{"(-)", "(+)"}, {"(0)"}};
    Matrix d(2, 1);
    d(0, 0) = 1;
    d(1, 0) = -1;
    c1.boundary = {Matrix(), d};
    c1.augmentation = {1, 1};
    c1.cones = {Cone::nonneg(), Cone::nonneg()};
    Adc cur = c1;
    for (int m = 2; m <= n; ++m) {
        Adc t = tensor(cur, c1);
        const seq::Shape& sh = seq::shape(m);
        const seq::Shape& prev = seq::shape(m - 1);
        // position in t of each canonical sequence, per degree
        std::vector<std::vector<std::size_t>> where(m + 1);
        for (int k = 0; k <= m; ++k)
            where[k].resize(sh.by_degree[k].size());
        for (int k = 0; k <= m; ++k)
            for (int a = std::max(0, k - 1); a <= std::min(k, m - 1); ++a) {
                int b = k - a;
                for (std::size_t i = 0; i < cur.rank(a); ++i)
                    for (std::size_t j = 0; j < c1.rank(b); ++j) {
                        int s = prev.by_degree[a][i];
                        int last = b == 1 ? seq::kMid : static_cast<int>(j);
                        int full = s + last * seq::pow3(m - 1);
                        where[k][sh.pos[full]] = tensor_index(cur, c1, a, i, b, j);
                    }
            }
        Adc out;
        out.basis.assign(m + 1, {});
        out.boundary.assign(m + 1, Matrix());
        out.cones.assign(m + 1, Cone::nonneg());
        for (int k = 0; k <= m; ++k)
            for (int s : sh.by_degree[k])
                out.basis[k].push_back(seq::name(s, m));
        for (int k = 1; k <= m; ++k) {
            Matrix b(out.rank(k - 1), out.rank(k));
            for (std::size_t r = 0; r < b.rows; ++r)
                for (std::size_t c = 0; c < b.cols; ++c)
                    b(r, c) = t.boundary[k](where[k - 1][r], where[k][c]);
            out.boundary[k] = std::move(b);
        }
        out.augmentation.assign(out.rank(0), 1);
        cur = std::move(out);
    }
    return cur;
}

// Degreewise matrices of a chain map K -> L; maps[k] is rank_L(k) x rank_K(k).
struct ChainMap {
    std::vector<Matrix> maps;

    Vec apply(int k, const Vec& v) const
    {
        if (k < 0 || k >= static_cast<int>(maps.size()))
            return {};
        return maps[k].apply(v);
    }
};

inline AdcReport check_chain_map(const ChainMap& f, const Adc& K, const Adc& L)
{
    AdcReport r;
    int top = K.top_degree();
    if (static_cast<int>(f.maps.size()) != top + 1) {
        r.violations.push_back("one matrix per source degree expected");
        return r;
    }
    for (int k = 0; k <= top; ++k)
        if (f.maps[k].rows != L.rank(k) || f.maps[k].cols != K.rank(k))
            r.violations.push_back("map " + std::to_string(k) + " has the wrong shape");
    if (!r.ok())
        return r;
    for (int k = 1; k <= top; ++k) {
        Matrix lhs = k <= L.top_degree() ? L.boundary[k] * f.maps[k] : Matrix(L.rank(k - 1), K.rank(k));
        if (!(lhs == f.maps[k - 1] * K.boundary[k]))
            r.violations.push_back("does not commute with d at degree " + std::to_string(k));
    }
    for (std::size_t c = 0; c < K.rank(0); ++c) {
        Vec e(K.rank(0));
        e[c] = 1;
        if (L.e(f.apply(0, e)) != K.augmentation[c])
            r.violations.push_back("does not preserve the augmentation on " + K.basis[0][c]);
    }
    for (int k = 0; k <= top; ++k)
        for (const Vec& g : K.cone(k).generators(K.rank(k)))
            if (!L.contains(k, f.apply(k, g)))
                r.violations.push_back("cone generator in degree " + std::to_string(k) + " leaves the target cone");
    return r;
}

namespace detail {

// Chain map between cubes given by a sequence transformer; -1 means 0.
template <class F>
ChainMap cube_map(int from, int to, F&& image)
{
    const seq::Shape& a = seq::shape(from);
    const seq::Shape& b = seq::shape(to);
    ChainMap f;
    for (int k = 0; k <= from; ++k) {
        std::size_t rows = k <= to ? b.by_degree[k].size() : 0;
        Matrix m(rows, a.by_degree[k].size());
        for (std::size_t c = 0; c < a.by_degree[k].size(); ++c) {
            int t = image(a.by_degree[k][c]);
            if (t >= 0)
                m(b.pos[t], c) = 1;
        }
        f.maps.push_back(std::move(m));
    }
    return f;
}

} // namespace detail

// cube(n-1) -> cube(n): insert a at slot i.
inline ChainMap cube_face(int n, int i, Sign a)
{
    if (i < 1 || i > n)
        throw DomainError("cube_face: index out of range");
    return detail::cube_map(n - 1, n, [&](int s) { return seq::insert(s, i, seq::sym(a)); });
}

// cube(n) -> cube(n-1): drop slot i, killing sequences with o there.
inline ChainMap cube_deg(int n, int i)
{
    if (i < 1 || i > n)
        throw DomainError("cube_deg: index out of range");
    return detail::cube_map(n, n - 1, [&](int s) { return seq::get(s, i) == seq::kMid ? -1 : seq::remove(s, i); });
}

// cube(n+1) -> cube(n): collapse slots i, i+1.
inline ChainMap cube_conn(int n, int i, Sign a)
{
    if (i < 1 || i > n)
        throw DomainError("cube_conn: index out of range");
    return detail::cube_map(n + 1, n, [&](int s) {
        int c = seq::collapse(seq::get(s, i), seq::get(s, i + 1), a);
        if (c < 0)
            return -1;
        return seq::set(seq::remove(s, i + 1), i, c);
    });
}

// The two copy-tagged halves of the composition co-map along slot i.
inline std::pair<ChainMap, ChainMap> cube_comp(int n, int i)
{
    if (i < 1 || i > n)
        throw DomainError("cube_comp: index out of range");
    auto first = detail::cube_map(n, n, [&](int s) { return seq::get(s, i) == seq::kPlus ? -1 : s; });
    auto second = detail::cube_map(n, n, [&](int s) { return seq::get(s, i) == seq::kMinus ? -1 : s; });
    return {first, second};
}

} // namespace cubeforge
