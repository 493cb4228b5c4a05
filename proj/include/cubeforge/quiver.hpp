#pragma once

#include "axioms.hpp"
#include "cubical.hpp"
#include "invertibility.hpp"
#include "integer.hpp"

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace cubeforge {

struct Quiver {
    int vertices = 0;
    std::vector<std::pair<int, int>> arrows; // (source, target)
};

/**
 * An n-cell of the cubical nerve of the free category on a quiver: a path d
 * (the long diagonal) and a monotone position p(v) in [0, |d|] for every
 * vertex v of the n-cube, with p(0...0) = 0 and p(1...1) = |d|. Vertex v
 * sits after the first p(v) arrows; bit j-1 of v is slot j.
 */
struct QuiverCell {
    int n = 0;
    int src = 0;
    std::vector<int> path;
    std::vector<int> pos;
    bool operator==(const QuiverCell&) const = default;
};

struct QuiverCellHash {
    std::size_t operator()(const QuiverCell& c) const
    {
        std::size_t h = static_cast<std::size_t>(c.n);
        hash_mix(h, static_cast<std::size_t>(c.src));
        for (int a : c.path)
            hash_mix(h, static_cast<std::size_t>(a));
        for (int p : c.pos)
            hash_mix(h, static_cast<std::size_t>(p));
        return h;
    }
};

namespace bits {

inline int get(int v, int j) { return (v >> (j - 1)) & 1; }

inline int insert(int v, int i, int b)
{
    int low = v & ((1 << (i - 1)) - 1);
    int high = v >> (i - 1);
    return low | (b << (i - 1)) | (high << i);
}

inline int remove(int v, int i)
{
    int low = v & ((1 << (i - 1)) - 1);
    int high = v >> i;
    return low | (high << (i - 1));
}

} // namespace bits

class QuiverModel {
public:
    using Cell = QuiverCell;

    QuiverModel(Quiver q, int max_dim) : q_(std::move(q)), max_dim_(max_dim)
    {
        for (auto [s, t] : q_.arrows)
            if (s < 0 || t < 0 || s >= q_.vertices || t >= q_.vertices)
                throw DomainError("arrow endpoint outside the quiver");
    }

    const Quiver& quiver() const { return q_; }
    int max_dim() const { return max_dim_; }
    int dim(const Cell& a) const { return a.n; }

    int object(const Cell& a, int v) const
    {
        int p = a.pos[v];
        return p == 0 ? a.src : q_.arrows[a.path[p - 1]].second;
    }

    bool valid(const Cell& a) const
    {
        if (a.n < 0 || a.n > max_dim_ || static_cast<int>(a.pos.size()) != (1 << a.n))
            return false;
        int cur = a.src;
        if (cur < 0 || cur >= q_.vertices)
            return false;
        for (int x : a.path) {
            if (x < 0 || x >= static_cast<int>(q_.arrows.size()) || q_.arrows[x].first != cur)
                return false;
            cur = q_.arrows[x].second;
        }
        int top = (1 << a.n) - 1;
        if (a.pos[0] != 0 || a.pos[top] != static_cast<int>(a.path.size()))
            return false;
        for (int v = 0; v <= top; ++v)
            for (int j = 1; j <= a.n; ++j)
                if (!bits::get(v, j) && a.pos[v] > a.pos[v | (1 << (j - 1))])
                    return false;
        return true;
    }

    // A 0-cell at an object, and the 1-cell of a path.
    Cell point(int x) const { return Cell{0, x, {}, {0}}; }

    Cell arrow_path(int src, std::vector<int> path) const
    {
        int len = static_cast<int>(path.size());
        Cell c{1, src, std::move(path), {0, len}};
        if (!valid(c))
            throw DomainError("not a path in the quiver");
        return c;
    }

    Cell face(const Cell& a, int i, Sign s) const
    {
        if (i < 1 || i > a.n)
            throw DomainError("face index out of range");
        int b = static_cast<int>(s);
        int lo = bits::insert(0, i, b);
        int hi = bits::insert((1 << (a.n - 1)) - 1, i, b);
        Cell f{a.n - 1, object(a, lo), std::vector<int>(a.path.begin() + a.pos[lo], a.path.begin() + a.pos[hi]), {}};
        f.pos.resize(1 << (a.n - 1));
        for (int u = 0; u < (1 << (a.n - 1)); ++u)
            f.pos[u] = a.pos[bits::insert(u, i, b)] - a.pos[lo];
        return f;
    }

    Cell degen(const Cell& a, int i) const
    {
        if (i < 1 || i > a.n + 1 || a.n + 1 > max_dim_)
            throw DomainError("degeneracy index out of range");
        Cell d{a.n + 1, a.src, a.path, std::vector<int>(1 << (a.n + 1))};
        for (int v = 0; v < (1 << (a.n + 1)); ++v)
            d.pos[v] = a.pos[bits::remove(v, i)];
        return d;
    }

    // G^- collapses slots i, i+1 by max, G^+ by min.
    Cell conn(const Cell& a, int i, Sign s) const
    {
        if (i < 1 || i > a.n || a.n + 1 > max_dim_)
            throw DomainError("connection index out of range");
        Cell d{a.n + 1, a.src, a.path, std::vector<int>(1 << (a.n + 1))};
        for (int v = 0; v < (1 << (a.n + 1)); ++v) {
            int x = bits::get(v, i), y = bits::get(v, i + 1);
            int c = s == Sign::Minus ? (x | y) : (x & y);
            int u = bits::remove(v, i + 1);
            u = (u & ~(1 << (i - 1))) | (c << (i - 1));
            d.pos[v] = a.pos[u];
        }
        return d;
    }

    bool composable(const Cell& a, const Cell& b, int i) const
    {
        return a.n == b.n && i >= 1 && i <= a.n && face(a, i, Sign::Plus) == face(b, i, Sign::Minus);
    }

    Cell compose(const Cell& a, const Cell& b, int i) const
    {
        if (a.n != b.n || i < 1 || i > a.n)
            throw DomainError("composition index or dimensions out of range");
        if (!composable(a, b, i))
            throw CompositionError("quiver cells are not composable along " + std::to_string(i),
                                   describe(face(a, i, Sign::Plus)), describe(face(b, i, Sign::Minus)));
        int ei = 1 << (i - 1);
        int head = a.pos[ei];
        Cell c{a.n, a.src, std::vector<int>(a.path.begin(), a.path.begin() + head), std::vector<int>(1 << a.n)};
        c.path.insert(c.path.end(), b.path.begin(), b.path.end());
        for (int v = 0; v < (1 << a.n); ++v)
            c.pos[v] = (v & ei) ? head + b.pos[v] : a.pos[v];
        return c;
    }

    std::string describe(const Cell& a) const
    {
        std::string out = std::to_string(a.n) + "-cube{from " + std::to_string(a.src) + " path [";
        for (std::size_t k = 0; k < a.path.size(); ++k)
            out += (k ? " " : "") + std::string("a") + std::to_string(a.path[k]);
        out += "] at";
        for (int p : a.pos)
            out += " " + std::to_string(p);
        return out + "}";
    }

    std::size_t hash(const Cell& a) const { return QuiverCellHash{}(a); }

    // Only identities are invertible in a free category.
    std::optional<Cell> r_inverse(const Cell& a, int k) const
    {
        if (k < 1 || k > a.n)
            throw DomainError("R index out of range");
        int ek = 1 << (k - 1);
        for (int v = 0; v < (1 << a.n); ++v)
            if (!(v & ek) && a.pos[v] != a.pos[v | ek])
                return std::nullopt;
        if (!verify_r_inverse(*this, a, a, k))
            throw NotInvertible("degenerate quiver cell fails the R equations");
        return a;
    }

    std::vector<std::vector<int>> paths(int max_len) const
    {
        std::vector<std::vector<int>> out;
        for (int x = 0; x < q_.vertices; ++x) {
            std::vector<int> cur;
            auto rec = [&](auto&& self, int at) -> void {
                out.push_back(cur);
                out.back().insert(out.back().begin(), -1 - x); // source marker
                if (static_cast<int>(cur.size()) == max_len)
                    return;
                for (int e = 0; e < static_cast<int>(q_.arrows.size()); ++e)
                    if (q_.arrows[e].first == at) {
                        cur.push_back(e);
                        self(self, q_.arrows[e].second);
                        cur.pop_back();
                    }
            };
            rec(rec, x);
        }
        return out;
    }

    // Every n-cell whose diagonal has at most max_len arrows, in a fixed order.
    std::vector<Cell> enumerate(int n, int max_len) const
    {
        std::vector<Cell> out;
        for (auto marked : paths(max_len)) {
            int src = -1 - marked[0];
            std::vector<int> path(marked.begin() + 1, marked.end());
            int len = static_cast<int>(path.size());
            int top = (1 << n) - 1;
            std::vector<int> pos(1 << n, 0);
            auto rec = [&](auto&& self, int v) -> void {
                if (v > top) {
                    out.push_back(Cell{n, src, path, pos});
                    return;
                }
                int lo = 0;
                for (int j = 1; j <= n; ++j)
                    if (bits::get(v, j))
                        lo = std::max(lo, pos[v ^ (1 << (j - 1))]);
                int from = v == top ? len : lo, to = v == 0 ? 0 : len;
                for (int p = from; p <= to; ++p) {
                    pos[v] = p;
                    self(self, v + 1);
                }
            };
            rec(rec, 0);
        }
        return out;
    }

    // Uniform choice among cells with the requested faces, by rejection over the enumeration.
    Filler<Cell> filler(int max_len, std::uint64_t seed) const
    {
        auto rng = std::make_shared<std::mt19937_64>(seed);
        auto cache = std::make_shared<std::vector<std::vector<Cell>>>();
        return [this, max_len, rng, cache](int n, const std::vector<FaceConstraint<Cell>>& cons) -> std::optional<Cell> {
            while (static_cast<int>(cache->size()) <= n)
                cache->push_back(enumerate(static_cast<int>(cache->size()), max_len));
            std::vector<Cell> ok;
            for (const auto& c : (*cache)[n]) {
                bool fits = true;
                for (const auto& k : cons)
                    if (!(face(c, k.i, k.a) == k.face)) {
                        fits = false;
                        break;
                    }
                if (fits)
                    ok.push_back(c);
            }
            if (ok.empty())
                return std::nullopt;
            return ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(*rng)];
        };
    }

private:
    Quiver q_;
    int max_dim_;
};

} // namespace cubeforge
