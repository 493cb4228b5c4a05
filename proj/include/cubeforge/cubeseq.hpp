#pragma once

#include "errors.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cubeforge {

enum class Sign : int { Minus = 0, Plus = 1 };

inline Sign operator-(Sign a) { return a == Sign::Minus ? Sign::Plus : Sign::Minus; }
inline const char* sign_str(Sign a) { return a == Sign::Minus ? "-" : "+"; }
inline constexpr Sign kSigns[2] = {Sign::Minus, Sign::Plus};

/**
 * Sign sequences s : {1..n} -> {-, +, o}, o standing for the ±0 symbol.
 * A sequence is packed as a base-3 integer, slot j at digit 3^(j-1),
 * with - = 0, + = 1, o = 2. The degree of s is its number of o slots.
 */
namespace seq {

constexpr int kMinus = 0, kPlus = 1, kMid = 2;

inline int sym(Sign a) { return static_cast<int>(a); }

inline int pow3(int n)
{
    int p = 1;
    while (n-- > 0)
        p *= 3;
    return p;
}

inline int get(int s, int j) { return (s / pow3(j - 1)) % 3; }

inline int set(int s, int j, int v)
{
    int p = pow3(j - 1);
    return s + (v - (s / p) % 3) * p;
}

// Insert symbol v at slot i, shifting later slots up.
inline int insert(int s, int i, int v)
{
    int p = pow3(i - 1);
    int low = s % p, high = s / p;
    return low + v * p + high * p * 3;
}

inline int remove(int s, int i)
{
    int p = pow3(i - 1);
    int low = s % p, high = s / (p * 3);
    return low + high * p;
}

inline int swap(int s, int i, int j)
{
    int a = get(s, i), b = get(s, j);
    return set(set(s, i, b), j, a);
}

inline int degree(int s, int n)
{
    int d = 0;
    for (int j = 1; j <= n; ++j)
        d += get(s, j) == kMid;
    return d;
}

inline int top(int n) { return pow3(n) - 1; }

inline std::string name(int s, int n)
{
    std::string out = "(";
    for (int j = 1; j <= n; ++j) {
        int v = get(s, j);
        out += v == kMinus ? '-' : v == kPlus ? '+' : '0';
    }
    return out + ")";
}

inline int parse(const std::string& text, int n)
{
    if (text.size() != static_cast<std::size_t>(n) + 2 || text.front() != '(' || text.back() != ')')
        throw ParseError("bad sign sequence '" + text + "'");
    int s = 0;
    for (int j = 1; j <= n; ++j) {
        char c = text[j];
        int v = c == '-' ? kMinus : c == '+' ? kPlus : c == '0' ? kMid : -1;
        if (v < 0)
            throw ParseError("bad sign sequence '" + text + "'");
        s = set(s, j, v);
    }
    return s;
}

/**
 * Two-slot collapse of the connection co-map for sign a (b = -a):
 * aa->a, ab->b, ba->b, bb->b, oa->o, ao->o, and ob, bo, oo vanish.
 * Returns -1 for a vanishing pair.
 */
inline int collapse(int x, int y, Sign a)
{
    int sa = sym(a), sb = sym(-a);
    if (x != kMid && y != kMid)
        return (x == sa && y == sa) ? sa : sb;
    if (x == kMid && y == kMid)
        return -1;
    int other = x == kMid ? y : x;
    return other == sa ? kMid : -1;
}

// Per-dimension tables: degree of every sequence and its position inside its degree.
struct Shape {
    int n = 0;
    std::vector<int> deg, pos;
    std::vector<std::vector<int>> by_degree;

    explicit Shape(int n_) : n(n_)
    {
        int count = pow3(n);
        deg.resize(count);
        pos.resize(count);
        by_degree.assign(n + 1, {});
        for (int s = 0; s < count; ++s) {
            deg[s] = degree(s, n);
            pos[s] = static_cast<int>(by_degree[deg[s]].size());
            by_degree[deg[s]].push_back(s);
        }
    }

    int count() const { return static_cast<int>(deg.size()); }
};

inline const Shape& shape(int n)
{
    static std::vector<Shape> cache = [] {
        std::vector<Shape> v;
        for (int k = 0; k <= 9; ++k)
            v.emplace_back(k);
        return v;
    }();
    if (n < 0 || n >= static_cast<int>(cache.size()))
        throw DomainError("cube dimension " + std::to_string(n) + " unsupported");
    return cache[n];
}

} // namespace seq
} // namespace cubeforge
