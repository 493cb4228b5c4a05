#pragma once

#include "errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <climits>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace cubeforge {

using Integer = boost::multiprecision::cpp_int;
using Vec = std::vector<Integer>;

inline std::size_t hash_integer(const Integer& x)
{
    if (x >= LLONG_MIN && x <= LLONG_MAX)
        return std::hash<long long>{}(x.convert_to<long long>());
    return std::hash<std::string>{}(x.str());
}

inline void hash_mix(std::size_t& seed, std::size_t v)
{
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

inline std::size_t hash_vec(const Vec& v)
{
    std::size_t h = v.size();
    for (const Integer& x : v)
        hash_mix(h, hash_integer(x));
    return h;
}

inline bool is_zero(const Vec& v)
{
    for (const Integer& x : v)
        if (x != 0)
            return false;
    return true;
}

inline Vec operator+(Vec a, const Vec& b)
{
    for (std::size_t k = 0; k < a.size(); ++k)
        a[k] += b[k];
    return a;
}

inline Vec operator-(Vec a, const Vec& b)
{
    for (std::size_t k = 0; k < a.size(); ++k)
        a[k] -= b[k];
    return a;
}

inline Vec operator-(Vec a)
{
    for (Integer& x : a)
        x = -x;
    return a;
}

inline std::string vec_str(const Vec& v)
{
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k)
        s += (k ? "," : "") + v[k].str();
    return s + "]";
}

// Dense integer matrix, row-major.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Integer> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t k = 0; k < n; ++k)
            m(k, k) = 1;
        return m;
    }

    Integer& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    bool operator==(const Matrix&) const = default;

    Matrix operator*(const Matrix& b) const
    {
        if (cols != b.rows)
            throw DomainError("matrix product: shape mismatch");
        Matrix m(rows, b.cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k) {
                const Integer& x = (*this)(i, k);
                if (x == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols; ++j)
                    m(i, j) += x * b(k, j);
            }
        return m;
    }

    Vec apply(const Vec& v) const
    {
        if (v.size() != cols)
            throw DomainError("matrix apply: length mismatch");
        Vec out(rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if ((*this)(i, j) != 0)
                    out[i] += (*this)(i, j) * v[j];
        return out;
    }

    bool is_zero() const
    {
        for (const Integer& x : a)
            if (x != 0)
                return false;
        return true;
    }
};

// Fraction-free Bareiss elimination.
inline Integer determinant(Matrix m)
{
    if (m.rows != m.cols)
        throw DomainError("determinant of a non-square matrix");
    std::size_t n = m.rows;
    if (n == 0)
        return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && m(r, k) == 0)
                ++r;
            if (r == n)
                return 0;
            for (std::size_t c = 0; c < n; ++c)
                std::swap(m(k, c), m(r, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

} // namespace cubeforge
