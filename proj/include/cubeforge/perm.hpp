#pragma once

#include "errors.hpp"
#include "index.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

namespace cubeforge {

/**
 * Permutation of {1..n} acting on the right: k . sigma == images[k-1].
 * Products compose left to right, k . (s * t) == (k . s) . t.
 */
class Perm {
public:
    Perm() = default;

    explicit Perm(std::vector<int> images) : img_(std::move(images))
    {
        std::vector<char> seen(img_.size(), 0);
        for (int v : img_) {
            if (v < 1 || v > static_cast<int>(img_.size()) || seen[v - 1])
                throw DomainError("Perm: images do not form a bijection");
            seen[v - 1] = 1;
        }
    }

    static Perm identity(int n)
    {
        std::vector<int> img(n);
        for (int k = 0; k < n; ++k)
            img[k] = k + 1;
        return Perm(std::move(img));
    }

    // tau_i swaps i and i+1.
    static Perm transposition(int n, int i)
    {
        if (i < 1 || i >= n)
            throw DomainError("transposition index out of range");
        Perm p = identity(n);
        std::swap(p.img_[i - 1], p.img_[i]);
        return p;
    }

    int degree() const { return static_cast<int>(img_.size()); }
    int operator()(int k) const { return img_.at(k - 1); }
    const std::vector<int>& images() const { return img_; }

    Perm operator*(const Perm& rhs) const
    {
        if (degree() != rhs.degree())
            throw DomainError("Perm product: degree mismatch");
        std::vector<int> out(img_.size());
        for (std::size_t k = 0; k < img_.size(); ++k)
            out[k] = rhs(img_[k]);
        return Perm(std::move(out));
    }

    Perm inverse() const
    {
        std::vector<int> out(img_.size());
        for (std::size_t k = 0; k < img_.size(); ++k)
            out[img_[k] - 1] = static_cast<int>(k) + 1;
        return Perm(std::move(out));
    }

    bool is_identity() const
    {
        for (std::size_t k = 0; k < img_.size(); ++k)
            if (img_[k] != static_cast<int>(k) + 1)
                return false;
        return true;
    }

    bool operator==(const Perm&) const = default;
    auto operator<=>(const Perm&) const = default;

    std::string str() const
    {
        std::string s = "[";
        for (std::size_t k = 0; k < img_.size(); ++k)
            s += (k ? " " : "") + std::to_string(img_[k]);
        return s + "]";
    }

private:
    std::vector<int> img_;
};

// A word T_{a1} ... T_{am} in the monoid on n-1 generators.
struct TWord {
    int ambient = 1;
    std::vector<int> letters;

    bool operator==(const TWord&) const = default;

    std::string str() const
    {
        std::string s;
        for (std::size_t k = 0; k < letters.size(); ++k)
            s += (k ? " T" : "T") + std::to_string(letters[k]);
        return s;
    }
};

inline void check_word(const TWord& w)
{
    for (int a : w.letters)
        if (a < 1 || a >= w.ambient)
            throw DomainError("word letter T" + std::to_string(a) + " outside ambient " + std::to_string(w.ambient));
}

inline Perm eval_word(const TWord& w)
{
    check_word(w);
    Perm p = Perm::identity(w.ambient);
    for (int a : w.letters)
        p = p * Perm::transposition(w.ambient, a);
    return p;
}

inline int length(const Perm& p)
{
    int inv = 0;
    for (int a = 1; a <= p.degree(); ++a)
        for (int b = a + 1; b <= p.degree(); ++b)
            if (p(a) > p(b))
                ++inv;
    return inv;
}

// Reduced word, emitting the smallest left descent at each step.
inline TWord min_rep(const Perm& p)
{
    TWord w{p.degree(), {}};
    std::vector<int> img = p.images();
    for (;;) {
        int d = 0;
        for (std::size_t k = 0; k + 1 < img.size(); ++k)
            if (img[k] > img[k + 1]) {
                d = static_cast<int>(k) + 1;
                break;
            }
        if (!d)
            break;
        w.letters.push_back(d);
        std::swap(img[d - 1], img[d]);
    }
    return w;
}

// All reduced words of p, in lexicographic order.
inline std::vector<TWord> reduced_words(const Perm& p)
{
    std::vector<TWord> out;
    std::vector<int> prefix;
    auto rec = [&](auto&& self, std::vector<int> img) -> void {
        bool done = true;
        for (std::size_t k = 0; k + 1 < img.size(); ++k) {
            if (img[k] > img[k + 1]) {
                done = false;
                prefix.push_back(static_cast<int>(k) + 1);
                std::swap(img[k], img[k + 1]);
                self(self, img);
                std::swap(img[k], img[k + 1]);
                prefix.pop_back();
            }
        }
        if (done)
            out.push_back(TWord{p.degree(), prefix});
    };
    rec(rec, p.images());
    return out;
}

/** d_i on words: d_i 1 = 1, d_i T_j = 1 or T_{j_i}, d_i(u.v) = d_i u . d_{i.u} v */
inline TWord boundary_word(const TWord& w, int i)
{
    check_word(w);
    if (i < 1 || i > w.ambient)
        throw DomainError("boundary_word: index out of range");
    TWord out{w.ambient - 1, {}};
    int c = i;
    for (int a : w.letters) {
        if (c != a && c != a + 1)
            out.letters.push_back(lower(a, c));
        if (c == a)
            c = a + 1;
        else if (c == a + 1)
            c = a;
    }
    return out;
}

/** j . d_i sigma = (j^i . sigma)_{i . sigma} */
inline Perm boundary_perm(const Perm& p, int i)
{
    int n = p.degree();
    if (i < 1 || i > n)
        throw DomainError("boundary_perm: index out of range");
    std::vector<int> img(n - 1);
    for (int j = 1; j < n; ++j)
        img[j - 1] = lower(p(raise(j, i)), p(i));
    return Perm(std::move(img));
}

// Block swap: i -> i+m for i <= n, i -> i-n for i > n.
inline Perm rho(int n, int m)
{
    if (n < 0 || m < 0)
        throw DomainError("rho: negative block size");
    std::vector<int> img(n + m);
    for (int i = 1; i <= n + m; ++i)
        img[i - 1] = i <= n ? i + m : i - n;
    return Perm(std::move(img));
}

namespace detail {

inline std::vector<std::pair<char, int>> parse_letters(const std::string& text)
{
    std::vector<std::pair<char, int>> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        char tag = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
        if ((tag != 'T' && tag != 'R') || tok.size() < 2)
            throw ParseError("bad word letter '" + tok + "'");
        for (std::size_t k = 1; k < tok.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(tok[k])))
                throw ParseError("bad word letter '" + tok + "'");
        out.emplace_back(tag, std::atoi(tok.c_str() + 1));
    }
    return out;
}

} // namespace detail

// Parses "T1 T2 T1"; the ambient defaults to one more than the largest letter.
inline TWord parse_word(const std::string& text, int ambient = 0)
{
    TWord w;
    int top = 1;
    for (auto [tag, i] : detail::parse_letters(text)) {
        if (tag != 'T')
            throw ParseError("R letters are only valid in hyperoctahedral words");
        w.letters.push_back(i);
        top = std::max(top, i + 1);
    }
    w.ambient = ambient ? ambient : top;
    try {
        check_word(w);
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
    return w;
}

// Hyperoctahedral group BC_n: signed permutations, acting on the right.

struct BCLetter {
    enum Kind { T, R } kind;
    int index;
    bool operator==(const BCLetter&) const = default;
};

struct BCWord {
    int ambient = 1;
    std::vector<BCLetter> letters;
};

struct SignedPerm {
    Perm perm;
    std::vector<int> signs; // signs[k-1] is the sign of k . g

    static SignedPerm identity(int n) { return {Perm::identity(n), std::vector<int>(n, 1)}; }

    int degree() const { return perm.degree(); }

    // Signed image of k (k may be negative).
    int operator()(int k) const
    {
        int a = std::abs(k);
        int v = perm(a) * signs[a - 1];
        return k < 0 ? -v : v;
    }

    SignedPerm operator*(const SignedPerm& rhs) const
    {
        int n = degree();
        std::vector<int> img(n), sg(n);
        for (int k = 1; k <= n; ++k) {
            int v = rhs((*this)(k));
            img[k - 1] = std::abs(v);
            sg[k - 1] = v < 0 ? -1 : 1;
        }
        return {Perm(std::move(img)), std::move(sg)};
    }

    bool operator==(const SignedPerm&) const = default;
};

inline SignedPerm eval_bc_word(const BCWord& w)
{
    int n = w.ambient;
    SignedPerm g = SignedPerm::identity(n);
    for (const BCLetter& l : w.letters) {
        SignedPerm step = SignedPerm::identity(n);
        if (l.kind == BCLetter::T) {
            step.perm = Perm::transposition(n, l.index);
        } else {
            if (l.index < 1 || l.index > n)
                throw DomainError("R letter outside ambient");
            step.signs[l.index - 1] = -1;
        }
        g = g * step;
    }
    return g;
}

inline BCWord parse_bc_word(const std::string& text, int ambient = 0)
{
    BCWord w;
    int top = 1;
    for (auto [tag, i] : detail::parse_letters(text)) {
        if (i < 1)
            throw ParseError("letter index must be positive");
        w.letters.push_back({tag == 'T' ? BCLetter::T : BCLetter::R, i});
        top = std::max(top, tag == 'T' ? i + 1 : i);
    }
    w.ambient = ambient ? ambient : top;
    for (const BCLetter& l : w.letters)
        if ((l.kind == BCLetter::T && l.index >= w.ambient) || l.index > w.ambient)
            throw ParseError("letter outside ambient");
    return w;
}

} // namespace cubeforge
