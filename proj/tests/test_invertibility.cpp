#include <cubeforge/invertibility.hpp>
#include <cubeforge/nerve.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace cubeforge;

namespace {

Adc omega0() { return with_full_cones(disk(2), 1); }

// Nerve without closed forms: only the cubical operations.
struct Bare {
    using Cell = NerveCell;
    const CubNerve& m;
    int max_dim() const { return m.max_dim(); }
    int dim(const Cell& a) const { return a.n; }
    Cell face(const Cell& a, int i, Sign s) const { return m.face(a, i, s); }
    Cell degen(const Cell& a, int i) const { return m.degen(a, i); }
    Cell conn(const Cell& a, int i, Sign s) const { return m.conn(a, i, s); }
    bool composable(const Cell& a, const Cell& b, int i) const { return m.composable(a, b, i); }
    Cell compose(const Cell& a, const Cell& b, int i) const { return m.compose(a, b, i); }
    std::string describe(const Cell& a) const { return m.describe(a); }
};

// Nerve with the R oracle only, so T-inverses go through psi.
struct ROnly : Bare {
    std::optional<Cell> r_inverse(const Cell& a, int k) const { return m.r_inverse(a, k); }
};

static_assert(!HasROracle<Bare>);
static_assert(HasROracle<ROnly> && !HasTOracle<ROnly>);
static_assert(HasTOracle<CubNerve>);

std::vector<NerveCell> first(std::vector<NerveCell> v, std::size_t k)
{
    if (v.size() > k)
        v.resize(k);
    return v;
}

bool solves_r(const CubNerve& m, const NerveCell& a, const NerveCell& b, int k)
{
    return m.composable(a, b, k) && m.composable(b, a, k) && verify_r_inverse(m, a, b, k);
}

bool solves_t(const CubNerve& m, const NerveCell& a, const NerveCell& b, int i)
{
    try {
        return verify_t_inverse(m, a, b, i);
    } catch (const CompositionError&) {
        return false;
    }
}

} // namespace

TEST(RInverse, ClosedFormIsTheUniqueBoundedSolution)
{
    CubNerve m(omega0(), 4);
    for (int n = 1; n <= 2; ++n) {
        auto all = enumerate_cells(m, n, 1);
        for (const auto& a : first(all, 80))
            for (int k = 1; k <= n; ++k) {
                auto r = m.r_inverse(a, k);
                ASSERT_TRUE(r);
                EXPECT_TRUE(verify_r_inverse(m, a, *r, k));
                EXPECT_EQ(*m.r_inverse(*r, k), a);
                std::size_t found = 0;
                for (const auto& b : all)
                    if (solves_r(m, a, b, k)) {
                        ++found;
                        EXPECT_EQ(b, *r);
                    }
                EXPECT_EQ(found, 1u);
            }
    }
}

TEST(RInverse, NonnegativeConesObstruct)
{
    CubNerve m(disk(2), 4);
    for (int n = 1; n <= 2; ++n) {
        auto all = enumerate_cells(m, n, 1);
        for (const auto& a : all)
            for (int k = 1; k <= n; ++k) {
                auto r = m.r_inverse(a, k);
                EXPECT_EQ(r.has_value(), !m.first_obstruction(a, k, false).has_value());
                if (r) {
                    EXPECT_TRUE(verify_r_inverse(m, a, *r, k));
                    continue;
                }
                for (const auto& b : all)
                    EXPECT_FALSE(solves_r(m, a, b, k));
                EXPECT_THROW(nc_r_inverse(m, a, k), NotInvertible);
            }
    }
    EXPECT_THROW(m.r_inverse(m.blank(1), 2), DomainError);
}

TEST(RInverse, PlainInvertibilityIsTheTopChain)
{
    CubNerve m(disk(2), 4);
    for (int n = 1; n <= 2; ++n)
        for (const auto& a : enumerate_cells(m, n, 1)) {
            bool inv = is_plain_invertible(m, a);
            EXPECT_EQ(inv, is_zero(m.top_chain(a))) << m.describe(a);
            EXPECT_EQ(inv, m.r_inverse(Phi(m, a, n), 1).has_value());
        }
    CubNerve f(omega0(), 4);
    for (const auto& a : enumerate_cells(f, 2, 1))
        EXPECT_TRUE(is_plain_invertible(f, a));
    EXPECT_THROW(is_plain_invertible(m, m.make(0, {Vec{1, 0}})), DomainError);
    Bare bare{m};
    EXPECT_THROW(is_plain_invertible(bare, enumerate_cells(m, 1, 1).front()), OracleUnavailable);
}

TEST(TInverse, ClosedFormMatchesPsiRoute)
{
    CubNerve m(omega0(), 4);
    ROnly r{{m}};
    auto all = enumerate_cells(m, 2, 1);
    for (const auto& a : all) {
        auto t = m.t_inverse(a, 1);
        ASSERT_TRUE(t);
        EXPECT_EQ(*t, t_inverse_via_psi(m, a, 1));
        EXPECT_EQ(*t, t_inverse(r, a, 1));
        EXPECT_TRUE(verify_t_inverse(m, a, *t, 1));
        EXPECT_EQ(*m.t_inverse(*t, 1), a);
    }
    for (const auto& a : first(all, 60)) {
        auto t = m.t_inverse(a, 1);
        std::size_t found = 0;
        for (const auto& b : all)
            if (solves_t(m, a, b, 1)) {
                ++found;
                EXPECT_EQ(b, *t);
            }
        EXPECT_EQ(found, 1u);
    }
    NerveSampler smp(m, 3, 1, 17);
    for (int k = 0; k < 30; ++k) {
        auto a = smp.sample(3);
        ASSERT_TRUE(a);
        for (int i = 1; i <= 2; ++i)
            EXPECT_EQ(*m.t_inverse(*a, i), t_inverse_via_psi(m, *a, i));
    }
}

TEST(TInverse, NonnegativeCones)
{
    CubNerve m(disk(2), 4);
    ROnly r{{m}};
    auto all = enumerate_cells(m, 2, 1);
    std::size_t blocked = 0;
    for (const auto& a : all) {
        auto t = m.t_inverse(a, 1);
        EXPECT_EQ(t.has_value(), is_t_invertible(m, a, 1));
        EXPECT_EQ(t.has_value(), try_t_inverse(r, a, 1).has_value());
        if (t) {
            EXPECT_TRUE(verify_t_inverse(m, a, *t, 1));
            continue;
        }
        ++blocked;
        EXPECT_THROW(t_inverse_via_psi(m, a, 1), NotInvertible);
        EXPECT_THROW(nc_t_inverse(m, a, 1), NotInvertible);
        for (const auto& b : all)
            EXPECT_FALSE(solves_t(m, a, b, 1));
    }
    EXPECT_GT(blocked, 0u);
    Bare bare{m};
    EXPECT_THROW(t_inverse_via_psi(bare, all.front(), 1), OracleUnavailable);
    EXPECT_THROW(m.t_inverse(all.front(), 2), DomainError);
}

TEST(Closure, RandomCompositesMatchTheOracle)
{
    CubNerve m(omega0(), 4);
    NerveSampler smp(m, 4, 1, 99);
    std::mt19937 rng(5);
    using E = Expr<NerveCell>;
    auto leaf = [&](const NerveCell& c) {
        std::map<int, NerveCell> inv;
        for (int k = 1; k <= c.n; ++k)
            inv[k] = *m.r_inverse(c, k);
        return E::make_leaf(c, inv);
    };
    std::size_t checked = 0;
    for (int trial = 0; trial < 150; ++trial) {
        int n = 1 + static_cast<int>(rng() % 2);
        auto e = leaf(*smp.sample(n));
        NerveCell cur = eval_expr(m, *e);
        for (int step = 0; step < 3 && cur.n < 3; ++step) {
            int choice = static_cast<int>(rng() % 3);
            if (choice == 0) {
                int i = 1 + static_cast<int>(rng() % (cur.n + 1));
                e = E::eps(i, e);
            } else if (choice == 1) {
                int i = 1 + static_cast<int>(rng() % cur.n);
                e = E::gamma(i, kSigns[rng() % 2], e);
            } else {
                int i = 1 + static_cast<int>(rng() % cur.n);
                auto b = smp.with_face(cur.n, i, Sign::Minus, m.face(cur, i, Sign::Plus));
                ASSERT_TRUE(b);
                e = rng() % 2 ? E::star(i, e, leaf(*b)) : E::star(i, e, E::eps(i, leaf(m.face(cur, i, Sign::Plus))));
            }
            cur = eval_expr(m, *e);
        }
        for (int k = 1; k <= cur.n; ++k) {
            NerveCell got = r_inverse_by_closure(m, *e, k);
            EXPECT_EQ(got, *m.r_inverse(cur, k)) << "k=" << k;
            ++checked;
        }
    }
    EXPECT_GT(checked, 200u);
}

TEST(Closure, ConnectionCornerCases)
{
    CubNerve m(omega0(), 4);
    using S = Sign;
    for (const auto& a : enumerate_cells(m, 2, 1)) {
        for (int i = 1; i <= 2; ++i) {
            NerveCell ra = *m.r_inverse(a, i);
            EXPECT_EQ(*m.r_inverse(m.conn(a, i, S::Minus), i),
                      m.compose(m.degen(ra, i + 1), m.conn(a, i, S::Plus), i));
            EXPECT_EQ(*m.r_inverse(m.conn(a, i, S::Plus), i), m.compose(m.conn(a, i, S::Minus), m.degen(ra, i + 1), i));
            EXPECT_EQ(*m.r_inverse(m.conn(a, i, S::Minus), i + 1),
                      m.compose(m.degen(ra, i), m.conn(a, i, S::Plus), i + 1));
            EXPECT_EQ(*m.r_inverse(m.conn(a, i, S::Plus), i + 1), m.compose(m.conn(a, i, S::Minus), m.degen(ra, i), i + 1));
        }
    }
    auto bad = std::make_shared<Expr<NerveCell>>();
    bad->kind = Expr<NerveCell>::Star;
    EXPECT_THROW(eval_expr(m, *bad), DomainError);
    auto lone = Expr<NerveCell>::make_leaf(enumerate_cells(m, 1, 1).front());
    EXPECT_THROW(r_inverse_by_closure(m, *lone, 1), DomainError);
}

TEST(SigmaAction, Coherence)
{
    CubNerve m(omega0(), 4);
    NerveSampler smp(m, 4, 1, 23);
    std::vector<Perm> s3;
    {
        std::vector<int> img{1, 2, 3};
        do
            s3.emplace_back(img);
        while (std::next_permutation(img.begin(), img.end()));
    }
    for (int trial = 0; trial < 25; ++trial) {
        NerveCell a = *smp.sample(3);
        EXPECT_EQ(sigma_act(m, a, Perm::identity(3)), a);
        for (int i = 1; i <= 2; ++i)
            EXPECT_EQ(*m.t_inverse(*m.t_inverse(a, i), i), a);
        for (const Perm& s : s3) {
            NerveCell sa = sigma_act(m, a, s);
            for (const TWord& w : reduced_words(s))
                EXPECT_EQ(apply_word(m, a, w), sa) << w.str();
            for (const Perm& t : s3)
                EXPECT_EQ(sigma_act(m, a, s * t), sigma_act(m, sigma_act(m, a, t), s));
            for (int j = 1; j <= 3; ++j)
                for (Sign al : kSigns)
                    EXPECT_EQ(m.face(sa, j, al), sigma_act(m, m.face(a, s(j), al), boundary_perm(s, j)));
        }
        NerveCell b = m.face(a, 3, Sign::Minus);
        for (const Perm& s : s3) {
            Perm si = s.inverse();
            for (int i = 1; i <= 3; ++i) {
                int j = si(i);
                EXPECT_EQ(sigma_act(m, m.degen(b, i), s), m.degen(sigma_act(m, b, boundary_perm(s, j)), j));
            }
            for (int i = 1; i <= 2; ++i) {
                int j = si(i);
                if (si(i + 1) != j + 1)
                    continue;
                for (Sign al : kSigns)
                    EXPECT_EQ(sigma_act(m, m.conn(b, i, al), s), m.conn(sigma_act(m, b, boundary_perm(s, j)), j, al));
            }
        }
    }
}

TEST(SigmaAction, PartialActionOnNonnegativeCells)
{
    // u-invertibility along one reduced word agrees with every other reduced word
    CubNerve m(disk(2), 4);
    NerveSampler smp(m, 3, 1, 8);
    Perm longest({3, 2, 1});
    auto words = reduced_words(longest);
    ASSERT_EQ(words.size(), 2u);
    std::size_t both = 0, neither = 0;
    for (int trial = 0; trial < 200; ++trial) {
        NerveCell a = *smp.sample(3);
        std::optional<NerveCell> r[2];
        for (int w = 0; w < 2; ++w) {
            try {
                r[w] = apply_word(m, a, words[w]);
            } catch (const NotInvertible&) {
            }
        }
        EXPECT_EQ(r[0].has_value(), r[1].has_value());
        if (r[0] && r[1]) {
            EXPECT_EQ(*r[0], *r[1]);
            ++both;
        } else if (!r[0] && !r[1]) {
            ++neither;
        }
    }
    EXPECT_GT(both, 0u);
    EXPECT_THROW(apply_word(m, smp.sample(2).value(), TWord{3, {1}}), DomainError);
}

TEST(Classify, EstimatesAndAgreement)
{
    auto run = [](const Adc& K, int top) {
        CubNerve m(K, top + 1);
        std::map<int, std::vector<NerveCell>> samples;
        for (int n = 1; n <= top; ++n)
            samples[n] = first(enumerate_cells(m, n, 1), 300);
        return classify_omega_p(m, samples, "bounded enumeration");
    };
    auto check = [](const auto& rep, int p) {
        EXPECT_EQ(rep.p_estimate, p);
        EXPECT_EQ(rep.witnessed, p > 0);
        for (const auto& d : rep.dims) {
            EXPECT_EQ(d.disagreements, 0u) << "n=" << d.n;
            // the shell criteria characterise invertibility only above p
            if (d.n > p) {
                EXPECT_TRUE(d.cond1 && d.cond3 && d.cond5 && d.cond7) << "n=" << d.n;
            }
            if (d.n == p) {
                EXPECT_FALSE(d.cond1);
            }
            EXPECT_EQ(d.cond1, d.invertible == d.sample);
            EXPECT_EQ(d.cond1, !d.witness.has_value());
        }
    };
    check(run(omega0(), 2), 0);
    check(run(disk(1), 2), 1);
    check(run(disk(2), 2), 2);
    check(run(with_full_cones(disk(2), 2), 2), 1);
    check(run(cube(1), 2), 1);
    auto rep = run(disk(2), 2);
    CubNerve m(disk(2), 3);
    ASSERT_TRUE(rep.dims.back().witness);
    EXPECT_FALSE(is_plain_invertible(m, *rep.dims.back().witness));
}
