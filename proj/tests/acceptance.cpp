// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cubeforge/cubeforge.hpp>

#include "perm_oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>

using namespace cubeforge;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
    std::vector<std::string> failures;

    void require(bool cond, const std::string& what)
    {
        if (cond)
            return;
        ok = false;
        if (failures.size() < 5)
            failures.push_back(what);
    }
};

struct Criterion {
    int id;
    const char* title;
    double limit_s; // 0: no time bound
    std::function<void(Outcome&)> run;
};

Adc omega0() { return with_full_cones(disk(2), 1); }

std::vector<NerveCell> exhaustive(const CubNerve& m, int lo, int hi, int bound = 1)
{
    std::vector<NerveCell> out;
    for (int n = lo; n <= hi; ++n) {
        auto c = enumerate_cells(m, n, bound);
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

std::vector<NerveCell> sampled(NerveSampler& smp, int n, std::size_t count, Outcome& o)
{
    std::vector<NerveCell> out;
    for (std::size_t k = 0; k < count; ++k) {
        auto c = smp.sample(n);
        o.require(c.has_value(), "sampler returned nothing in dimension " + std::to_string(n));
        if (c)
            out.push_back(*c);
    }
    return out;
}

std::string shell_key(const CubNerve& m, const NerveCell& a)
{
    std::string k;
    for (int i = 1; i <= a.n; ++i)
        for (Sign s : kSigns)
            k += m.describe(m.face(a, i, s)) + "|";
    return k;
}

Vec unit(std::size_t n, std::size_t k)
{
    Vec v(n);
    v[k] = 1;
    return v;
}

// ---------------------------------------------------------------------------

void axiom_suite(Outcome& o)
{
    struct Case {
        std::string name;
        Adc K;
    };
    std::vector<Case> cases;
    for (int m = 0; m <= 3; ++m)
        cases.push_back({"disk(" + std::to_string(m) + ")", disk(m)});
    for (int m = 0; m <= 2; ++m)
        cases.push_back({"cube(" + std::to_string(m) + ")", cube(m)});
    std::set<std::string> families;
    std::size_t cells = 0, equations = 0;
    std::uint64_t seed = 1;
    for (const auto& c : cases) {
        CubNerve m(c.K, 3);
        auto sample = exhaustive(m, 0, 3);
        NerveSampler rnd(m, 3, 2, seed++);
        for (int n = 0; n <= 3; ++n) {
            auto r = sampled(rnd, n, 500, o);
            sample.insert(sample.end(), r.begin(), r.end());
        }
        NerveSampler fill(m, 3, 2, seed++);
        auto filler = nerve_filler(m, fill);
        AxiomReport r = check_axioms(m, sample, &filler);
        cells += sample.size();
        equations += r.total();
        for (const auto& [f, n] : r.instances)
            if (n)
                families.insert(f);
        o.require(r.ok(), c.name + ": " +
                              (r.violations.empty() ? "" : r.violations.front().family + " " + r.violations.front().detail));
    }
    for (const char* f : {"face_face", "face_degen", "degen_degen", "face_conn", "conn_degen", "conn_conn", "face_comp",
                          "degen_comp", "conn_comp", "units", "associativity", "interchange", "transport"})
        o.require(families.count(f) != 0, std::string("family never exercised: ") + f);
    o.detail << cases.size() << " complexes, " << cells << " cells, " << equations << " equation instances, "
             << families.size() << " families";
}

void thin_cells(Outcome& o)
{
    struct Thin {
        std::string expr;
        NerveCell cell;
    };
    std::size_t pairs = 0, generated = 0, non_thin_seen = 0;
    std::uint64_t seed = 40;
    for (const Adc& K : {disk(1), disk(2), cube(1)}) {
        CubNerve m(K, 4);
        NerveSampler smp(m, 3, 1, seed++);
        std::mt19937 rng(static_cast<unsigned>(seed));
        auto pick = [&](int hi) { return 1 + static_cast<int>(rng() % static_cast<unsigned>(hi)); };
        std::unordered_map<std::string, std::vector<Thin>> by_shell;
        for (int n = 2; n <= 3; ++n) {
            auto atom = [&]() -> Thin {
                NerveCell b = *smp.sample(n - 1);
                if (rng() % 2) {
                    int i = pick(n);
                    return {"e" + std::to_string(i) + "[" + m.describe(b) + "]", m.degen(b, i)};
                }
                int i = pick(n - 1);
                Sign s = kSigns[rng() % 2];
                return {"G" + std::to_string(i) + sign_str(s) + "[" + m.describe(b) + "]", m.conn(b, i, s)};
            };
            // a thin cell whose face d_i^{-s} is f
            auto partner = [&](const NerveCell& f, int i, Sign s) -> Thin {
                std::vector<int> opts{0};
                if (i <= n - 1)
                    opts.push_back(1);
                if (i >= 2)
                    opts.push_back(2);
                int c = opts[rng() % opts.size()];
                std::string fd = "[" + m.describe(f) + "]";
                if (c == 0)
                    return {"e" + std::to_string(i) + fd, m.degen(f, i)};
                int j = c == 1 ? i : i - 1;
                return {"G" + std::to_string(j) + sign_str(s == Sign::Plus ? Sign::Minus : Sign::Plus) + fd,
                        m.conn(f, j, s == Sign::Plus ? Sign::Minus : Sign::Plus)};
            };
            for (int trial = 0; trial < 1500; ++trial) {
                Thin x = atom();
                int steps = static_cast<int>(rng() % 4);
                for (int st = 0; st < steps; ++st) {
                    int i = pick(n);
                    if (rng() % 2) {
                        Thin y = partner(m.face(x.cell, i, Sign::Plus), i, Sign::Plus);
                        x = {"(" + x.expr + " *" + std::to_string(i) + " " + y.expr + ")", m.compose(x.cell, y.cell, i)};
                    } else {
                        Thin y = partner(m.face(x.cell, i, Sign::Minus), i, Sign::Minus);
                        x = {"(" + y.expr + " *" + std::to_string(i) + " " + x.expr + ")", m.compose(y.cell, x.cell, i)};
                    }
                }
                ++generated;
                o.require(is_thin(m, x.cell), "composite of thin cells is not thin: " + x.expr);
                auto& group = by_shell[shell_key(m, x.cell)];
                bool fresh = true;
                for (const auto& y : group) {
                    if (y.expr == x.expr) {
                        fresh = false;
                        continue;
                    }
                    ++pairs;
                    o.require(y.cell == x.cell, "thin cells with equal shells differ: " + x.expr + " vs " + y.expr);
                }
                if (fresh && group.size() < 40)
                    group.push_back(x);
            }
            for (const auto& a : enumerate_cells(m, n, 1))
                non_thin_seen += !is_thin(m, a);
        }
    }
    o.require(pairs >= 200, "only " + std::to_string(pairs) + " pairs with equal shells");
    o.detail << generated << " thin composites, " << pairs << " equal-shell pairs, " << non_thin_seen
             << " non-thin enumerated cells for contrast";
}

void inverse_formulas(Outcome& o)
{
    CubNerve m(omega0(), 4);
    auto cells = exhaustive(m, 1, 2);
    NerveSampler smp(m, 4, 1, 77);
    auto threes = sampled(smp, 3, 200, o);
    cells.insert(cells.end(), threes.begin(), threes.end());
    std::size_t r_checks = 0, t_checks = 0, closure = 0;
    for (const auto& a : cells) {
        for (int k = 1; k <= a.n; ++k) {
            NerveCell r = nc_r_inverse(m, a, k);
            o.require(verify_r_inverse(m, a, r, k), "R" + std::to_string(k) + " fails on " + m.describe(a));
            o.require(nc_r_inverse(m, r, k) == a, "R" + std::to_string(k) + " is not an involution");
            ++r_checks;
        }
        for (int i = 1; i < a.n; ++i) {
            NerveCell t = nc_t_inverse(m, a, i);
            o.require(t == t_inverse_via_psi(m, a, i), "T" + std::to_string(i) + " differs from the psi route");
            o.require(verify_t_inverse(m, a, t, i), "T" + std::to_string(i) + " fails on " + m.describe(a));
            ++t_checks;
        }
    }
    // closure formulas on random composites
    using E = Expr<NerveCell>;
    std::mt19937 rng(5);
    auto leaf = [&](const NerveCell& c) {
        std::map<int, NerveCell> inv;
        for (int k = 1; k <= c.n; ++k)
            inv[k] = *m.r_inverse(c, k);
        return E::make_leaf(c, inv);
    };
    for (int trial = 0; trial < 300; ++trial) {
        int n = 1 + static_cast<int>(rng() % 2);
        auto e = leaf(*smp.sample(n));
        NerveCell cur = eval_expr(m, *e);
        for (int step = 0; step < 3 && cur.n < 3; ++step) {
            int choice = static_cast<int>(rng() % 3);
            if (choice == 0) {
                e = E::eps(1 + static_cast<int>(rng() % (cur.n + 1)), e);
            } else if (choice == 1) {
                e = E::gamma(1 + static_cast<int>(rng() % cur.n), kSigns[rng() % 2], e);
            } else {
                int i = 1 + static_cast<int>(rng() % cur.n);
                auto b = smp.with_face(cur.n, i, Sign::Minus, m.face(cur, i, Sign::Plus));
                o.require(b.has_value(), "no composable partner found");
                if (!b)
                    break;
                e = E::star(i, e, leaf(*b));
            }
            cur = eval_expr(m, *e);
        }
        for (int k = 1; k <= cur.n; ++k) {
            o.require(r_inverse_by_closure(m, *e, k) == *m.r_inverse(cur, k), "closure formula fails at k=" + std::to_string(k));
            ++closure;
        }
    }
    for (const auto& a : enumerate_cells(m, 2, 1))
        for (int i = 1; i <= 2; ++i) {
            NerveCell ra = *m.r_inverse(a, i);
            auto gm = m.conn(a, i, Sign::Minus), gp = m.conn(a, i, Sign::Plus);
            o.require(*m.r_inverse(gm, i) == m.compose(m.degen(ra, i + 1), gp, i), "R_i G_i^- formula");
            o.require(*m.r_inverse(gp, i) == m.compose(gm, m.degen(ra, i + 1), i), "R_i G_i^+ formula");
            o.require(*m.r_inverse(gm, i + 1) == m.compose(m.degen(ra, i), gp, i + 1), "R_{i+1} G_i^- formula");
            o.require(*m.r_inverse(gp, i + 1) == m.compose(gm, m.degen(ra, i), i + 1), "R_{i+1} G_i^+ formula");
            closure += 4;
        }
    o.require(cells.size() >= 500, "fewer than 500 cells");
    o.detail << cells.size() << " cells, " << r_checks << " R checks, " << t_checks << " T checks, " << closure
             << " closure checks";
}

void characterisations(Outcome& o)
{
    struct Case {
        const char* name;
        Adc K;
        int p;
    };
    std::size_t total = 0;
    for (const auto& c : {Case{"omega0", omega0(), 0}, Case{"disk(1)", disk(1), 1}, Case{"disk(2)", disk(2), 2},
                          Case{"disk(2) full from 2", with_full_cones(disk(2), 2), 1}}) {
        CubNerve m(c.K, 4);
        NerveSampler smp(m, 3, 1, 77);
        std::map<int, std::vector<NerveCell>> samples{{1, enumerate_cells(m, 1, 1)}, {2, enumerate_cells(m, 2, 1)}};
        samples[3] = sampled(smp, 3, 200, o);
        auto rep = classify_omega_p(m, samples, "bound-1 enumeration plus seeded 3-cells");
        for (const auto& d : rep.dims) {
            total += d.sample;
            o.require(d.disagreements == 0, std::string(c.name) + ": " + std::to_string(d.disagreements) +
                                                " disagreements at n=" + std::to_string(d.n));
        }
        o.require(rep.p_estimate == c.p, std::string(c.name) + ": p-estimate " + std::to_string(rep.p_estimate));
        o.detail << c.name << " p=" << rep.p_estimate << "; ";
    }
    o.detail << total << " cells compared";
}

void permutation_suite(Outcome& o)
{
    using namespace oracle;
    std::size_t checks = 0;
    for (int n = 1; n <= 4; ++n) {
        auto dist = cayley_bfs(n);
        auto found = reduced_by_search(n);
        for (const Perm& p : all_perms(n)) {
            o.require(length(p) == inversions(p) && length(p) == dist.at(p), "length mismatch at " + p.str());
            std::set<std::vector<int>> lib;
            for (const auto& w : reduced_words(p))
                lib.insert(w.letters);
            o.require(lib == found[p], "reduced words of " + p.str());
            o.require(move_closure(min_rep(p).letters) == found[p], "Matsumoto moves disconnected at " + p.str());
            for (int i = 1; i <= n; ++i) {
                Perm d = boundary_perm(p, i);
                for (int j = 1; j < n; ++j)
                    o.require(d(j) == lower(p(raise(j, i)), p(i)), "boundary identity at " + p.str());
                for (const auto& w : reduced_words(p))
                    o.require(eval_word(boundary_word(w, i)) == d, "boundary word " + w.str());
                ++checks;
            }
        }
    }
    for (int n = 2; n <= 5; ++n)
        for (const Perm& p : all_perms(n))
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    if (i != j) {
                        o.require(boundary_perm(boundary_perm(p, j), lower(i, j)) ==
                                      boundary_perm(boundary_perm(p, i), lower(j, i)),
                                  "boundary commutation at " + p.str());
                        ++checks;
                    }
    o.detail << checks << " boundary checks over S_1..S_5";
}

void sigma_coherence(Outcome& o)
{
    CubNerve m(omega0(), 4);
    NerveSampler smp(m, 4, 1, 23);
    auto s3 = oracle::all_perms(3);
    auto cells = sampled(smp, 3, 100, o);
    std::size_t checks = 0;
    for (const auto& a : cells) {
        o.require(is_plain_invertible(m, a), "sampled 3-cell is not invertible");
        for (const Perm& s : s3) {
            NerveCell sa = sigma_act(m, a, s);
            auto words = reduced_words(s);
            for (const TWord& w : words)
                o.require(apply_word(m, a, w) == sa, "reduced word " + w.str() + " disagrees");
            for (int j = 1; j <= 3; ++j)
                for (Sign al : kSigns)
                    o.require(m.face(sa, j, al) == sigma_act(m, m.face(a, s(j), al), boundary_perm(s, j)),
                              "faces of sigma.A");
            checks += words.size() + 6;
        }
        NerveCell b = m.face(a, 3, Sign::Minus);
        for (const Perm& s : s3) {
            Perm si = s.inverse();
            for (int i = 1; i <= 3; ++i) {
                int j = si(i);
                o.require(sigma_act(m, m.degen(b, i), s) == m.degen(sigma_act(m, b, boundary_perm(s, j)), j),
                          "sigma.eps formula");
                ++checks;
            }
            for (int i = 1; i <= 2; ++i) {
                int j = si(i);
                if (si(i + 1) != j + 1)
                    continue;
                for (Sign al : kSigns) {
                    o.require(sigma_act(m, m.conn(b, i, al), s) == m.conn(sigma_act(m, b, boundary_perm(s, j)), j, al),
                              "sigma.Gamma formula");
                    ++checks;
                }
            }
        }
    }
    o.detail << cells.size() << " invertible 3-cells, " << checks << " checks";
}

void gamma_matching(Outcome& o)
{
    auto report = [&](const char* name, int n, const GammaMatch& r) {
        o.require(r.ok(), std::string(name) + " n=" + std::to_string(n) + ": " +
                              std::to_string(r.unmatched_cubical) + " cubical and " +
                              std::to_string(r.unmatched_globular) + " globular unmatched");
        o.detail << name << " n=" << n << " " << r.matched << "/" << r.globular_cells << "; ";
    };
    report("disk(1)", 1, gamma_vs_ng(disk(1), 1, 1, Orientation::Flipped));
    for (int n = 0; n <= 2; ++n)
        report("disk(2)", n, gamma_vs_ng(disk(2), n, 1, Orientation::Flipped));
    o.detail << "orientation flipped";
}

void classification(Outcome& o)
{
    auto run = [&](const Adc& K) {
        CubNerve m(K, 3);
        NerveSampler smp(m, 2, 2, 2024);
        auto cells = enumerate_cells(m, 2, 1);
        auto extra = sampled(smp, 2, 200, o);
        cells.insert(cells.end(), extra.begin(), extra.end());
        auto rep = classify_omega_p(m, {{2, cells}}, "seed 2024");
        std::string w = rep.dims.at(0).witness ? m.describe(*rep.dims[0].witness) : "";
        return std::make_tuple(rep, w, cells.size());
    };
    auto [nn, witness, count] = run(disk(2));
    auto [again, witness2, count2] = run(disk(2));
    o.require(!witness.empty(), "no non-invertible 2-cell witness for disk(2)");
    o.require(witness == witness2 && nn.dims[0].invertible == again.dims[0].invertible, "rerun is not deterministic");
    CubNerve m(disk(2), 3);
    if (nn.dims[0].witness)
        o.require(!is_plain_invertible(m, *nn.dims[0].witness), "witness is invertible");

    Adc full = load_adc(std::string(CUBEFORGE_DATA_DIR) + "/disk2_full2.adc");
    o.require(full == with_full_cones(disk(2), 2), "disk2_full2.adc differs from the builtin");
    auto [fr, fw, fcount] = run(full);
    o.require(fr.dims[0].invertible == fcount, "a 2-cell stays non-invertible with full degree-2 cones");
    o.detail << "disk(2): witness " << witness << " (" << nn.dims[0].invertible << "/" << count
             << " invertible); full degree-2 cones: " << fr.dims[0].invertible << "/" << fcount << " invertible";
}

void transfor_isomorphism(Outcome& o)
{
    std::size_t built = 0, commute = 0;
    std::uint64_t seed = 300;
    for (const Adc& K : {disk(1), disk(2), cube(1)}) {
        auto C = std::make_shared<const CubNerve>(K, 4);
        auto pool = exhaustive(*C, 0, 2);
        for (int v = 0; v < 7; ++v) {
            // a random selection closed under faces
            std::mt19937_64 rng(seed++);
            std::set<std::string> seen;
            std::vector<NerveCell> sample;
            std::function<void(const NerveCell&)> add = [&](const NerveCell& a) {
                if (!seen.insert(C->describe(a)).second)
                    return;
                for (int i = 1; i <= a.n; ++i)
                    for (Sign s : kSigns)
                        add(C->face(a, i, s));
                sample.push_back(a);
            };
            for (int k = 0; k < 12; ++k)
                add(pool[rng() % pool.size()]);
            auto F = canonical_transfor(C, 1, Variance::Lax, sample, 1);
            ++built;
            auto vf = validate_transfor(F);
            o.require(vf.ok(), "lax table invalid");
            o.require(is_pseudo(F, F.size()), "canonical transfor not pseudo");
            auto G = to_oplax(F);
            auto vg = validate_transfor(G);
            o.require(vg.ok(), "to_oplax output does not validate as oplax");
            o.require(to_lax(G) == F, "to_lax . to_oplax is not the identity");
            for (Sign s : kSigns) {
                o.require(to_oplax(transfor::face(F, 1, s)) == transfor::face(G, 1, s), "conversion vs face");
                o.require(to_oplax(transfor::conn(F, 1, s)) == transfor::conn(G, 1, s), "conversion vs connection");
            }
            for (int i = 1; i <= 2; ++i)
                o.require(to_oplax(transfor::degen(F, i)) == transfor::degen(G, i), "conversion vs degeneracy");
            auto right = transfor::degen(transfor::face(F, 1, Sign::Plus), 1);
            auto left = transfor::degen(transfor::face(F, 1, Sign::Minus), 1);
            o.require(to_oplax(transfor::compose(F, right, 1)) == transfor::compose(G, to_oplax(right), 1),
                      "conversion vs composition");
            o.require(to_oplax(transfor::compose(left, F, 1)) == transfor::compose(to_oplax(left), G, 1),
                      "conversion vs composition");
            commute += 8;
        }
    }
    o.require(built >= 21, "fewer than 21 transfors");
    o.detail << built << " pseudo lax 1-transfors, " << commute << " commutation checks";
}

void adc_algebra(Outcome& o)
{
    std::vector<Adc> shipped;
    for (Orientation d : {Orientation::Printed, Orientation::Flipped})
        for (int n = 0; n <= 4; ++n)
            shipped.push_back(disk(n, d));
    for (int n = 0; n <= 4; ++n)
        shipped.push_back(cube(n));
    shipped.push_back(with_full_cones(disk(2), 1));
    shipped.push_back(tensor(disk(1), disk(2)));
    for (const char* f : {"disk1.adc", "disk2.adc", "disk2_flipped.adc", "disk2_full2.adc", "omega0.adc", "cube2.adc"})
        shipped.push_back(load_adc(std::string(CUBEFORGE_DATA_DIR) + "/" + f));
    for (const Adc& K : shipped) {
        o.require(validate(K).ok(), "shipped complex fails validation");
        for (int k = 2; k <= K.top_degree(); ++k)
            o.require((K.boundary[k - 1] * K.boundary[k]).is_zero(), "d o d != 0");
        for (std::size_t c = 0; K.top_degree() >= 1 && c < K.rank(1); ++c)
            o.require(K.e(K.d(1, unit(K.rank(1), c))) == 0, "e o d != 0");
    }
    // tensor powers of the interval against the cubical boundary formula
    std::size_t columns = 0;
    Adc T = cube(1);
    for (int n = 1; n <= 4; ++n) {
        if (n > 1)
            T = tensor(T, cube(1));
        Adc C = cube(n);
        const seq::Shape& sh = seq::shape(n);
        for (int k = 1; k <= n; ++k)
            for (std::size_t c = 0; c < T.rank(k); ++c) {
                std::string name = "(";
                for (char ch : T.basis[k][c])
                    if (ch == '-' || ch == '+' || ch == '0')
                        name += ch;
                name += ")";
                int s = seq::parse(name, n);
                Vec want = C.zero(k - 1);
                int r = 0;
                for (int j = 1; j <= n; ++j) {
                    if (seq::get(s, j) != seq::kMid)
                        continue;
                    ++r;
                    for (Sign a : kSigns)
                        want[sh.pos[seq::set(s, j, seq::sym(a))]] += (a == Sign::Minus ? -1 : 1) * (r % 2 ? -1 : 1);
                }
                Vec got = T.d(k, unit(T.rank(k), c));
                Vec mapped = C.zero(k - 1);
                for (std::size_t x = 0; x < got.size(); ++x) {
                    std::string fn = "(";
                    for (char ch : T.basis[k - 1][x])
                        if (ch == '-' || ch == '+' || ch == '0')
                            fn += ch;
                    fn += ")";
                    mapped[sh.pos[seq::parse(fn, n)]] += got[x];
                }
                o.require(mapped == want, "Leibniz sign mismatch at " + T.basis[k][c]);
                o.require(C.d(k, unit(C.rank(k), sh.pos[s])) == want, "cube boundary mismatch at " + name);
                ++columns;
            }
    }
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> dim(1, 8), val(-9, 9);
        Matrix R(dim(rng), dim(rng));
        for (std::size_t r = 0; r < R.rows; ++r)
            for (std::size_t c = 0; c < R.cols; ++c)
                R(r, c) = val(rng);
        SmithForm f = smith(R);
        o.require(f.U * f.D * f.V == R, "U D V != R");
        o.require(abs(determinant(f.U)) == 1 && abs(determinant(f.V)) == 1, "U or V not unimodular");
    }
    o.detail << shipped.size() << " complexes, " << columns << " boundary columns, 100 Smith forms";
}

} // namespace

int main()
{
    std::vector<Criterion> criteria{
        {1, "cubical axiom suite", 60, axiom_suite},
        {2, "thin-cell theorem", 30, thin_cells},
        {3, "inverse-formula oracle equivalence", 120, inverse_formulas},
        {4, "equivalence of characterisations", 0, characterisations},
        {5, "permutation suite", 30, permutation_suite},
        {6, "sigma-action coherence", 0, sigma_coherence},
        {7, "gamma / globular nerve matching", 120, gamma_matching},
        {8, "(omega,p) classification", 0, classification},
        {9, "transfor isomorphism", 0, transfor_isomorphism},
        {10, "ADC algebra", 0, adc_algebra},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.failures.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && secs >= c.limit_s) {
            o.ok = false;
            o.failures.push_back("time bound exceeded");
        }
        char timing[64];
        if (c.limit_s > 0)
            std::snprintf(timing, sizeof timing, "%.2f s < %.0f s", secs, c.limit_s);
        else
            std::snprintf(timing, sizeof timing, "%.2f s", secs);
        std::printf("[%s] %2d %s: %s (%s)\n", o.ok ? "PASS" : "FAIL", c.id, c.title, o.detail.str().c_str(), timing);
        for (const auto& f : o.failures)
            std::printf("       %s\n", f.c_str());
        std::fflush(stdout);
        failed += !o.ok;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
