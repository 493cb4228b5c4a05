#pragma once

#include "axioms.hpp"
#include "cubical.hpp"
#include "invertibility.hpp"
#include "nerve.hpp"
#include "perm.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace cubeforge {

enum class Variance { Lax, Oplax };

inline const char* variance_str(Variance v) { return v == Variance::Lax ? "lax" : "oplax"; }

inline Variance opposite(Variance v) { return v == Variance::Lax ? Variance::Oplax : Variance::Lax; }

template <class M>
concept HashedModel = CubicalModel<M> && requires(const M& m, const typename M::Cell& a) {
    { m.hash(a) } -> std::convertible_to<std::size_t>;
};

/**
 * A p-transfor restricted to a finite sample of source cells: each sampled
 * n-cell carries an (n+p)-cell of the target.
 */
template <HashedModel MS, HashedModel MT>
class TransforTable {
public:
    using SCell = typename MS::Cell;
    using TCell = typename MT::Cell;

    TransforTable(std::shared_ptr<const MS> source, std::shared_ptr<const MT> target, int p, Variance v)
        : src_(std::move(source)), tgt_(std::move(target)), p_(p), var_(v),
          index_(0, Hash{src_.get()}, std::equal_to<SCell>())
    {
        if (p < 0)
            throw DomainError("transfor degree must be nonnegative");
    }

    const MS& source() const { return *src_; }
    const MT& target() const { return *tgt_; }
    std::shared_ptr<const MS> source_ptr() const { return src_; }
    std::shared_ptr<const MT> target_ptr() const { return tgt_; }
    int degree() const { return p_; }
    Variance variance() const { return var_; }
    std::size_t size() const { return cells_.size(); }
    const std::vector<SCell>& cells() const { return cells_; }
    const std::vector<TCell>& images() const { return images_; }

    void set(const SCell& a, TCell img)
    {
        int n = src_->dim(a);
        if (tgt_->dim(img) != n + p_)
            throw DomainError("image of an " + std::to_string(n) + "-cell must have dimension " + std::to_string(n + p_));
        auto it = index_.find(a);
        if (it != index_.end()) {
            images_[it->second] = std::move(img);
            return;
        }
        index_.emplace(a, cells_.size());
        cells_.push_back(a);
        images_.push_back(std::move(img));
    }

    bool contains(const SCell& a) const { return index_.count(a) != 0; }

    const TCell* find(const SCell& a) const
    {
        auto it = index_.find(a);
        return it == index_.end() ? nullptr : &images_[it->second];
    }

    const TCell& at(const SCell& a) const
    {
        const TCell* t = find(a);
        if (!t)
            throw DomainError("cell outside the declared sample: " + src_->describe(a));
        return *t;
    }

    // Same sample and models, new images.
    TransforTable remap(int p, Variance v, const std::function<TCell(const SCell&, const TCell&)>& f) const
    {
        TransforTable out(src_, tgt_, p, v);
        for (std::size_t k = 0; k < cells_.size(); ++k)
            out.set(cells_[k], f(cells_[k], images_[k]));
        return out;
    }

    bool operator==(const TransforTable& o) const
    {
        if (p_ != o.p_ || var_ != o.var_ || cells_.size() != o.cells_.size())
            return false;
        for (std::size_t k = 0; k < cells_.size(); ++k) {
            const TCell* t = o.find(cells_[k]);
            if (!t || !(*t == images_[k]))
                return false;
        }
        return true;
    }

private:
    struct Hash {
        const MS* m;
        std::size_t operator()(const SCell& a) const { return m->hash(a); }
    };

    std::shared_ptr<const MS> src_;
    std::shared_ptr<const MT> tgt_;
    int p_;
    Variance var_;
    std::vector<SCell> cells_;
    std::vector<TCell> images_;
    std::unordered_map<SCell, std::size_t, Hash> index_;
};

/**
 * Checks the boundary, degeneracy, connection and composition equations of
 * the declared variance. Instances whose source cell (a face, degeneracy,
 * connection or composite of sampled cells) lies outside the sample are
 * skipped and counted; missing faces are violations.
 */
struct TransforReport {
    AxiomReport equations;
    std::size_t skipped = 0;
    std::size_t sample = 0;
    bool ok() const { return equations.ok(); }
};

template <HashedModel MS, HashedModel MT>
TransforReport validate_transfor(const TransforTable<MS, MT>& F, std::size_t max_recorded = 200)
{
    using SCell = typename MS::Cell;
    using TCell = typename MT::Cell;
    const MS& C = F.source();
    const MT& D = F.target();
    const int p = F.degree();
    const bool lax = F.variance() == Variance::Lax;
    TransforReport rep;
    rep.sample = F.size();
    AxiomReport& r = rep.equations;
    r.cells = F.size();

    auto record = [&](const std::string& fam, const std::string& inst, const std::string& detail) {
        ++r.violation_count;
        if (r.violations.size() < max_recorded)
            r.violations.push_back({fam, inst, detail});
    };
    auto check = [&](const std::string& fam, const std::string& inst, auto&& lhs, const TCell& rhs) {
        ++r.instances[fam];
        try {
            TCell l = lhs();
            if (!(l == rhs))
                record(fam, inst, "lhs " + D.describe(l) + " != rhs " + D.describe(rhs));
        } catch (const Error& e) {
            record(fam, inst, e.what());
        }
    };
    // shift applied to an operation index on the source side
    const int sh = lax ? p : 0;

    std::unordered_map<std::string, std::vector<std::size_t>> by_face; // (n, i, face(-)) -> cells
    const auto& cells = F.cells();
    const auto& imgs = F.images();
    for (std::size_t x = 0; x < cells.size(); ++x) {
        const SCell& a = cells[x];
        int n = C.dim(a);
        for (int i = 1; i <= n; ++i)
            by_face[std::to_string(n) + "|" + std::to_string(i) + "|" + C.describe(C.face(a, i, Sign::Minus))].push_back(x);
    }

    for (std::size_t x = 0; x < cells.size(); ++x) {
        const SCell& a = cells[x];
        const TCell& fa = imgs[x];
        int n = C.dim(a);
        std::string an = C.describe(a);
        for (int i = 1; i <= n; ++i)
            for (Sign s : kSigns) {
                std::string inst = "d" + std::to_string(i) + sign_str(s) + " of " + an;
                SCell f = C.face(a, i, s);
                const TCell* ff = F.find(f);
                ++r.instances["boundary"];
                if (!ff) {
                    record("boundary", inst, "face outside the sample");
                    continue;
                }
                --r.instances["boundary"];
                check("boundary", inst, [&] { return D.face(fa, sh + i, s); }, *ff);
            }
        if (n + 1 <= C.max_dim())
            for (int i = 1; i <= n + 1; ++i) {
                const TCell* fe = F.find(C.degen(a, i));
                if (!fe) {
                    ++rep.skipped;
                    continue;
                }
                check("degeneracy", "e" + std::to_string(i) + " of " + an, [&] { return D.degen(fa, sh + i); }, *fe);
            }
        if (n + 1 <= C.max_dim())
            for (int i = 1; i <= n; ++i)
                for (Sign s : kSigns) {
                    const TCell* fg = F.find(C.conn(a, i, s));
                    if (!fg) {
                        ++rep.skipped;
                        continue;
                    }
                    check("connection", "G" + std::to_string(i) + sign_str(s) + " of " + an,
                          [&] { return D.conn(fa, sh + i, s); }, *fg);
                }
        for (int i = 1; i <= n; ++i) {
            auto it = by_face.find(std::to_string(n) + "|" + std::to_string(i) + "|" + C.describe(C.face(a, i, Sign::Plus)));
            if (it == by_face.end())
                continue;
            for (std::size_t y : it->second) {
                const TCell* fab = nullptr;
                try {
                    fab = F.find(C.compose(a, cells[y], i));
                } catch (const CompositionError&) {
                }
                if (!fab) {
                    ++rep.skipped;
                    continue;
                }
                check("composition", an + " *" + std::to_string(i) + " " + C.describe(cells[y]),
                      [&] { return D.compose(fa, imgs[y], sh + i); }, *fab);
            }
        }
    }
    return rep;
}

/**
 * Cubical operations on transfor tables. For a lax p-transfor the operation
 * index i acts on slot i of F(A); for an oplax one on slot n+i.
 */
namespace transfor {

template <class T>
int slot(const T& F, int n, int i)
{
    return F.variance() == Variance::Lax ? i : n + i;
}

template <class T>
T face(const T& F, int i, Sign s)
{
    int p = F.degree();
    if (i < 1 || i > p)
        throw DomainError("transfor face index outside [1, " + std::to_string(p) + "]");
    const auto& C = F.source();
    const auto& D = F.target();
    return F.remap(p - 1, F.variance(), [&](const auto& a, const auto& fa) { return D.face(fa, slot(F, C.dim(a), i), s); });
}

template <class T>
T degen(const T& F, int i)
{
    int p = F.degree();
    if (i < 1 || i > p + 1)
        throw DomainError("transfor degeneracy index outside [1, " + std::to_string(p + 1) + "]");
    const auto& C = F.source();
    const auto& D = F.target();
    return F.remap(p + 1, F.variance(), [&](const auto& a, const auto& fa) { return D.degen(fa, slot(F, C.dim(a), i)); });
}

template <class T>
T conn(const T& F, int i, Sign s)
{
    int p = F.degree();
    if (i < 1 || i > p)
        throw DomainError("transfor connection index outside [1, " + std::to_string(p) + "]");
    const auto& C = F.source();
    const auto& D = F.target();
    return F.remap(p + 1, F.variance(), [&](const auto& a, const auto& fa) { return D.conn(fa, slot(F, C.dim(a), i), s); });
}

template <class T>
T compose(const T& F, const T& G, int i)
{
    int p = F.degree();
    if (G.degree() != p || G.variance() != F.variance() || G.size() != F.size())
        throw CompositionError("transfors of different shape");
    if (i < 1 || i > p)
        throw CompositionError("transfor composition index outside [1, " + std::to_string(p) + "]");
    const auto& C = F.source();
    const auto& D = F.target();
    return F.remap(p, F.variance(), [&](const auto& a, const auto& fa) {
        const auto* ga = G.find(a);
        if (!ga)
            throw CompositionError("second transfor undefined at " + C.describe(a));
        return D.compose(fa, *ga, slot(F, C.dim(a), i));
    });
}

} // namespace transfor

// The permutation relating F(A) to its converted image: rho(n,p) for lax, rho(p,n) for oplax.
inline Perm pseudo_perm(Variance v, int n, int p) { return v == Variance::Lax ? rho(n, p) : rho(p, n); }

/**
 * Pseudo test by the recursive characterisation: p = 0, or every image of a
 * positive-dimensional cell is invertible and every face transfor is pseudo.
 * On up to `cross_check` cells the direct definition (invertibility under
 * the permutation action) is evaluated too; disagreement throws.
 */
template <HashedModel MS, HashedModel MT>
bool is_pseudo(const TransforTable<MS, MT>& F, std::size_t cross_check = 16)
{
    const MS& C = F.source();
    const MT& D = F.target();
    if constexpr (!HasROracle<MT>) {
        throw OracleUnavailable("pseudo test needs an inverse oracle on the target");
    } else {
        std::function<bool(const TransforTable<MS, MT>&)> rec = [&](const TransforTable<MS, MT>& G) {
            if (G.degree() == 0)
                return true;
            for (std::size_t k = 0; k < G.size(); ++k)
                if (C.dim(G.cells()[k]) > 0 && !is_plain_invertible(D, G.images()[k]))
                    return false;
            for (int i = 1; i <= G.degree(); ++i)
                for (Sign s : kSigns)
                    if (!rec(transfor::face(G, i, s)))
                        return false;
            return true;
        };
        bool res = rec(F);
        std::size_t step = std::max<std::size_t>(1, F.size() / std::max<std::size_t>(1, cross_check));
        bool all_direct = true;
        std::size_t checked = 0;
        for (std::size_t k = 0; k < F.size() && checked < cross_check; k += step, ++checked) {
            int n = C.dim(F.cells()[k]);
            bool direct = true;
            try {
                sigma_act(D, F.images()[k], pseudo_perm(F.variance(), n, F.degree()));
            } catch (const NotInvertible&) {
                direct = false;
            }
            if (res && !direct)
                throw Error("pseudo test disagreement at " + C.describe(F.cells()[k]) +
                            ": recursive test accepts, direct action fails");
            all_direct = all_direct && direct;
        }
        if (!res && checked == F.size() && all_direct)
            throw Error("pseudo test disagreement: recursive test rejects, direct action succeeds on the whole sample");
        return res;
    }
}

template <HashedModel MS, HashedModel MT>
TransforTable<MS, MT> convert(const TransforTable<MS, MT>& F)
{
    const MS& C = F.source();
    const MT& D = F.target();
    int p = F.degree();
    return F.remap(p, opposite(F.variance()), [&](const auto& a, const auto& fa) {
        return sigma_act(D, fa, pseudo_perm(F.variance(), C.dim(a), p));
    });
}

template <HashedModel MS, HashedModel MT>
TransforTable<MS, MT> to_oplax(const TransforTable<MS, MT>& F)
{
    if (F.variance() != Variance::Lax)
        throw DomainError("to_oplax expects a lax transfor");
    return convert(F);
}

template <HashedModel MS, HashedModel MT>
TransforTable<MS, MT> to_lax(const TransforTable<MS, MT>& G)
{
    if (G.variance() != Variance::Oplax)
        throw DomainError("to_lax expects an oplax transfor");
    return convert(G);
}

using NerveTransfor = TransforTable<CubNerve, CubNerve>;

// Identity 0-transfor on a sample.
inline NerveTransfor identity_transfor(std::shared_ptr<const CubNerve> C, const std::vector<NerveCell>& sample)
{
    NerveTransfor F(C, C, 0, Variance::Lax);
    for (const auto& a : sample)
        F.set(a, a);
    return F;
}

// 0-transfor induced by a chain map K -> L: each chain is pushed forward.
inline NerveTransfor transfor_from_chain_map(std::shared_ptr<const CubNerve> C, std::shared_ptr<const CubNerve> D,
                                             const ChainMap& f, const std::vector<NerveCell>& sample)
{
    auto rep = check_chain_map(f, C->adc(), D->adc());
    if (!rep.ok())
        throw DomainError("not a chain map: " + rep.violations.front());
    NerveTransfor F(C, D, 0, Variance::Lax);
    for (const auto& a : sample) {
        NerveCell b = D->blank(a.n);
        for (int s = 0; s < seq::pow3(a.n); ++s)
            D->put(b, s, f.apply(seq::shape(a.n).deg[s], C->at(a, s)));
        F.set(a, b);
    }
    return F;
}

/**
 * Canonical p-transfor out of the nerve of K into the nerve of cube(p) (x) K
 * (lax) or K (x) cube(p) (oplax): F(A)[s t] = [s] (x) A[t]. With
 * full_from >= 0 the target cones are widened to full from that degree.
 */
inline NerveTransfor canonical_transfor(std::shared_ptr<const CubNerve> C, int p, Variance v,
                                        const std::vector<NerveCell>& sample, int full_from = -1)
{
    const Adc& K = C->adc();
    Adc Q = cube(p);
    Adc T = v == Variance::Lax ? tensor(Q, K) : tensor(K, Q);
    T.orientation = K.orientation;
    if (full_from >= 0)
        T = with_full_cones(std::move(T), full_from);
    int top = 0;
    for (const auto& a : sample)
        top = std::max(top, a.n);
    auto D = std::make_shared<const CubNerve>(std::move(T), std::max(C->max_dim(), top + p + 1));
    NerveTransfor F(C, D, p, v);
    const seq::Shape& qs = seq::shape(p);
    for (const auto& a : sample) {
        int n = a.n;
        const seq::Shape& as = seq::shape(n);
        NerveCell b = D->blank(n + p);
        for (int s1 = 0; s1 < qs.count(); ++s1)
            for (int s2 = 0; s2 < as.count(); ++s2) {
                int da = qs.deg[s1], db = as.deg[s2];
                Vec x = C->at(a, s2);
                Vec y = D->adc().zero(da + db);
                for (std::size_t j = 0; j < x.size(); ++j) {
                    std::size_t at = v == Variance::Lax ? tensor_index(Q, K, da, qs.pos[s1], db, j)
                                                         : tensor_index(K, Q, db, j, da, qs.pos[s1]);
                    y[at] = x[j];
                }
                int full = v == Variance::Lax ? s1 + s2 * seq::pow3(p) : s2 + s1 * seq::pow3(n);
                D->put(b, full, y);
            }
        std::string why;
        if (!D->valid(b, &why))
            throw DomainError("canonical transfor image is not a nerve cell: " + why);
        F.set(a, b);
    }
    return F;
}

} // namespace cubeforge
