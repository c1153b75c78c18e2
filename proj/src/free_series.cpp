#include "arbor/free_series.hpp"

#include <map>
#include <utility>

namespace arbor {

namespace {

const Rational kZero{};

} // namespace

// ---------------------------------------------------------------------------
// FreeSeries
// ---------------------------------------------------------------------------

FreeSeries::FreeSeries(int dim, int truncation) : dim_(dim), trunc_(truncation) {
    if (dim < 1) throw InvalidArgument("series dimension must be >= 1");
    if (truncation < 0) throw InvalidArgument("series truncation must be >= 0");
}

const Rational& FreeSeries::at(const Word& w) const {
    auto it = c_.find(w);
    return it == c_.end() ? kZero : it->second;
}

void FreeSeries::set(const Word& w, const Rational& v) {
    if (w.max_letter() > dim_) throw DimensionMismatch("word letter exceeds series dimension");
    if (w.length() > trunc_)
        throw TruncationMismatch("coefficient at word length " + std::to_string(w.length()) +
                                 " exceeds truncation " + std::to_string(trunc_));
    if (v.is_zero())
        c_.erase(w);
    else
        c_[w] = v;
}

void FreeSeries::add_to(const Word& w, const Rational& v) {
    if (v.is_zero()) return;
    set(w, at(w) + v);
}

FreeSeries FreeSeries::truncated(int t) const {
    FreeSeries out(dim_, t);
    for (const auto& [w, v] : c_)
        if (w.length() <= t) out.set(w, v);
    return out;
}

FreeSeries free_add(const FreeSeries& f, const FreeSeries& g) {
    if (f.dim() != g.dim()) throw DimensionMismatch("series dimensions differ");
    FreeSeries out(f.dim(), std::min(f.truncation(), g.truncation()));
    for (const auto& [w, v] : f.coeffs())
        if (w.length() <= out.truncation()) out.add_to(w, v);
    for (const auto& [w, v] : g.coeffs())
        if (w.length() <= out.truncation()) out.add_to(w, v);
    return out;
}

FreeSeries free_scale(const Rational& c, const FreeSeries& f) {
    FreeSeries out(f.dim(), f.truncation());
    if (c.is_zero()) return out;
    for (const auto& [w, v] : f.coeffs()) out.set(w, c * v);
    return out;
}

FreeSeries free_mul(const FreeSeries& f, const FreeSeries& g) {
    if (f.dim() != g.dim()) throw DimensionMismatch("series dimensions differ");
    FreeSeries out(f.dim(), std::min(f.truncation(), g.truncation()));
    for (const auto& [wf, vf] : f.coeffs()) {
        if (wf.length() > out.truncation()) continue;
        for (const auto& [wg, vg] : g.coeffs()) {
            if (wf.length() + wg.length() > out.truncation()) continue;
            out.add_to(wf.concat(wg), vf * vg);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// FreeMap
// ---------------------------------------------------------------------------

FreeMap::FreeMap(int dim, int truncation) : dim_(dim), trunc_(truncation) {
    if (dim < 1) throw InvalidArgument("map dimension must be >= 1");
    if (truncation < 0) throw InvalidArgument("map truncation must be >= 0");
    comp_.assign(static_cast<std::size_t>(dim), FreeSeries(dim, truncation));
}

FreeMap::FreeMap(std::vector<FreeSeries> components) {
    if (components.empty()) throw InvalidArgument("map needs at least one component");
    dim_ = components.front().dim();
    trunc_ = components.front().truncation();
    if (static_cast<int>(components.size()) != dim_)
        throw DimensionMismatch("component count differs from dimension");
    for (const FreeSeries& s : components) {
        if (s.dim() != dim_) throw DimensionMismatch("component dimensions differ");
        if (s.truncation() != trunc_) throw TruncationMismatch("component truncations differ");
    }
    comp_ = std::move(components);
}

FreeMap FreeMap::identity(int dim, int truncation) {
    FreeMap m(dim, truncation);
    if (truncation < 1) throw InvalidArgument("identity map needs truncation >= 1");
    for (int i = 1; i <= dim; ++i) m.component(i).set(Word::single(i), Rational(1));
    return m;
}

FreeMap FreeMap::linear(const RationalMatrix& mat, int truncation) {
    FreeMap m(mat.size(), truncation);
    if (truncation < 1) throw InvalidArgument("linear map needs truncation >= 1");
    for (int i = 1; i <= mat.size(); ++i)
        for (int j = 1; j <= mat.size(); ++j)
            m.component(i).set(Word::single(j), mat.at(i, j));
    return m;
}

bool FreeMap::has_zero_constant_term() const {
    for (int i = 1; i <= dim_; ++i)
        if (!component(i).at(Word::empty()).is_zero()) return false;
    return true;
}

RationalMatrix free_jacobian_at_zero(const FreeMap& f) {
    RationalMatrix m(f.dim());
    for (int i = 1; i <= f.dim(); ++i)
        for (int j = 1; j <= f.dim(); ++j) m.at(i, j) = f.component(i).at(Word::single(j));
    return m;
}

// ---------------------------------------------------------------------------
// Composition
// ---------------------------------------------------------------------------

FreeMap free_compose_direct(const FreeMap& f, const FreeMap& g) {
    if (f.dim() != g.dim()) throw DimensionMismatch("map dimensions differ");
    if (!g.has_zero_constant_term())
        throw InvalidArgument("inner map must have zero constant term");
    int n = f.dim();
    int d = std::min(f.truncation(), g.truncation());

    FreeSeries one(n, d);
    one.set(Word::empty(), Rational(1));
    std::vector<FreeSeries> inner;
    inner.reserve(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) inner.push_back(g.component(j).truncated(d));

    FreeMap out(n, d);
    for (int i = 1; i <= n; ++i) {
        FreeSeries acc(n, d);
        for (const auto& [kappa, v] : f.component(i).coeffs()) {
            if (kappa.length() > d) continue;
            // Substitute G_{kappa_l} for the l-th letter; each factor has
            // zero constant term, so the product starts at degree |kappa|.
            FreeSeries mono = one;
            for (int l = 0; l < kappa.length(); ++l)
                mono = free_mul(mono, inner[static_cast<std::size_t>(kappa[l] - 1)]);
            acc = free_add(acc, free_scale(v, mono));
        }
        out.component(i) = std::move(acc);
    }
    return out;
}

namespace {

Rational planar_chain_energy(const PlanarTree& v, int depth, const std::vector<FreeMap>& chain) {
    if (v.is_leaf()) return Rational(1);
    Rational e =
        chain[static_cast<std::size_t>(depth)].component(v.type).at(free_outdegree(v));
    for (const PlanarTree& c : v.children) {
        if (e.is_zero()) return e;
        e *= planar_chain_energy(c, depth + 1, chain);
    }
    return e;
}

} // namespace

FreeMap free_compose_fdb(const std::vector<FreeMap>& chain, const Caps& caps) {
    if (chain.size() < 2) throw InvalidArgument("chain composition needs at least two maps");
    int n = chain.front().dim();
    int d = chain.front().truncation();
    for (const FreeMap& f : chain) {
        if (f.dim() != n) throw DimensionMismatch("chain map dimensions differ");
        d = std::min(d, f.truncation());
        if (!f.has_zero_constant_term())
            throw InvalidArgument("chain maps must have zero constant term");
    }
    if (d > caps.max_leaves)
        throw ResourceLimit("target word length " + std::to_string(d) +
                            " exceeds tree-enumeration cap " + std::to_string(caps.max_leaves));

    int m = static_cast<int>(chain.size());
    FreeMap out(n, d);
    for (const Word& kappa : words_up_to(n, d)) {
        if (kappa.is_empty()) continue;
        for (int i = 1; i <= n; ++i) {
            Rational sum(0);
            PlanarFamilySpec spec{TreeFamily::Final, n, i, kappa, m};
            for_each_planar_tree(
                spec, [&](const PlanarTree& t) { sum += planar_chain_energy(t, 0, chain); },
                caps);
            out.component(i).set(kappa, sum);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Inversion
// ---------------------------------------------------------------------------

namespace {

FreeCoeffTable minus_nonlinear_table(const FreeMap& f) {
    FreeCoeffTable h = FreeCoeffTable::zero_extended();
    for (int i = 1; i <= f.dim(); ++i)
        for (const auto& [w, v] : f.component(i).coeffs())
            if (w.length() >= 2) h.set(i, w, -v);
    return h;
}

// Memoized word recursion: split kappa into c >= 2 consecutive non-empty
// parts, type each part (singleton parts are typed by their letter), take
// the head coefficient at the type word times the recursive part factors.
class FreeInverseRecursion {
public:
    FreeInverseRecursion(const FreeCoeffTable& h, int dim, const Caps& caps)
        : h_(h), dim_(dim), caps_(caps) {}

    Rational coefficient(int i, const Word& kappa) {
        if (kappa.length() == 1) return Rational(kappa[0] == i ? 1 : 0);
        if (kappa.is_empty()) return Rational(0);
        auto key = std::make_pair(i, kappa);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        Rational total(0);
        // First part is a strict prefix, forcing at least two parts.
        split_sum(kappa, 0, kappa.length(), Word::empty(), Rational(1), i, total);

        if (memo_.size() >= caps_.memo_budget)
            throw ResourceLimit("memo budget of " + std::to_string(caps_.memo_budget) +
                                " cells exceeded");
        memo_.emplace(std::move(key), total);
        return total;
    }

private:
    void split_sum(const Word& kappa, int pos, int len, const Word& types, const Rational& prod,
                   int i, Rational& total) {
        if (pos == len) {
            Rational head = h_.lookup(i, types);
            if (!head.is_zero()) total += head * prod;
            return;
        }
        int max_end = (pos == 0) ? len - 1 : len;
        for (int end = pos + 1; end <= max_end; ++end) {
            if (end - pos == 1) {
                split_sum(kappa, end, len, types.appended(kappa[pos]), prod, i, total);
                continue;
            }
            Word part = kappa.sub(pos, end);
            for (int t = 1; t <= dim_; ++t) {
                Rational sub = coefficient(t, part);
                if (sub.is_zero()) continue;
                split_sum(kappa, end, len, types.appended(t), prod * sub, i, total);
            }
        }
    }

    const FreeCoeffTable& h_;
    int dim_;
    const Caps& caps_;
    std::map<std::pair<int, Word>, Rational> memo_;
};

} // namespace

FreeMap free_invert(const FreeMap& f, InversionPath path, const Caps& caps) {
    if (!f.has_zero_constant_term())
        throw InvalidArgument("map must have zero constant term");
    if (!free_jacobian_at_zero(f).is_identity())
        throw InvalidArgument("linear term is not the identity; use free_invert_general");
    int n = f.dim();
    int d = f.truncation();
    FreeCoeffTable h = minus_nonlinear_table(f);

    FreeMap g = FreeMap::identity(n, d);
    if (path == InversionPath::TreeSum) {
        for (const Word& kappa : words_up_to(n, d)) {
            if (kappa.length() < 2) continue;
            for (int i = 1; i <= n; ++i) {
                Rational sum(0);
                PlanarFamilySpec spec{TreeFamily::Proper, n, i, kappa, 2};
                for_each_planar_tree(
                    spec, [&](const PlanarTree& t) { sum += planar_energy(t, h); }, caps);
                g.component(i).set(kappa, sum);
            }
        }
    } else {
        FreeInverseRecursion rec(h, n, caps);
        for (const Word& kappa : words_up_to(n, d)) {
            if (kappa.length() < 2) continue;
            for (int i = 1; i <= n; ++i) g.component(i).set(kappa, rec.coefficient(i, kappa));
        }
    }
    return g;
}

FreeMap free_invert_general(const FreeMap& f, GeneralInversionPath path, const Caps& caps) {
    if (!f.has_zero_constant_term())
        throw InvalidArgument("map must have zero constant term");
    int n = f.dim();
    int d = f.truncation();
    RationalMatrix p = free_jacobian_at_zero(f);
    std::optional<RationalMatrix> q = p.inverse();
    if (!q)
        throw SingularLinearTerm("linear term is singular; the map has no power series inverse");

    if (path == GeneralInversionPath::Reduction) {
        FreeMap qmap = FreeMap::linear(*q, d);
        FreeMap conjugated = free_compose_direct(f, qmap);
        FreeMap inner = free_invert(conjugated, InversionPath::Recursive, caps);
        return free_compose_direct(qmap, inner);
    }

    FreeCoeffTable h = minus_nonlinear_table(f);
    FreeMap g = FreeMap::linear(*q, d);
    for (const Word& kappa : words_up_to(n, d)) {
        if (kappa.length() < 2) continue;
        for (int i = 1; i <= n; ++i) {
            Rational sum(0);
            PlanarFamilySpec spec{TreeFamily::Alternating, n, i, kappa, 2};
            for_each_planar_tree(
                spec, [&](const PlanarTree& t) { sum += planar_alt_energy(t, h, *q); }, caps);
            g.component(i).set(kappa, sum);
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Hausdorff derivative and abelianization
// ---------------------------------------------------------------------------

FreeSeries hausdorff_derivative(const FreeSeries& f, int j) {
    if (j < 1 || j > f.dim()) throw InvalidArgument("derivative variable out of range [1, N]");
    FreeSeries out(f.dim(), std::max(f.truncation() - 1, 0));
    for (const auto& [w, v] : f.coeffs()) {
        if (w.length() - 1 > out.truncation()) continue;
        for (int pos = 0; pos < w.length(); ++pos)
            if (w[pos] == j) out.add_to(w.erased(pos), v);
    }
    return out;
}

CommSeries abelianize(const FreeSeries& f) {
    CommSeries out(f.dim(), f.truncation());
    for (const auto& [w, v] : f.coeffs()) {
        MultiIndex alpha = w.abelianization(f.dim());
        out.add_to(alpha, Rational(factorial(alpha)) * v);
    }
    return out;
}

CommMap abelianize(const FreeMap& f) {
    std::vector<CommSeries> comps;
    comps.reserve(static_cast<std::size_t>(f.dim()));
    for (int i = 1; i <= f.dim(); ++i) comps.push_back(abelianize(f.component(i)));
    return CommMap(std::move(comps));
}

} // namespace arbor
