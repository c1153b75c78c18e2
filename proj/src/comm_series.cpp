#include "arbor/comm_series.hpp"

#include <map>
#include <utility>

#include "arbor/partitions.hpp"

namespace arbor {

namespace {

const Rational kZero{};

} // namespace

// ---------------------------------------------------------------------------
// CommSeries
// ---------------------------------------------------------------------------

CommSeries::CommSeries(int dim, int truncation) : dim_(dim), trunc_(truncation) {
    if (dim < 1) throw InvalidArgument("series dimension must be >= 1");
    if (truncation < 0) throw InvalidArgument("series truncation must be >= 0");
}

const Rational& CommSeries::at(const MultiIndex& alpha) const {
    auto it = c_.find(alpha);
    return it == c_.end() ? kZero : it->second;
}

void CommSeries::set(const MultiIndex& alpha, const Rational& v) {
    if (alpha.dim() != dim_) throw DimensionMismatch("coefficient index dimension differs");
    if (alpha.degree() > trunc_)
        throw TruncationMismatch("coefficient at degree " + std::to_string(alpha.degree()) +
                                 " exceeds truncation " + std::to_string(trunc_));
    if (v.is_zero())
        c_.erase(alpha);
    else
        c_[alpha] = v;
}

void CommSeries::add_to(const MultiIndex& alpha, const Rational& v) {
    if (v.is_zero()) return;
    set(alpha, at(alpha) + v);
}

int CommSeries::max_degree() const {
    int d = 0;
    for (const auto& [alpha, v] : c_) d = std::max(d, alpha.degree());
    return d;
}

CommSeries CommSeries::truncated(int t) const {
    CommSeries out(dim_, t);
    for (const auto& [alpha, v] : c_)
        if (alpha.degree() <= t) out.set(alpha, v);
    return out;
}

CommSeries series_add(const CommSeries& f, const CommSeries& g) {
    if (f.dim() != g.dim()) throw DimensionMismatch("series dimensions differ");
    CommSeries out(f.dim(), std::min(f.truncation(), g.truncation()));
    for (const auto& [alpha, v] : f.coeffs())
        if (alpha.degree() <= out.truncation()) out.add_to(alpha, v);
    for (const auto& [alpha, v] : g.coeffs())
        if (alpha.degree() <= out.truncation()) out.add_to(alpha, v);
    return out;
}

CommSeries series_scale(const Rational& c, const CommSeries& f) {
    CommSeries out(f.dim(), f.truncation());
    if (c.is_zero()) return out;
    for (const auto& [alpha, v] : f.coeffs()) out.set(alpha, c * v);
    return out;
}

CommSeries series_mul(const CommSeries& f, const CommSeries& g) {
    if (f.dim() != g.dim()) throw DimensionMismatch("series dimensions differ");
    CommSeries out(f.dim(), std::min(f.truncation(), g.truncation()));
    for (const auto& [beta, fv] : f.coeffs()) {
        if (beta.degree() > out.truncation()) continue;
        for (const auto& [gamma, gv] : g.coeffs()) {
            if (beta.degree() + gamma.degree() > out.truncation()) continue;
            MultiIndex alpha = add(beta, gamma);
            out.add_to(alpha, Rational(binomial(alpha, beta)) * fv * gv);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// CommMap
// ---------------------------------------------------------------------------

CommMap::CommMap(int dim, int truncation) : dim_(dim), trunc_(truncation) {
    if (dim < 1) throw InvalidArgument("map dimension must be >= 1");
    if (truncation < 0) throw InvalidArgument("map truncation must be >= 0");
    comp_.assign(static_cast<std::size_t>(dim), CommSeries(dim, truncation));
}

CommMap::CommMap(std::vector<CommSeries> components) {
    if (components.empty()) throw InvalidArgument("map needs at least one component");
    dim_ = components.front().dim();
    trunc_ = components.front().truncation();
    if (static_cast<int>(components.size()) != dim_)
        throw DimensionMismatch("component count differs from dimension");
    for (const CommSeries& s : components) {
        if (s.dim() != dim_) throw DimensionMismatch("component dimensions differ");
        if (s.truncation() != trunc_) throw TruncationMismatch("component truncations differ");
    }
    comp_ = std::move(components);
}

CommMap CommMap::identity(int dim, int truncation) {
    CommMap m(dim, truncation);
    if (truncation < 1) throw InvalidArgument("identity map needs truncation >= 1");
    for (int i = 1; i <= dim; ++i)
        m.component(i).set(MultiIndex::unit(dim, i), Rational(1));
    return m;
}

CommMap CommMap::linear(const RationalMatrix& mat, int truncation) {
    CommMap m(mat.size(), truncation);
    if (truncation < 1) throw InvalidArgument("linear map needs truncation >= 1");
    for (int i = 1; i <= mat.size(); ++i)
        for (int j = 1; j <= mat.size(); ++j)
            m.component(i).set(MultiIndex::unit(mat.size(), j), mat.at(i, j));
    return m;
}

bool CommMap::has_zero_constant_term() const {
    MultiIndex zero(dim_);
    for (int i = 1; i <= dim_; ++i)
        if (!component(i).at(zero).is_zero()) return false;
    return true;
}

CommMap CommMap::truncated(int t) const {
    std::vector<CommSeries> comps;
    comps.reserve(comp_.size());
    for (const CommSeries& s : comp_) comps.push_back(s.truncated(t));
    return CommMap(std::move(comps));
}

RationalMatrix jacobian_linear_term(const CommMap& f) {
    RationalMatrix m(f.dim());
    for (int i = 1; i <= f.dim(); ++i)
        for (int j = 1; j <= f.dim(); ++j)
            m.at(i, j) = f.component(i).at(MultiIndex::unit(f.dim(), j));
    return m;
}

// ---------------------------------------------------------------------------
// Composition
// ---------------------------------------------------------------------------

CommMap compose_direct(const CommMap& f, const CommMap& g) {
    if (f.dim() != g.dim()) throw DimensionMismatch("map dimensions differ");
    if (!g.has_zero_constant_term())
        throw InvalidArgument("inner map must have zero constant term");
    int n = f.dim();
    int d = std::min(f.truncation(), g.truncation());

    // Powers of each inner component, up to the largest exponent that can
    // matter at this truncation.
    std::vector<std::vector<CommSeries>> pow(static_cast<std::size_t>(n));
    CommSeries one(n, d);
    one.set(MultiIndex(n), Rational(1));
    for (int j = 1; j <= n; ++j) {
        auto& p = pow[static_cast<std::size_t>(j - 1)];
        p.push_back(one);
        CommSeries base = g.component(j).truncated(d);
        for (int k = 1; k <= d; ++k) p.push_back(series_mul(p.back(), base));
    }

    CommMap out(n, d);
    for (int i = 1; i <= n; ++i) {
        CommSeries acc(n, d);
        for (const auto& [alpha, v] : f.component(i).coeffs()) {
            if (alpha.degree() > d) continue;
            CommSeries mono = one;
            for (int j = 1; j <= n; ++j)
                if (alpha.component(j) > 0)
                    mono = series_mul(mono,
                                      pow[static_cast<std::size_t>(j - 1)]
                                         [static_cast<std::size_t>(alpha.component(j))]);
            acc = series_add(acc, series_scale(v / Rational(factorial(alpha)), mono));
        }
        out.component(i) = std::move(acc);
    }
    return out;
}

namespace {

Rational chain_energy(const LabelledTree& v, int depth, const std::vector<CommMap>& chain) {
    if (v.is_leaf()) return Rational(1);
    Rational e = chain[static_cast<std::size_t>(depth)].component(v.type).at(
        outdegree(v, chain.front().dim()));
    for (const LabelledTree& c : v.children) {
        if (e.is_zero()) return e;
        e *= chain_energy(c, depth + 1, chain);
    }
    return e;
}

} // namespace

CommMap compose_fdb(const std::vector<CommMap>& chain, const Caps& caps) {
    if (chain.size() < 2) throw InvalidArgument("chain composition needs at least two maps");
    int n = chain.front().dim();
    int d = chain.front().truncation();
    for (const CommMap& f : chain) {
        if (f.dim() != n) throw DimensionMismatch("chain map dimensions differ");
        d = std::min(d, f.truncation());
        if (!f.has_zero_constant_term())
            throw InvalidArgument("chain maps must have zero constant term");
    }
    if (d > caps.max_leaves)
        throw ResourceLimit("target degree " + std::to_string(d) +
                            " exceeds tree-enumeration cap " + std::to_string(caps.max_leaves));

    int m = static_cast<int>(chain.size());
    CommMap out(n, d);
    for (const MultiIndex& alpha : multi_indices_up_to(n, d)) {
        if (alpha.is_zero()) continue;
        for (int i = 1; i <= n; ++i) {
            Rational sum(0);
            TreeFamilySpec spec{TreeFamily::Final, n, i, alpha, m, 1};
            for_each_tree(spec,
                          [&](const LabelledTree& t) { sum += chain_energy(t, 0, chain); },
                          caps);
            out.component(i).set(alpha, sum);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Inversion
// ---------------------------------------------------------------------------

namespace {

// Nonlinear coefficients of X - F, as a zero-extended table.
CoeffTable minus_nonlinear_table(const CommMap& f) {
    CoeffTable h = CoeffTable::zero_extended();
    for (int i = 1; i <= f.dim(); ++i)
        for (const auto& [alpha, v] : f.component(i).coeffs())
            if (alpha.degree() >= 2) h.set(i, alpha, -v);
    return h;
}

// Memoized inverse-coefficient recursion: for |alpha| >= 2 the coefficient
// is a sum over partitions of the label set [alpha] with two or more blocks;
// singleton blocks are typed by their slot, larger blocks range over all
// types and contribute a recursive factor.
class InverseRecursion {
public:
    InverseRecursion(const CoeffTable& h, int dim, const Caps& caps)
        : h_(h), dim_(dim), caps_(caps) {}

    Rational coefficient(int i, const MultiIndex& alpha) {
        if (alpha.degree() == 1) return Rational(alpha.unit_component() == i ? 1 : 0);
        if (alpha.degree() == 0) return Rational(0);
        auto key = std::make_pair(i, alpha);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        Rational total(0);
        LabelSet ground = label_slots(alpha);
        for_each_set_partition(
            ground,
            [&](const SetPartition& pi) {
                if (pi.block_count() < 2) return;
                block_sum(pi, 0, MultiIndex(dim_), Rational(1), i, total);
            },
            static_cast<std::size_t>(caps_.max_degree));

        if (memo_.size() >= caps_.memo_budget)
            throw ResourceLimit("memo budget of " + std::to_string(caps_.memo_budget) +
                                " cells exceeded");
        memo_.emplace(std::move(key), total);
        return total;
    }

private:
    void block_sum(const SetPartition& pi, std::size_t idx, const MultiIndex& mu,
                   const Rational& prod, int i, Rational& total) {
        if (idx == pi.blocks.size()) {
            Rational head = h_.lookup(i, mu);
            if (!head.is_zero()) total += head * prod;
            return;
        }
        const LabelSet& block = pi.blocks[idx];
        if (block.size() == 1) {
            block_sum(pi, idx + 1, mu.incremented(block.front().component), prod, i, total);
            return;
        }
        MultiIndex counts = slot_counts(block, dim_);
        for (int t = 1; t <= dim_; ++t) {
            Rational sub = coefficient(t, counts);
            if (sub.is_zero()) continue;
            block_sum(pi, idx + 1, mu.incremented(t), prod * sub, i, total);
        }
    }

    const CoeffTable& h_;
    int dim_;
    const Caps& caps_;
    std::map<std::pair<int, MultiIndex>, Rational> memo_;
};

} // namespace

CommMap invert_identity_linear(const CommMap& f, InversionPath path, const Caps& caps) {
    if (!f.has_zero_constant_term())
        throw InvalidArgument("map must have zero constant term");
    if (!jacobian_linear_term(f).is_identity())
        throw InvalidArgument("linear term is not the identity; use invert_general");
    int n = f.dim();
    int d = f.truncation();
    CoeffTable h = minus_nonlinear_table(f);

    CommMap g = CommMap::identity(n, d);
    if (path == InversionPath::TreeSum) {
        for (const MultiIndex& alpha : multi_indices_up_to(n, d)) {
            if (alpha.degree() < 2) continue;
            for (int i = 1; i <= n; ++i) {
                Rational sum(0);
                TreeFamilySpec spec{TreeFamily::Proper, n, i, alpha, 2, 1};
                for_each_tree(spec, [&](const LabelledTree& t) { sum += tree_energy(t, h, n); },
                              caps);
                g.component(i).set(alpha, sum);
            }
        }
    } else {
        InverseRecursion rec(h, n, caps);
        for (const MultiIndex& alpha : multi_indices_up_to(n, d)) {
            if (alpha.degree() < 2) continue;
            for (int i = 1; i <= n; ++i) g.component(i).set(alpha, rec.coefficient(i, alpha));
        }
    }
    return g;
}

CommMap invert_general(const CommMap& f, GeneralInversionPath path, const Caps& caps) {
    if (!f.has_zero_constant_term())
        throw InvalidArgument("map must have zero constant term");
    int n = f.dim();
    int d = f.truncation();
    RationalMatrix p = jacobian_linear_term(f);
    std::optional<RationalMatrix> q = p.inverse();
    if (!q)
        throw SingularLinearTerm("linear term is singular; the map has no power series inverse");

    if (path == GeneralInversionPath::Reduction) {
        CommMap qmap = CommMap::linear(*q, d);
        CommMap conjugated = compose_direct(f, qmap);
        CommMap inner = invert_identity_linear(conjugated, InversionPath::Recursive, caps);
        return compose_direct(qmap, inner);
    }

    CoeffTable h = minus_nonlinear_table(f);
    CommMap g = CommMap::linear(*q, d);
    for (const MultiIndex& alpha : multi_indices_up_to(n, d)) {
        if (alpha.degree() < 2) continue;
        for (int i = 1; i <= n; ++i) {
            Rational sum(0);
            TreeFamilySpec spec{TreeFamily::Alternating, n, i, alpha, 2, 1};
            for_each_tree(spec,
                          [&](const LabelledTree& t) { sum += alt_tree_energy(t, h, *q, n); },
                          caps);
            g.component(i).set(alpha, sum);
        }
    }
    return g;
}

CoeffTable phi_involution(const CoeffTable& h, int dim, int truncation, const Caps& caps) {
    CoeffTable table = CoeffTable::zero_extended();
    for (const auto& [key, v] : h.entries()) {
        const auto& [i, alpha] = key;
        if (i < 1 || i > dim) throw InvalidArgument("table component out of range");
        if (alpha.dim() != dim) throw DimensionMismatch("table index dimension differs");
        if (alpha.degree() < 2)
            throw InvalidArgument("involution input must contain only degree >= 2 entries");
        if (alpha.degree() > truncation)
            throw TruncationMismatch("table entry at degree " + std::to_string(alpha.degree()) +
                                     " exceeds truncation " + std::to_string(truncation));
        if (!v.is_zero()) table.set(i, alpha, v);
    }

    InverseRecursion rec(table, dim, caps);
    CoeffTable out = CoeffTable::zero_extended();
    for (const MultiIndex& alpha : multi_indices_up_to(dim, truncation)) {
        if (alpha.degree() < 2) continue;
        for (int i = 1; i <= dim; ++i) {
            Rational v = rec.coefficient(i, alpha);
            if (!v.is_zero()) out.set(i, alpha, -v);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Nilpotency of the Jacobian via matrix powers / fern sums
// ---------------------------------------------------------------------------

namespace {

CommSeries partial_derivative(const CommSeries& f, int j, int truncation) {
    CommSeries out(f.dim(), truncation);
    for (const auto& [beta, v] : f.coeffs()) {
        if (beta.component(j) == 0) continue;
        MultiIndex alpha = beta.decremented(j);
        if (alpha.degree() <= truncation) out.set(alpha, v);
    }
    return out;
}

} // namespace

FernCheckReport fern_nilpotency_check(const CommMap& h, int m, FernPath path, int degree_bound,
                                      const Caps& caps) {
    if (m < 1) throw InvalidArgument("matrix power m must be >= 1");
    if (degree_bound < 0) throw InvalidArgument("degree bound must be >= 0");
    int n = h.dim();
    int delta = 0;
    for (int i = 1; i <= n; ++i) {
        for (const auto& [alpha, v] : h.component(i).coeffs())
            if (alpha.degree() < 2)
                throw InvalidArgument("map must contain only degree >= 2 terms");
        delta = std::max(delta, h.component(i).max_degree());
    }
    if (degree_bound < m * (delta - 1))
        throw InvalidArgument("degree bound " + std::to_string(degree_bound) +
                              " is below m*(delta-1) = " + std::to_string(m * (delta - 1)) +
                              "; the check would be inconclusive");

    FernCheckReport report;
    if (path == FernPath::MatrixPower) {
        std::vector<std::vector<CommSeries>> jac(
            static_cast<std::size_t>(n),
            std::vector<CommSeries>(static_cast<std::size_t>(n), CommSeries(n, degree_bound)));
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                jac[i - 1][j - 1] = partial_derivative(h.component(i), j, degree_bound);

        auto power = jac;
        for (int step = 2; step <= m; ++step) {
            std::vector<std::vector<CommSeries>> next(
                static_cast<std::size_t>(n),
                std::vector<CommSeries>(static_cast<std::size_t>(n),
                                        CommSeries(n, degree_bound)));
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j) {
                    CommSeries acc(n, degree_bound);
                    for (int k = 1; k <= n; ++k)
                        acc = series_add(acc, series_mul(power[i - 1][k - 1], jac[k - 1][j - 1]));
                    next[i - 1][j - 1] = std::move(acc);
                }
            power = std::move(next);
        }

        for (int i = 1; i <= n && !report.witness; ++i)
            for (int j = 1; j <= n && !report.witness; ++j)
                if (!power[i - 1][j - 1].is_zero()) {
                    const auto& [alpha, v] = *power[i - 1][j - 1].coeffs().begin();
                    report.witness = FernWitness{i, j, alpha, v};
                }
    } else {
        CoeffTable table = CoeffTable::zero_extended();
        for (int i = 1; i <= n; ++i)
            for (const auto& [alpha, v] : h.component(i).coeffs()) table.set(i, alpha, v);

        std::vector<MultiIndex> alphas = multi_indices_up_to(n, degree_bound);
        for (int i = 1; i <= n && !report.witness; ++i)
            for (int j = 1; j <= n && !report.witness; ++j)
                for (const MultiIndex& alpha : alphas) {
                    Rational sum(0);
                    TreeFamilySpec spec{TreeFamily::Fern, n, i, alpha, m, j};
                    for_each_tree(spec,
                                  [&](const LabelledTree& t) { sum += tree_energy(t, table, n); },
                                  caps);
                    if (!sum.is_zero()) {
                        report.witness = FernWitness{i, j, alpha, sum};
                        break;
                    }
                }
    }
    report.nilpotent = !report.witness.has_value();
    return report;
}

} // namespace arbor
