#include "arbor/apps.hpp"

#include <algorithm>

#include "arbor/trees.hpp"

namespace arbor {

namespace {

const Rational kZero{};

// Single label universe {(1,1), ..., (1,k)} used for one-dimensional counts.
LabelSet ground_of_size(int k) {
    LabelSet s;
    s.reserve(static_cast<std::size_t>(k));
    for (int a = 1; a <= k; ++a) s.push_back({1, a});
    return s;
}

} // namespace

const Rational& Polynomial::at(int degree) const {
    auto it = c_.find(degree);
    return it == c_.end() ? kZero : it->second;
}

void Polynomial::set(int degree, const Rational& v) {
    if (degree < 0) throw InvalidArgument("polynomial degree must be >= 0");
    if (v.is_zero())
        c_.erase(degree);
    else
        c_[degree] = v;
}

void Polynomial::add_to(int degree, const Rational& v) {
    if (v.is_zero()) return;
    set(degree, at(degree) + v);
}

Integer stirling2(int k, int j, std::size_t cap) {
    if (k < 0 || j < 0) throw InvalidArgument("stirling arguments must be >= 0");
    Integer count(0);
    for_each_set_partition(
        ground_of_size(k),
        [&](const SetPartition& pi) {
            if (pi.block_count() == j) ++count;
        },
        cap);
    return count;
}

Integer bell_number(int k, std::size_t cap) {
    if (k < 0) throw InvalidArgument("bell argument must be >= 0");
    Integer count(0);
    for_each_set_partition(ground_of_size(k), [&](const SetPartition&) { ++count; }, cap);
    return count;
}

Polynomial hermite_polynomial(int k, std::size_t cap) {
    if (k < 0) throw InvalidArgument("hermite index must be >= 0");
    Polynomial out;
    for_each_set_partition(
        ground_of_size(k),
        [&](const SetPartition& pi) {
            int singletons = 0;
            for (const LabelSet& block : pi.blocks) {
                if (block.size() > 2) return; // such partitions contribute 0
                if (block.size() == 1) ++singletons;
            }
            int sign = (k + pi.block_count()) % 2 == 0 ? 1 : -1;
            out.add_to(singletons, Rational(sign));
        },
        cap);
    return out;
}

CoeffMap moments_from_cumulants(const CoeffMap& cumulants, int dim, int max_degree,
                                std::size_t cap) {
    auto value = [&](const MultiIndex& mi) -> Rational {
        auto it = cumulants.find(mi);
        return it == cumulants.end() ? Rational(0) : it->second;
    };
    CoeffMap out;
    for (const MultiIndex& alpha : multi_indices_up_to(dim, max_degree)) {
        if (alpha.is_zero()) continue;
        Rational sum(0);
        for_each_set_partition(
            label_slots(alpha),
            [&](const SetPartition& pi) {
                Rational term(1);
                for (const LabelSet& block : pi.blocks) {
                    term *= value(slot_counts(block, dim));
                    if (term.is_zero()) return;
                }
                sum += term;
            },
            cap);
        if (!sum.is_zero()) out[alpha] = sum;
    }
    return out;
}

CoeffMap cumulants_from_moments(const CoeffMap& moments, int dim, int max_degree,
                                std::size_t cap) {
    auto value = [&](const MultiIndex& mi) -> Rational {
        auto it = moments.find(mi);
        return it == moments.end() ? Rational(0) : it->second;
    };
    CoeffMap out;
    for (const MultiIndex& alpha : multi_indices_up_to(dim, max_degree)) {
        if (alpha.is_zero()) continue;
        Rational sum(0);
        for_each_set_partition(
            label_slots(alpha),
            [&](const SetPartition& pi) {
                Rational term(1);
                for (const LabelSet& block : pi.blocks) {
                    term *= value(slot_counts(block, dim));
                    if (term.is_zero()) return;
                }
                int b = pi.block_count();
                Rational weight = Rational(factorial_int(b - 1));
                if (b % 2 == 0) weight = -weight;
                sum += weight * term;
            },
            cap);
        if (!sum.is_zero()) out[alpha] = sum;
    }
    return out;
}

CommSeries series_reciprocal(const CommSeries& f, std::size_t cap) {
    MultiIndex zero(f.dim());
    if (f.at(zero) != Rational(1))
        throw InvalidArgument("reciprocal requires constant term exactly 1");
    CommSeries out(f.dim(), f.truncation());
    out.set(zero, Rational(1));
    for (const MultiIndex& alpha : multi_indices_up_to(f.dim(), f.truncation())) {
        if (alpha.is_zero()) continue;
        Rational sum(0);
        for_each_set_partition(
            label_slots(alpha),
            [&](const SetPartition& pi) {
                Rational term(1);
                for (const LabelSet& block : pi.blocks) {
                    term *= f.at(slot_counts(block, f.dim()));
                    if (term.is_zero()) return;
                }
                int b = pi.block_count();
                Rational weight = Rational(factorial_int(b));
                if (b % 2 == 1) weight = -weight;
                sum += weight * term;
            },
            cap);
        out.set(alpha, sum);
    }
    return out;
}

ProperTreeCount count_proper_trees(int k, OutdegreeFilter filter, const Caps& caps) {
    if (k < 1) throw InvalidArgument("leaf count must be >= 1");
    ProperTreeCount out{Integer(0), Integer(0)};
    if (k == 1) {
        // The bare leaf, outside the series formula's k >= 2 range.
        out.by_series = 1;
        out.by_enumeration = 1;
        return out;
    }

    // Series route: invert X minus the all-ones (or even-only) tail and read
    // off the divided-power coefficient at degree k.
    CommMap f(1, k);
    f.component(1).set(MultiIndex{1}, Rational(1));
    for (int d = 2; d <= k; ++d)
        if (filter == OutdegreeFilter::All || d % 2 == 0)
            f.component(1).set(MultiIndex{d}, Rational(-1));
    CommMap g = invert_identity_linear(f, InversionPath::Recursive, caps);
    Rational coeff = g.component(1).at(MultiIndex{k});
    if (!coeff.is_integer()) throw InvalidArgument("tree-count coefficient is not an integer");
    out.by_series = coeff.numerator();

    // Enumeration route.
    auto all_outdegrees_even = [](const LabelledTree& t) {
        auto rec = [](auto&& self, const LabelledTree& v) -> bool {
            if (v.is_leaf()) return true;
            if (v.children.size() % 2 != 0) return false;
            for (const LabelledTree& c : v.children)
                if (!self(self, c)) return false;
            return true;
        };
        return rec(rec, t);
    };
    Integer count(0);
    TreeFamilySpec spec{TreeFamily::Proper, 1, 1, MultiIndex{k}, 2, 1};
    for_each_tree(spec,
                  [&](const LabelledTree& t) {
                      if (filter == OutdegreeFilter::All || all_outdegrees_even(t)) ++count;
                  },
                  caps);
    out.by_enumeration = count;

    if (out.by_series != out.by_enumeration)
        throw Error("internal-disagreement",
                    "series and enumeration tree counts disagree at k=" + std::to_string(k));
    return out;
}

} // namespace arbor
