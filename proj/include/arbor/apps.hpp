#pragma once

#include <map>

#include "arbor/comm_series.hpp"
#include "arbor/multi_index.hpp"
#include "arbor/partitions.hpp"
#include "arbor/rational.hpp"

namespace arbor {

/// Sparse polynomial in one variable.
class Polynomial {
public:
    Polynomial() = default;

    const Rational& at(int degree) const;
    void set(int degree, const Rational& v);
    void add_to(int degree, const Rational& v);

    int degree() const { return c_.empty() ? 0 : c_.rbegin()->first; }
    const std::map<int, Rational>& coeffs() const { return c_; }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::map<int, Rational> c_;
};

/// Stirling number of the second kind: partitions of [k] into j blocks,
/// counted by direct enumeration.
Integer stirling2(int k, int j, std::size_t cap = kDefaultPartitionCap);
/// Bell number: all partitions of [k].
Integer bell_number(int k, std::size_t cap = kDefaultPartitionCap);

/// Probabilists' Hermite polynomial He_k via its matching-polynomial
/// representation over set partitions (blocks of size >= 3 contribute 0).
Polynomial hermite_polynomial(int k, std::size_t cap = kDefaultPartitionCap);

/// Coefficient table indexed by nonzero multi-indices (divided-power values).
using CoeffMap = std::map<MultiIndex, Rational, GradedLexLess>;

/// m_alpha = sum over partitions of [alpha] of prod_blocks kappa_{#block}.
CoeffMap moments_from_cumulants(const CoeffMap& cumulants, int dim, int max_degree,
                                std::size_t cap = kDefaultPartitionCap);
/// kappa_alpha = sum over partitions of (-1)^{#pi-1} (#pi-1)! prod m_{#block}.
CoeffMap cumulants_from_moments(const CoeffMap& moments, int dim, int max_degree,
                                std::size_t cap = kDefaultPartitionCap);

/// Multiplicative inverse of a series with constant term 1, via the signed
/// partition sum; satisfies series_mul(f, result) = 1 up to the truncation.
CommSeries series_reciprocal(const CommSeries& f, std::size_t cap = kDefaultPartitionCap);

enum class OutdegreeFilter { All, EvenOnly };

struct ProperTreeCount {
    Integer by_series;
    Integer by_enumeration;
};

/// Number of proper trees with k labelled leaves (one dimension), computed
/// independently by series inversion and by direct tree enumeration; the two
/// values must agree. EvenOnly restricts to trees whose internal vertices
/// all have an even number of children.
ProperTreeCount count_proper_trees(int k, OutdegreeFilter filter, const Caps& caps = {});

} // namespace arbor
