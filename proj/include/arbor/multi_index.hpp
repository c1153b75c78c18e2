#pragma once

#include <compare>
#include <initializer_list>
#include <vector>

#include "arbor/errors.hpp"
#include "arbor/rational.hpp"

namespace arbor {

/// Exponent vector with a fixed number of non-negative entries.
///
/// Positional access (operator[]) is 0-based; anything called "component"
/// in this library (variable numbers, vertex types, word letters) is 1-based.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(int dim) : e_(static_cast<std::size_t>(dim), 0) {
        if (dim < 1) throw InvalidArgument("multi-index dimension must be >= 1");
    }
    MultiIndex(std::initializer_list<int> e) : e_(e) { validate(); }
    explicit MultiIndex(std::vector<int> e) : e_(std::move(e)) { validate(); }

    /// Standard basis vector e_component (component is 1-based).
    static MultiIndex unit(int dim, int component);

    int dim() const { return static_cast<int>(e_.size()); }
    int degree() const;
    int operator[](int pos) const { return e_[static_cast<std::size_t>(pos)]; }
    int component(int c) const { return e_[static_cast<std::size_t>(c - 1)]; }
    const std::vector<int>& exponents() const { return e_; }

    bool is_zero() const { return degree() == 0; }
    /// Returns c when *this == e_c, otherwise 0.
    int unit_component() const;

    MultiIndex incremented(int component) const;
    MultiIndex decremented(int component) const;

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) { return a.e_ <=> b.e_; }

private:
    void validate() const {
        if (e_.empty()) throw InvalidArgument("multi-index dimension must be >= 1");
        for (int v : e_)
            if (v < 0) throw InvalidArgument("multi-index entries must be non-negative");
    }

    std::vector<int> e_;
};

/// Canonical iteration/serialization order: degree ascending, then exponent
/// vectors lexicographically descending, so that degree-1 indices come out
/// as e_1, e_2, ..., e_N.
struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

bool componentwise_leq(const MultiIndex& a, const MultiIndex& b);
MultiIndex add(const MultiIndex& a, const MultiIndex& b);
MultiIndex subtract(const MultiIndex& a, const MultiIndex& b);

/// alpha! = prod_i alpha_i!
Integer factorial(const MultiIndex& alpha);
/// prod_i C(a_i, b_i); requires b <= a componentwise.
Integer binomial(const MultiIndex& a, const MultiIndex& b);

/// All multi-indices of dimension `dim` with degree <= max_degree, in the
/// canonical graded order. The result has C(dim + max_degree, max_degree)
/// entries.
std::vector<MultiIndex> multi_indices_up_to(int dim, int max_degree);

} // namespace arbor
