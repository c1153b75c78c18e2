#pragma once

#include <optional>
#include <vector>

#include "arbor/rational.hpp"

namespace arbor {

/// Dense N x N matrix of rationals. Indices are 1-based.
class RationalMatrix {
public:
    RationalMatrix() = default;
    explicit RationalMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

    static RationalMatrix identity(int n) {
        RationalMatrix m(n);
        for (int i = 1; i <= n; ++i) m.at(i, i) = Rational(1);
        return m;
    }

    int size() const { return n_; }

    Rational& at(int i, int j) { return a_[idx(i, j)]; }
    const Rational& at(int i, int j) const { return a_[idx(i, j)]; }

    bool is_identity() const {
        for (int i = 1; i <= n_; ++i)
            for (int j = 1; j <= n_; ++j)
                if (at(i, j) != Rational(i == j ? 1 : 0)) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    RationalMatrix multiply(const RationalMatrix& o) const;

    /// Exact inverse via Gauss-Jordan elimination; nullopt when singular.
    std::optional<RationalMatrix> inverse() const;

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i - 1) * n_ + static_cast<std::size_t>(j - 1);
    }

    int n_ = 0;
    std::vector<Rational> a_;
};

} // namespace arbor
