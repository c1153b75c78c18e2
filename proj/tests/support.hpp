#pragma once

#include <random>
#include <vector>

#include "arbor/apps.hpp"
#include "arbor/comm_series.hpp"
#include "arbor/free_series.hpp"

namespace testsupport {

using namespace arbor;

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int num_range = 4, int den_range = 3) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_range);
    return Rational(num(rng), den(rng));
}

enum class LinearKind { Identity, RandomInvertible, Zero };

inline RationalMatrix random_invertible_matrix(Rng& rng, int dim) {
    std::uniform_int_distribution<int> entry(-2, 2);
    for (;;) {
        RationalMatrix m(dim);
        for (int i = 1; i <= dim; ++i)
            for (int j = 1; j <= dim; ++j) m.at(i, j) = Rational(entry(rng));
        if (m.inverse()) return m;
    }
}

/// Sparse random map with zero constant term and the requested linear part.
inline CommMap random_comm_map(Rng& rng, int dim, int trunc, LinearKind kind,
                               double density = 0.6) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    CommMap f(dim, trunc);
    for (int i = 1; i <= dim; ++i)
        for (const MultiIndex& alpha : multi_indices_up_to(dim, trunc)) {
            if (alpha.degree() < 2) continue;
            if (coin(rng) < density) f.component(i).set(alpha, random_rational(rng));
        }
    if (kind == LinearKind::Identity) {
        for (int i = 1; i <= dim; ++i)
            f.component(i).set(MultiIndex::unit(dim, i), Rational(1));
    } else if (kind == LinearKind::RandomInvertible) {
        RationalMatrix p = random_invertible_matrix(rng, dim);
        for (int i = 1; i <= dim; ++i)
            for (int j = 1; j <= dim; ++j)
                f.component(i).set(MultiIndex::unit(dim, j), p.at(i, j));
    }
    return f;
}

inline FreeMap random_free_map(Rng& rng, int dim, int trunc, LinearKind kind,
                               double density = 0.5) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    FreeMap f(dim, trunc);
    for (int i = 1; i <= dim; ++i)
        for (const Word& w : words_up_to(dim, trunc)) {
            if (w.length() < 2) continue;
            if (coin(rng) < density) f.component(i).set(w, random_rational(rng));
        }
    if (kind == LinearKind::Identity) {
        for (int i = 1; i <= dim; ++i) f.component(i).set(Word::single(i), Rational(1));
    } else if (kind == LinearKind::RandomInvertible) {
        RationalMatrix p = random_invertible_matrix(rng, dim);
        for (int i = 1; i <= dim; ++i)
            for (int j = 1; j <= dim; ++j) f.component(i).set(Word::single(j), p.at(i, j));
    }
    return f;
}

/// Plain Taylor coefficients of (1 + c y)^(1/2) up to degree max_degree:
/// a_k = C(1/2, k) c^k, by the generalized binomial series.
inline std::vector<Rational> sqrt_taylor(const Rational& c, int max_degree) {
    std::vector<Rational> out;
    Rational binom(1);
    Rational cpow(1);
    for (int k = 0; k <= max_degree; ++k) {
        out.push_back(binom * cpow);
        binom *= (Rational(1, 2) - Rational(k)) / Rational(k + 1);
        cpow *= c;
    }
    return out;
}

/// Bell numbers by the recurrence B(n+1) = sum_k C(n,k) B(k).
inline std::vector<Integer> bell_by_recurrence(int up_to) {
    std::vector<Integer> b{Integer(1)};
    for (int n = 0; n < up_to; ++n) {
        Integer next(0);
        for (int k = 0; k <= n; ++k) next += binomial_int(n, k) * b[static_cast<std::size_t>(k)];
        b.push_back(next);
    }
    return b;
}

/// Probabilists' Hermite polynomials by He_{k+1} = x He_k - k He_{k-1}.
inline Polynomial hermite_by_recurrence(int k) {
    Polynomial prev; // He_0 = 1
    prev.set(0, Rational(1));
    if (k == 0) return prev;
    Polynomial cur; // He_1 = x
    cur.set(1, Rational(1));
    for (int n = 1; n < k; ++n) {
        Polynomial next;
        for (const auto& [d, v] : cur.coeffs()) next.add_to(d + 1, v);
        for (const auto& [d, v] : prev.coeffs()) next.add_to(d, Rational(-n) * v);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// One-dimensional map x - sum_{k>=2} h_k/k! x^k from tail coefficients
/// h_2, h_3, ... (index 0 of `tail` is h_2).
inline CommMap one_dim_map(const std::vector<Rational>& tail, int trunc) {
    CommMap f(1, trunc);
    f.component(1).set(MultiIndex{1}, Rational(1));
    for (std::size_t t = 0; t < tail.size(); ++t) {
        int k = static_cast<int>(t) + 2;
        if (k <= trunc) f.component(1).set(MultiIndex{k}, -tail[t]);
    }
    return f;
}

} // namespace testsupport
