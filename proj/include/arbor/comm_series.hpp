#pragma once

#include <map>
#include <optional>
#include <vector>

#include "arbor/matrix.hpp"
#include "arbor/multi_index.hpp"
#include "arbor/trees.hpp"

namespace arbor {

/// Truncated power series in N commuting variables, coefficients stored in
/// divided-power form: the series is sum_alpha (c_alpha / alpha!) X^alpha.
/// Sparse normalized: zero coefficients are never stored, every stored key
/// has degree <= truncation.
class CommSeries {
public:
    CommSeries() = default;
    CommSeries(int dim, int truncation);

    int dim() const { return dim_; }
    int truncation() const { return trunc_; }

    /// Divided-power coefficient at alpha (zero when absent).
    const Rational& at(const MultiIndex& alpha) const;
    void set(const MultiIndex& alpha, const Rational& v);
    void add_to(const MultiIndex& alpha, const Rational& v);

    bool is_zero() const { return c_.empty(); }
    const std::map<MultiIndex, Rational, GradedLexLess>& coeffs() const { return c_; }

    /// Largest degree carrying a nonzero coefficient (0 for the zero series).
    int max_degree() const;

    /// Copy with truncation lowered to `t` (coefficients above dropped).
    CommSeries truncated(int t) const;

    friend bool operator==(const CommSeries&, const CommSeries&) = default;

private:
    int dim_ = 1;
    int trunc_ = 0;
    std::map<MultiIndex, Rational, GradedLexLess> c_;
};

CommSeries series_add(const CommSeries& f, const CommSeries& g);
CommSeries series_scale(const Rational& c, const CommSeries& f);

/// Divided-power product: (fg)_alpha = sum_{beta <= alpha} C(alpha,beta)
/// f_beta g_{alpha-beta}, truncated to min(D_f, D_g).
CommSeries series_mul(const CommSeries& f, const CommSeries& g);

/// N-tuple of series sharing dimension and truncation.
class CommMap {
public:
    CommMap() = default;
    CommMap(int dim, int truncation);
    explicit CommMap(std::vector<CommSeries> components);

    static CommMap identity(int dim, int truncation);
    /// The linear map X -> M X as a CommMap.
    static CommMap linear(const RationalMatrix& m, int truncation);

    int dim() const { return dim_; }
    int truncation() const { return trunc_; }

    const CommSeries& component(int i) const { return comp_[static_cast<std::size_t>(i - 1)]; }
    CommSeries& component(int i) { return comp_[static_cast<std::size_t>(i - 1)]; }

    bool has_zero_constant_term() const;

    CommMap truncated(int t) const;

    friend bool operator==(const CommMap&, const CommMap&) = default;

private:
    int dim_ = 1;
    int trunc_ = 0;
    std::vector<CommSeries> comp_;
};

/// The matrix (F_{i, e_j}) of linear-term coefficients.
RationalMatrix jacobian_linear_term(const CommMap& f);

/// Composition by direct monomial substitution of G into F, exact up to the
/// common truncation. Requires G to have zero constant term.
CommMap compose_direct(const CommMap& f, const CommMap& g);

/// Chain composition via the Faa di Bruno sum over final labelled trees with
/// one generation per map. Requires every map in the chain to have zero
/// constant term and the target degree to fit the enumeration cap. Agrees
/// exactly with folding compose_direct.
CommMap compose_fdb(const std::vector<CommMap>& chain, const Caps& caps = {});

enum class InversionPath {
    /// Explicit sum of energies over proper labelled trees.
    TreeSum,
    /// Memoized degree-by-degree recursion (fast path).
    Recursive,
};

/// Compositional inverse of F when F(0) = 0 and the linear term is the
/// identity. Both paths agree exactly. A non-identity linear term raises
/// invalid-argument (use invert_general).
CommMap invert_identity_linear(const CommMap& f, InversionPath path = InversionPath::Recursive,
                               const Caps& caps = {});

enum class GeneralInversionPath {
    /// Direct sum of alternating energies over alternating labelled trees.
    AlternatingSum,
    /// Conjugate by the inverse linear term, invert, compose back.
    Reduction,
};

/// Compositional inverse of F when F(0) = 0 and the linear term P is
/// invertible; the inverse has linear term P^{-1}. Singular P raises
/// singular-linear-term. Both paths agree exactly.
CommMap invert_general(const CommMap& f,
                       GeneralInversionPath path = GeneralInversionPath::Reduction,
                       const Caps& caps = {});

/// The involution on nonlinear coefficient tables: maps the table H of
/// F = X - sum H/alpha! X^alpha to the corresponding table of the inverse.
/// Entries of degree < 2 raise invalid-argument. Applying it twice gives the
/// original table back, exactly.
CoeffTable phi_involution(const CoeffTable& h, int dim, int truncation, const Caps& caps = {});

enum class FernPath { MatrixPower, FernSum };

struct FernWitness {
    int i = 0;
    int j = 0;
    MultiIndex alpha;
    Rational value;

    friend bool operator==(const FernWitness&, const FernWitness&) = default;
};

struct FernCheckReport {
    bool nilpotent = false;
    std::optional<FernWitness> witness;
};

/// Decides whether J(H)^m vanishes identically, for a polynomial map H with
/// only degree >= 2 terms. MatrixPower forms the Jacobian with truncated
/// polynomial entries and tests the m-th power; FernSum tests vanishing of
/// all fern energy sums with |alpha| <= degree_bound. Exactness requires
/// degree_bound >= m*(delta - 1) where delta is the maximal monomial degree
/// of H; smaller bounds raise invalid-argument. On failure the report
/// carries the first nonzero entry (i, j, alpha) in scan order.
FernCheckReport fern_nilpotency_check(const CommMap& h, int m, FernPath path, int degree_bound,
                                      const Caps& caps = {});

} // namespace arbor
