#pragma once

#include <map>
#include <vector>

#include "arbor/comm_series.hpp"
#include "arbor/matrix.hpp"
#include "arbor/trees.hpp"
#include "arbor/word.hpp"

namespace arbor {

/// Truncated power series in N non-commuting variables with commuting
/// rational coefficients. Word coefficients are plain (no factorial
/// normalization). Sparse normalized, words of length <= truncation.
class FreeSeries {
public:
    FreeSeries() = default;
    FreeSeries(int dim, int truncation);

    int dim() const { return dim_; }
    int truncation() const { return trunc_; }

    const Rational& at(const Word& w) const;
    void set(const Word& w, const Rational& v);
    void add_to(const Word& w, const Rational& v);

    bool is_zero() const { return c_.empty(); }
    const std::map<Word, Rational, LengthLexLess>& coeffs() const { return c_; }

    FreeSeries truncated(int t) const;

    friend bool operator==(const FreeSeries&, const FreeSeries&) = default;

private:
    int dim_ = 1;
    int trunc_ = 0;
    std::map<Word, Rational, LengthLexLess> c_;
};

FreeSeries free_add(const FreeSeries& f, const FreeSeries& g);
FreeSeries free_scale(const Rational& c, const FreeSeries& f);

/// Concatenation convolution: (fg)_kappa = sum over prefix/suffix splits of
/// kappa of f_prefix g_suffix, truncated to min(D_f, D_g).
FreeSeries free_mul(const FreeSeries& f, const FreeSeries& g);

class FreeMap {
public:
    FreeMap() = default;
    FreeMap(int dim, int truncation);
    explicit FreeMap(std::vector<FreeSeries> components);

    static FreeMap identity(int dim, int truncation);
    static FreeMap linear(const RationalMatrix& m, int truncation);

    int dim() const { return dim_; }
    int truncation() const { return trunc_; }

    const FreeSeries& component(int i) const { return comp_[static_cast<std::size_t>(i - 1)]; }
    FreeSeries& component(int i) { return comp_[static_cast<std::size_t>(i - 1)]; }

    bool has_zero_constant_term() const;

    friend bool operator==(const FreeMap&, const FreeMap&) = default;

private:
    int dim_ = 1;
    int trunc_ = 0;
    std::vector<FreeSeries> comp_;
};

/// The matrix (F_{i,(j)}) of length-1 word coefficients.
RationalMatrix free_jacobian_at_zero(const FreeMap& f);

/// Composition by substituting the components of G for the letters of each
/// monomial of F. Requires G to have zero constant term.
FreeMap free_compose_direct(const FreeMap& f, const FreeMap& g);

/// Chain composition via the sum over final labelled planar trees.
FreeMap free_compose_fdb(const std::vector<FreeMap>& chain, const Caps& caps = {});

/// Compositional inverse when the linear term is the identity; tree path
/// sums planar proper-tree energies, recursive path memoizes over words.
FreeMap free_invert(const FreeMap& f, InversionPath path = InversionPath::Recursive,
                    const Caps& caps = {});

/// Compositional inverse for an invertible linear term P; the inverse has
/// linear term P^{-1}. Alternating-planar path and reduction path agree.
FreeMap free_invert_general(const FreeMap& f,
                            GeneralInversionPath path = GeneralInversionPath::Reduction,
                            const Caps& caps = {});

/// Letter-deletion derivation: each occurrence of letter j in a word is
/// deleted in turn and the results summed. Exact through word length
/// truncation(f) - 1, which is the truncation of the result.
FreeSeries hausdorff_derivative(const FreeSeries& f, int j);

/// Collapse words to multi-indices: the divided-power coefficient at alpha
/// is alpha! times the sum of word coefficients abelianizing to alpha.
CommSeries abelianize(const FreeSeries& f);
CommMap abelianize(const FreeMap& f);

} // namespace arbor
