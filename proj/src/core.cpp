#include <algorithm>
#include <cctype>

#include "arbor/matrix.hpp"
#include "arbor/multi_index.hpp"
#include "arbor/partitions.hpp"
#include "arbor/rational.hpp"
#include "arbor/word.hpp"

namespace arbor {

// ---------------------------------------------------------------------------
// Integers and rationals
// ---------------------------------------------------------------------------

Integer factorial_int(int n) {
    if (n < 0) throw InvalidArgument("factorial of negative integer");
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Integer binomial_int(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Rational Rational::parse(std::string_view s) {
    // Strict canonical grammar: -?digits(/digits)?  with a positive
    // denominator part. Non-lowest-terms input is normalized.
    auto fail = [&] { throw MalformedInput("cannot parse rational: \"" + std::string(s) + "\""); };
    if (s.empty()) fail();
    std::size_t pos = 0;
    if (s[pos] == '-') ++pos;
    std::size_t num_begin = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == num_begin) fail();
    Integer num(std::string(s.substr(0, pos)), 10);
    Integer den(1);
    if (pos < s.size()) {
        if (s[pos] != '/') fail();
        ++pos;
        std::size_t den_begin = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == den_begin || pos != s.size()) fail();
        den = Integer(std::string(s.substr(den_begin)), 10);
        if (den == 0) fail();
    }
    return Rational(num, den);
}

// ---------------------------------------------------------------------------
// Multi-indices
// ---------------------------------------------------------------------------

MultiIndex MultiIndex::unit(int dim, int component) {
    MultiIndex m(dim);
    if (component < 1 || component > dim)
        throw InvalidArgument("unit multi-index component out of range");
    m.e_[static_cast<std::size_t>(component - 1)] = 1;
    return m;
}

int MultiIndex::degree() const {
    int d = 0;
    for (int v : e_) d += v;
    return d;
}

int MultiIndex::unit_component() const {
    int comp = 0;
    for (int c = 1; c <= dim(); ++c) {
        if (component(c) == 0) continue;
        if (component(c) > 1 || comp != 0) return 0;
        comp = c;
    }
    return comp;
}

MultiIndex MultiIndex::incremented(int component) const {
    MultiIndex m = *this;
    m.e_[static_cast<std::size_t>(component - 1)] += 1;
    return m;
}

MultiIndex MultiIndex::decremented(int component) const {
    MultiIndex m = *this;
    int& v = m.e_[static_cast<std::size_t>(component - 1)];
    if (v == 0) throw InvalidArgument("cannot decrement zero exponent");
    v -= 1;
    return m;
}

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.exponents() > b.exponents();
}

bool componentwise_leq(const MultiIndex& a, const MultiIndex& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("multi-index dimensions differ");
    for (int p = 0; p < a.dim(); ++p)
        if (a[p] > b[p]) return false;
    return true;
}

MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("multi-index dimensions differ");
    std::vector<int> e(a.exponents());
    for (int p = 0; p < b.dim(); ++p) e[static_cast<std::size_t>(p)] += b[p];
    return MultiIndex(std::move(e));
}

MultiIndex subtract(const MultiIndex& a, const MultiIndex& b) {
    if (!componentwise_leq(b, a)) throw InvalidArgument("multi-index subtraction underflow");
    std::vector<int> e(a.exponents());
    for (int p = 0; p < b.dim(); ++p) e[static_cast<std::size_t>(p)] -= b[p];
    return MultiIndex(std::move(e));
}

Integer factorial(const MultiIndex& alpha) {
    Integer r(1);
    for (int p = 0; p < alpha.dim(); ++p) r *= factorial_int(alpha[p]);
    return r;
}

Integer binomial(const MultiIndex& a, const MultiIndex& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("multi-index dimensions differ");
    Integer r(1);
    for (int p = 0; p < a.dim(); ++p) r *= binomial_int(a[p], b[p]);
    return r;
}

namespace {

void fill_degree(std::vector<int>& e, std::size_t pos, int remaining,
                 std::vector<MultiIndex>& out) {
    if (pos + 1 == e.size()) {
        e[pos] = remaining;
        out.emplace_back(e);
        return;
    }
    // Larger leading exponents first: within a degree this realizes the
    // canonical order e_1, e_2, ..., e_N, e_1^2, e_1 e_2, ...
    for (int v = remaining; v >= 0; --v) {
        e[pos] = v;
        fill_degree(e, pos + 1, remaining - v, out);
    }
    e[pos] = 0;
}

} // namespace

std::vector<MultiIndex> multi_indices_up_to(int dim, int max_degree) {
    if (dim < 1) throw InvalidArgument("dimension must be >= 1");
    if (max_degree < 0) throw InvalidArgument("max degree must be >= 0");
    std::vector<MultiIndex> out;
    std::vector<int> e(static_cast<std::size_t>(dim), 0);
    for (int d = 0; d <= max_degree; ++d) fill_degree(e, 0, d, out);
    return out;
}

// ---------------------------------------------------------------------------
// Label sets and set partitions
// ---------------------------------------------------------------------------

LabelSet label_slots(const MultiIndex& alpha) {
    LabelSet s;
    s.reserve(static_cast<std::size_t>(alpha.degree()));
    for (int c = 1; c <= alpha.dim(); ++c)
        for (int a = 1; a <= alpha.component(c); ++a) s.push_back({c, a});
    return s;
}

MultiIndex slot_counts(const LabelSet& s, int dim) {
    MultiIndex m(dim);
    for (const LabelSlot& slot : s) {
        if (slot.component < 1 || slot.component > dim)
            throw InvalidArgument("label slot component out of range");
        m = m.incremented(slot.component);
    }
    return m;
}

namespace {

void partitions_rec(const LabelSet& ground, std::size_t next, SetPartition& partial,
                    const std::function<void(const SetPartition&)>& fn) {
    if (next == ground.size()) {
        fn(partial);
        return;
    }
    // Elements are placed in ascending order, so blocks stay sorted and are
    // created in order of their least elements. Deeper levels append blocks
    // to the same vector, so iterate by index.
    for (std::size_t b = 0; b < partial.blocks.size(); ++b) {
        partial.blocks[b].push_back(ground[next]);
        partitions_rec(ground, next + 1, partial, fn);
        partial.blocks[b].pop_back();
    }
    partial.blocks.push_back({ground[next]});
    partitions_rec(ground, next + 1, partial, fn);
    partial.blocks.pop_back();
}

} // namespace

void for_each_set_partition(const LabelSet& ground,
                            const std::function<void(const SetPartition&)>& fn,
                            std::size_t cap) {
    if (ground.size() > cap)
        throw ResourceLimit("set-partition ground set of size " + std::to_string(ground.size()) +
                            " exceeds cap " + std::to_string(cap));
    SetPartition partial;
    partitions_rec(ground, 0, partial, fn);
}

std::vector<SetPartition> set_partitions(const LabelSet& ground, std::size_t cap) {
    std::vector<SetPartition> out;
    for_each_set_partition(ground, [&](const SetPartition& p) { out.push_back(p); }, cap);
    return out;
}

namespace {

void decompositions_rec(const LabelSet& ground, std::size_t next, std::vector<LabelSet>& parts,
                        const std::function<void(const std::vector<LabelSet>&)>& fn) {
    if (next == ground.size()) {
        fn(parts);
        return;
    }
    for (auto& part : parts) {
        part.push_back(ground[next]);
        decompositions_rec(ground, next + 1, parts, fn);
        part.pop_back();
    }
}

} // namespace

void for_each_ordered_decomposition(const LabelSet& ground, int parts,
                                    const std::function<void(const std::vector<LabelSet>&)>& fn,
                                    std::size_t cap) {
    if (parts < 1) throw InvalidArgument("decomposition needs at least one part");
    if (ground.size() > cap)
        throw ResourceLimit("decomposition ground set of size " + std::to_string(ground.size()) +
                            " exceeds cap " + std::to_string(cap));
    std::vector<LabelSet> slots(static_cast<std::size_t>(parts));
    decompositions_rec(ground, 0, slots, fn);
}

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

MultiIndex Word::abelianization(int dim) const {
    MultiIndex m(dim);
    for (int x : l_) {
        if (x > dim) throw InvalidArgument("word letter exceeds dimension");
        m = m.incremented(x);
    }
    return m;
}

int Word::max_letter() const {
    int m = 0;
    for (int x : l_) m = std::max(m, x);
    return m;
}

std::vector<Word> words_up_to(int dim, int max_length) {
    if (dim < 1) throw InvalidArgument("dimension must be >= 1");
    if (max_length < 0) throw InvalidArgument("max length must be >= 0");
    std::vector<Word> out;
    out.push_back(Word::empty());
    std::size_t first = 0;
    for (int len = 1; len <= max_length; ++len) {
        std::size_t last = out.size();
        for (std::size_t k = first; k < last; ++k)
            if (out[k].length() == len - 1)
                for (int letter = 1; letter <= dim; ++letter)
                    out.push_back(out[k].appended(letter));
        first = last;
    }
    std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
        return LengthLexLess{}(a, b);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Rational matrices
// ---------------------------------------------------------------------------

RationalMatrix RationalMatrix::multiply(const RationalMatrix& o) const {
    if (n_ != o.n_) throw DimensionMismatch("matrix sizes differ");
    RationalMatrix r(n_);
    for (int i = 1; i <= n_; ++i)
        for (int k = 1; k <= n_; ++k) {
            const Rational& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 1; j <= n_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

std::optional<RationalMatrix> RationalMatrix::inverse() const {
    RationalMatrix a = *this;
    RationalMatrix inv = RationalMatrix::identity(n_);
    for (int col = 1; col <= n_; ++col) {
        int pivot = 0;
        for (int row = col; row <= n_; ++row)
            if (!a.at(row, col).is_zero()) {
                pivot = row;
                break;
            }
        if (pivot == 0) return std::nullopt;
        if (pivot != col)
            for (int j = 1; j <= n_; ++j) {
                std::swap(a.at(pivot, j), a.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        Rational p = a.at(col, col);
        for (int j = 1; j <= n_; ++j) {
            a.at(col, j) /= p;
            inv.at(col, j) /= p;
        }
        for (int row = 1; row <= n_; ++row) {
            if (row == col) continue;
            Rational f = a.at(row, col);
            if (f.is_zero()) continue;
            for (int j = 1; j <= n_; ++j) {
                a.at(row, j) -= f * a.at(col, j);
                inv.at(row, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

} // namespace arbor
