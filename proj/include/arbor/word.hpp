#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "arbor/errors.hpp"
#include "arbor/multi_index.hpp"

namespace arbor {

/// Finite word over the alphabet {1, ..., N}. The empty word indexes the
/// constant coefficient of a free power series.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<int> letters) : l_(letters) { validate(); }
    explicit Word(std::vector<int> letters) : l_(std::move(letters)) { validate(); }

    static Word empty() { return Word(); }
    static Word single(int letter) { return Word({letter}); }

    int length() const { return static_cast<int>(l_.size()); }
    bool is_empty() const { return l_.empty(); }
    int operator[](int pos) const { return l_[static_cast<std::size_t>(pos)]; }
    const std::vector<int>& letters() const { return l_; }

    /// Letters at positions [from, to), as a word.
    Word sub(int from, int to) const {
        return Word(std::vector<int>(l_.begin() + from, l_.begin() + to));
    }

    Word concat(const Word& o) const {
        std::vector<int> r = l_;
        r.insert(r.end(), o.l_.begin(), o.l_.end());
        return Word(std::move(r));
    }

    Word appended(int letter) const {
        std::vector<int> r = l_;
        r.push_back(letter);
        return Word(std::move(r));
    }

    /// The word with the letter at `pos` removed.
    Word erased(int pos) const {
        std::vector<int> r = l_;
        r.erase(r.begin() + pos);
        return Word(std::move(r));
    }

    /// Multi-index counting letter occurrences per component.
    MultiIndex abelianization(int dim) const;

    int max_letter() const;

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word& a, const Word& b) { return a.l_ <=> b.l_; }

private:
    void validate() const {
        for (int x : l_)
            if (x < 1) throw InvalidArgument("word letters must be >= 1");
    }

    std::vector<int> l_;
};

/// Canonical order for word-indexed coefficient maps: length ascending,
/// then lexicographic.
struct LengthLexLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.length() != b.length()) return a.length() < b.length();
        return a.letters() < b.letters();
    }
};

/// All words over {1..dim} of length <= max_length, canonical order.
std::vector<Word> words_up_to(int dim, int max_length);

} // namespace arbor
