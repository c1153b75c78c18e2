#include <doctest.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "arbor/trees.hpp"

#include "support.hpp"

using namespace arbor;

namespace {

// Root with three subtrees: a 3-leaf node, a 2-leaf node, and a bare leaf
// (all types 1); its energy is h_2 h_3^2.
LabelledTree three_two_one_tree() {
    auto leaf = [](int a) { return make_leaf(1, LabelSlot{1, a}); };
    LabelledTree inner3 = make_node(1, {leaf(5), leaf(1), leaf(2)});
    LabelledTree inner2 = make_node(1, {leaf(3), leaf(6)});
    return make_node(1, {inner3, inner2, leaf(4)});
}

std::set<std::string> encodings(const std::vector<LabelledTree>& trees) {
    std::set<std::string> out;
    for (const LabelledTree& t : trees) out.insert(canonical_encode(t));
    return out;
}

} // namespace

TEST_CASE("canonical encoding identifies isomorphism classes") {
    auto l1 = make_leaf(1, LabelSlot{1, 1});
    auto l2 = make_leaf(1, LabelSlot{1, 2});
    CHECK(canonical_encode(make_leaf(2, LabelSlot{2, 1})) ==
          canonical_encode(make_leaf(2, LabelSlot{2, 1})));

    // Insertion order of unordered children does not matter.
    CHECK(canonical_encode(make_node(1, {l1, l2})) == canonical_encode(make_node(1, {l2, l1})));

    // Labels are part of the class: swapping two leaf labels changes it.
    auto a = make_node(1, {make_node(1, {l1, l2}), make_leaf(1, LabelSlot{1, 4})});
    auto b = make_node(1, {make_node(1, {make_leaf(1, LabelSlot{1, 4}), l2}), l1});
    CHECK(canonical_encode(a) != canonical_encode(b));
}

TEST_CASE("final trees of length 2 correspond to set partitions") {
    auto bell = testsupport::bell_by_recurrence(6);
    for (int k = 1; k <= 6; ++k) {
        TreeFamilySpec spec{TreeFamily::Final, 1, 1, MultiIndex{k}, 2, 1};
        auto trees = enumerate_trees(spec);
        CHECK(Integer(static_cast<long>(trees.size())) == bell[static_cast<std::size_t>(k)]);
        CHECK(encodings(trees).size() == trees.size());
    }
    // k = 4 gives the 15 two-generation trees.
    TreeFamilySpec spec{TreeFamily::Final, 1, 1, MultiIndex{4}, 2, 1};
    CHECK(enumerate_trees(spec).size() == 15);
}

TEST_CASE("final trees degenerate cases") {
    // m = 0 demands a single leaf matching the root type.
    TreeFamilySpec ok{TreeFamily::Final, 2, 2, MultiIndex::unit(2, 2), 0, 1};
    CHECK(enumerate_trees(ok).size() == 1);
    TreeFamilySpec mismatch{TreeFamily::Final, 2, 1, MultiIndex::unit(2, 2), 0, 1};
    CHECK(enumerate_trees(mismatch).empty());
    TreeFamilySpec toomany{TreeFamily::Final, 1, 1, MultiIndex{2}, 0, 1};
    CHECK(enumerate_trees(toomany).empty());

    // Single leaf through m generations: one chain per interior typing.
    TreeFamilySpec chain{TreeFamily::Final, 3, 2, MultiIndex::unit(3, 1), 3, 1};
    CHECK(enumerate_trees(chain).size() == 9);
}

TEST_CASE("proper tree enumeration") {
    TreeFamilySpec one{TreeFamily::Proper, 1, 1, MultiIndex{1}, 2, 1};
    auto single = enumerate_trees(one);
    REQUIRE(single.size() == 1);
    CHECK(single.front().is_leaf());

    // One-dimensional counts, distinct representatives.
    std::vector<std::size_t> expected = {1, 1, 4, 26, 236};
    for (int k = 1; k <= 5; ++k) {
        TreeFamilySpec spec{TreeFamily::Proper, 1, 1, MultiIndex{k}, 2, 1};
        auto trees = enumerate_trees(spec);
        CHECK(trees.size() == expected[static_cast<std::size_t>(k - 1)]);
        CHECK(encodings(trees).size() == trees.size());
        for (const LabelledTree& t : trees) CHECK(leaf_count(t) == k);
    }

    // The 3-2-1 shape above appears among the 6-leaf proper trees.
    TreeFamilySpec six{TreeFamily::Proper, 1, 1, MultiIndex{6}, 2, 1};
    CHECK(encodings(enumerate_trees(six)).count(canonical_encode(three_two_one_tree())) == 1);

    TreeFamilySpec big{TreeFamily::Proper, 1, 1, MultiIndex{9}, 2, 1};
    CHECK_THROWS_AS(enumerate_trees(big), ResourceLimit);
}

TEST_CASE("the family is stable under type-preserving relabeling") {
    // Reversing the copy indices within each component maps the family onto
    // itself: same encode set, same size.
    MultiIndex alpha{2, 3};
    TreeFamilySpec spec{TreeFamily::Proper, 2, 1, alpha, 2, 1};
    auto trees = enumerate_trees(spec);
    REQUIRE(!trees.empty());

    auto relabel = [&](const LabelledTree& t) {
        auto rec = [&](auto&& self, const LabelledTree& v) -> LabelledTree {
            if (v.is_leaf()) {
                if (!v.label) return v;
                LabelSlot s = *v.label;
                s.index = alpha.component(s.component) + 1 - s.index;
                return make_leaf(v.type, s);
            }
            std::vector<LabelledTree> children;
            for (const LabelledTree& c : v.children) children.push_back(self(self, c));
            return make_node(v.type, std::move(children));
        };
        return rec(rec, t);
    };

    std::set<std::string> original = encodings(trees);
    std::set<std::string> mapped;
    for (const LabelledTree& t : trees) mapped.insert(canonical_encode(relabel(t)));
    CHECK(mapped == original);
}

TEST_CASE("tree energy") {
    CoeffTable h;
    h.set(1, MultiIndex{2}, Rational(5));
    h.set(1, MultiIndex{3}, Rational(2));

    CHECK(tree_energy(make_leaf(1, LabelSlot{1, 1}), h, 1) == Rational(1));
    CHECK(tree_energy(three_two_one_tree(), h, 1) == Rational(20)); // 5 * 2^2

    // Strict tables report the missing pair.
    LabelledTree pair = make_node(2, {make_leaf(1, LabelSlot{1, 1}), make_leaf(1, LabelSlot{1, 2})});
    CHECK_THROWS_AS(tree_energy(pair, h, 2), MissingCoefficient);
    try {
        tree_energy(pair, h, 2);
    } catch (const MissingCoefficient& e) {
        CHECK(std::string(e.what()).find("type=2") != std::string::npos);
        CHECK(std::string(e.what()).find("(2,0)") != std::string::npos);
    }

    // Binary proper trees with 3 leaves: three of them, each with energy 1
    // when h_2 = 1.
    CoeffTable binary_only = CoeffTable::zero_extended();
    binary_only.set(1, MultiIndex{2}, Rational(1));
    TreeFamilySpec spec{TreeFamily::Proper, 1, 1, MultiIndex{3}, 2, 1};
    Rational sum(0);
    int binary = 0;
    for (const LabelledTree& t : enumerate_trees(spec)) {
        Rational be = tree_energy(t, binary_only, 1);
        if (!be.is_zero()) ++binary;
        sum += be;
    }
    CHECK(binary == 3);
    CHECK(sum == Rational(3));
}

TEST_CASE("alternating trees and their energy") {
    // Smallest alternating tree: root -> leaf, energy Q[i, j].
    RationalMatrix q(2);
    q.at(1, 1) = Rational(1, 2);
    q.at(1, 2) = Rational(3);
    q.at(2, 1) = Rational(0);
    q.at(2, 2) = Rational(1);
    CoeffTable h = CoeffTable::zero_extended();

    TreeFamilySpec spec{TreeFamily::Alternating, 2, 1, MultiIndex::unit(2, 2), 2, 1};
    auto trees = enumerate_trees(spec);
    REQUIRE(trees.size() == 1);
    CHECK(alt_tree_energy(trees.front(), h, q, 2) == Rational(3));

    // Non-alternating input is rejected.
    LabelledTree bad = make_node(1, {make_leaf(1, LabelSlot{1, 1}), make_leaf(1, LabelSlot{1, 2})});
    CHECK_THROWS_AS(alt_tree_energy(bad, h, q, 1), InvalidArgument);

    // One odd vertex of outdegree 2 over two expanded leaves:
    // (1/2) * h_2 * (1/2)^2 = 1/8 with Q = [[1/2]] and h_2 = 1.
    RationalMatrix half(1);
    half.at(1, 1) = Rational(1, 2);
    CoeffTable h2 = CoeffTable::zero_extended();
    h2.set(1, MultiIndex{2}, Rational(1));
    TreeFamilySpec alt2{TreeFamily::Alternating, 1, 1, MultiIndex{2}, 2, 1};
    auto alts = enumerate_trees(alt2);
    REQUIRE(alts.size() == 1);
    CHECK(alt_tree_energy(alts.front(), h2, half, 1) == Rational(1, 8));

    // With Q = I the alternating sum collapses onto the proper-tree sum.
    RationalMatrix id = RationalMatrix::identity(1);
    CoeffTable weights = CoeffTable::zero_extended();
    weights.set(1, MultiIndex{2}, Rational(5));
    weights.set(1, MultiIndex{3}, Rational(-7, 3));
    for (int k = 2; k <= 5; ++k) {
        Rational alt_sum(0);
        TreeFamilySpec aspec{TreeFamily::Alternating, 1, 1, MultiIndex{k}, 2, 1};
        for_each_tree(aspec,
                      [&](const LabelledTree& t) { alt_sum += alt_tree_energy(t, weights, id, 1); });
        Rational proper_sum(0);
        TreeFamilySpec pspec{TreeFamily::Proper, 1, 1, MultiIndex{k}, 2, 1};
        for_each_tree(pspec,
                      [&](const LabelledTree& t) { proper_sum += tree_energy(t, weights, 1); });
        CHECK(alt_sum == proper_sum);
    }
}

TEST_CASE("ferns") {
    // One spine edge: all labelled leaves hang off the root.
    for (int k = 0; k <= 5; ++k) {
        TreeFamilySpec spec{TreeFamily::Fern, 1, 1, MultiIndex{k}, 1, 1};
        CHECK(enumerate_trees(spec).size() == 1);
    }

    // Length 2, dimension 2: interior spine type free, leaves distributed
    // over two spine vertices.
    TreeFamilySpec spec{TreeFamily::Fern, 2, 1, MultiIndex::unit(2, 2), 2, 2};
    auto ferns = enumerate_trees(spec);
    CHECK(ferns.size() == 4); // 2 spine typings x 2 placements
    CHECK(encodings(ferns).size() == ferns.size());

    CHECK_THROWS_AS(
        enumerate_trees(TreeFamilySpec{TreeFamily::Fern, 1, 1, MultiIndex{1}, 0, 1}),
        InvalidArgument);
}

TEST_CASE("energy is multiplicative under glueing") {
    // Glue proper subtrees onto the middle generation of a 2-generation
    // tree; the glued energy is the product of the part energies.
    CoeffTable h = CoeffTable::zero_extended();
    h.set(1, MultiIndex{2}, Rational(3));
    h.set(1, MultiIndex{3}, Rational(1, 2));
    h.set(1, MultiIndex{4}, Rational(-2));

    auto leaf = [](int a) { return make_leaf(1, LabelSlot{1, a}); };
    LabelledTree left = make_node(1, {leaf(1), leaf(2)});
    LabelledTree right = make_node(1, {leaf(3), leaf(4), leaf(5)});
    LabelledTree glued = make_node(1, {left, right});

    Rational head = h.lookup(1, MultiIndex{2});
    CHECK(tree_energy(glued, h, 1) ==
          head * tree_energy(left, h, 1) * tree_energy(right, h, 1));
}

TEST_CASE("planar enumeration") {
    // Proper planar one-dimensional counts: super-Catalan 1, 1, 3, 11, 45.
    std::vector<std::size_t> expected = {1, 1, 3, 11, 45};
    for (int k = 1; k <= 5; ++k) {
        std::vector<int> letters(static_cast<std::size_t>(k), 1);
        PlanarFamilySpec spec{TreeFamily::Proper, 1, 1, Word(letters), 2};
        auto trees = enumerate_planar_trees(spec);
        CHECK(trees.size() == expected[static_cast<std::size_t>(k - 1)]);
        std::set<std::string> enc;
        for (const PlanarTree& t : trees) {
            enc.insert(planar_encode(t));
            CHECK(planar_leaf_word(t) == Word(letters));
        }
        CHECK(enc.size() == trees.size());
    }

    // Binary-weight sums over planar proper trees give Catalan numbers.
    FreeCoeffTable binary = FreeCoeffTable::zero_extended();
    binary.set(1, Word{1, 1}, Rational(1));
    std::vector<long> catalan = {1, 1, 2, 5, 14, 42, 132};
    for (int k = 1; k <= 7; ++k) {
        std::vector<int> letters(static_cast<std::size_t>(k), 1);
        PlanarFamilySpec spec{TreeFamily::Proper, 1, 1, Word(letters), 2};
        Rational sum(0);
        for_each_planar_tree(spec,
                             [&](const PlanarTree& t) { sum += planar_energy(t, binary); });
        CHECK(sum == Rational(catalan[static_cast<std::size_t>(k - 1)]));
    }
}

TEST_CASE("planar final tree edge cases") {
    // m = 0 demands the single matching leaf.
    CHECK(enumerate_planar_trees(PlanarFamilySpec{TreeFamily::Final, 2, 2, Word{2}, 0}).size() ==
          1);
    CHECK(enumerate_planar_trees(PlanarFamilySpec{TreeFamily::Final, 2, 1, Word{2}, 0}).empty());
    CHECK(enumerate_planar_trees(PlanarFamilySpec{TreeFamily::Final, 2, 1, Word{1, 1}, 0})
              .empty());
    // A single leaf through m generations: one chain per interior typing.
    CHECK(enumerate_planar_trees(PlanarFamilySpec{TreeFamily::Final, 3, 2, Word{1}, 3}).size() ==
          9);
}

TEST_CASE("planar final trees with two generations: the four topologies") {
    // Leaf word (3,1,1): the middle generation splits it into consecutive
    // parts in exactly four ways; each split contributes N^parts typings.
    for (int n : {3, 4}) {
        PlanarFamilySpec spec{TreeFamily::Final, n, 2, Word{3, 1, 1}, 2};
        auto trees = enumerate_planar_trees(spec);

        std::map<std::vector<int>, int> by_split; // part sizes -> count
        for (const PlanarTree& t : trees) {
            std::vector<int> sizes;
            for (const PlanarTree& c : t.children) sizes.push_back(planar_leaf_count(c));
            by_split[sizes]++;
        }
        REQUIRE(by_split.size() == 4);
        CHECK(by_split[{3}] == n);
        CHECK(by_split[{1, 1, 1}] == n * n * n);
        CHECK(by_split[{2, 1}] == n * n);
        CHECK(by_split[{1, 2}] == n * n);
    }
}

TEST_CASE("planar vertex energy uses the ordered child-type word") {
    PlanarTree v{3,
                 {PlanarTree{3, {}}, PlanarTree{4, {}}, PlanarTree{1, {}}}};
    CHECK(free_outdegree(v) == Word{3, 4, 1});
    FreeCoeffTable h = FreeCoeffTable::zero_extended();
    h.set(3, Word{3, 4, 1}, Rational(7));
    CHECK(planar_energy(v, h) == Rational(7));
    // The reversed word is a different key.
    PlanarTree w{3, {PlanarTree{1, {}}, PlanarTree{4, {}}, PlanarTree{3, {}}}};
    CHECK(planar_energy(w, h).is_zero());
}

TEST_CASE("tree family validation") {
    CHECK_THROWS_AS(
        enumerate_trees(TreeFamilySpec{TreeFamily::Proper, 1, 2, MultiIndex{2}, 2, 1}),
        InvalidArgument);
    CHECK_THROWS_AS(
        enumerate_trees(TreeFamilySpec{TreeFamily::Proper, 2, 1, MultiIndex{2}, 2, 1}),
        DimensionMismatch);
    CHECK_THROWS_AS(enumerate_planar_trees(PlanarFamilySpec{TreeFamily::Fern, 1, 1, Word{1}, 2}),
                    InvalidArgument);
    CHECK_THROWS_AS(enumerate_planar_trees(PlanarFamilySpec{TreeFamily::Proper, 1, 1,
                                                            Word{1, 2}, 2}),
                    DimensionMismatch);
}
