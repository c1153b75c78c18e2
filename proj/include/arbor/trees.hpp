#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arbor/matrix.hpp"
#include "arbor/multi_index.hpp"
#include "arbor/partitions.hpp"
#include "arbor/rational.hpp"
#include "arbor/word.hpp"

namespace arbor {

/// Shared resource caps for enumeration and recursion.
struct Caps {
    /// Max number of leaves (label-set size / word length) in any enumerated
    /// tree family.
    int max_leaves = 8;
    /// Max ground-set size for set-partition enumeration, and max total
    /// degree handled by the partition-based recursions.
    int max_degree = 12;
    /// Max number of memoized cells per invocation of a recursive path.
    std::size_t memo_budget = std::size_t(1) << 22;
};

// ---------------------------------------------------------------------------
// Labelled rooted trees (unordered children, bijectively labelled leaves)
// ---------------------------------------------------------------------------

/// Rooted tree with vertex types in [N] and a label on each labelled leaf.
/// Stored in canonical form: children sorted by their canonical encoding,
/// so each isomorphism class has exactly one representative.
struct LabelledTree {
    int type = 1;
    std::optional<LabelSlot> label;
    std::vector<LabelledTree> children;

    bool is_leaf() const { return children.empty(); }
};

LabelledTree make_leaf(int type, std::optional<LabelSlot> label = std::nullopt);
/// Sorts `children` into canonical order.
LabelledTree make_node(int type, std::vector<LabelledTree> children);

/// Equal encodings <=> isomorphic trees.
std::string canonical_encode(const LabelledTree& t);

/// Multi-index counting the types of v's children.
MultiIndex outdegree(const LabelledTree& v, int dim);
int leaf_count(const LabelledTree& t);
int vertex_count(const LabelledTree& t);

// ---------------------------------------------------------------------------
// Planar rooted trees (ranked children; child order is semantic)
// ---------------------------------------------------------------------------

struct PlanarTree {
    int type = 1;
    std::vector<PlanarTree> children;

    bool is_leaf() const { return children.empty(); }
};

std::string planar_encode(const PlanarTree& t);
/// Ordered word of child types.
Word free_outdegree(const PlanarTree& v);
/// Leaf types read left to right.
Word planar_leaf_word(const PlanarTree& t);
int planar_leaf_count(const PlanarTree& t);

// ---------------------------------------------------------------------------
// Coefficient tables (energy weights)
// ---------------------------------------------------------------------------

/// Table of values indexed by (component, multi-index). A strict table
/// raises missing-coefficient on absent entries; a zero-extended table
/// treats absent entries as 0.
class CoeffTable {
public:
    CoeffTable() = default;
    static CoeffTable zero_extended() {
        CoeffTable t;
        t.zero_extended_ = true;
        return t;
    }

    void set(int component, const MultiIndex& mi, const Rational& v) {
        m_[{component, mi}] = v;
    }
    const Rational* find(int component, const MultiIndex& mi) const {
        auto it = m_.find({component, mi});
        return it == m_.end() ? nullptr : &it->second;
    }
    Rational lookup(int component, const MultiIndex& mi) const;

    bool is_zero_extended() const { return zero_extended_; }
    const std::map<std::pair<int, MultiIndex>, Rational>& entries() const { return m_; }

private:
    std::map<std::pair<int, MultiIndex>, Rational> m_;
    bool zero_extended_ = false;
};

/// Same, indexed by (component, word).
class FreeCoeffTable {
public:
    FreeCoeffTable() = default;
    static FreeCoeffTable zero_extended() {
        FreeCoeffTable t;
        t.zero_extended_ = true;
        return t;
    }

    void set(int component, const Word& w, const Rational& v) { m_[{component, w}] = v; }
    const Rational* find(int component, const Word& w) const {
        auto it = m_.find({component, w});
        return it == m_.end() ? nullptr : &it->second;
    }
    Rational lookup(int component, const Word& w) const;

    bool is_zero_extended() const { return zero_extended_; }
    const std::map<std::pair<int, Word>, Rational>& entries() const { return m_; }

private:
    std::map<std::pair<int, Word>, Rational> m_;
    bool zero_extended_ = false;
};

// ---------------------------------------------------------------------------
// Tree families
// ---------------------------------------------------------------------------

enum class TreeFamily {
    /// Every leaf lies in generation m.
    Final,
    /// Every internal vertex has two or more children.
    Proper,
    /// Even-generation vertices have exactly one child; odd-generation
    /// vertices are leaves or have two or more children.
    Alternating,
    /// A spine v_0..v_m from the root, every off-spine vertex a leaf;
    /// v_m is an unlabelled leaf of a designated terminal type.
    Fern,
};

struct TreeFamilySpec {
    TreeFamily family = TreeFamily::Proper;
    int dimension = 1;
    int root_type = 1;
    MultiIndex leaf_counts{1};
    /// Generations m (Final, Fern).
    int generations = 2;
    /// Terminal type j (Fern).
    int terminal_type = 1;
};

struct PlanarFamilySpec {
    TreeFamily family = TreeFamily::Proper; // Fern has no planar counterpart
    int dimension = 1;
    int root_type = 1;
    Word leaf_word{1};
    int generations = 2;
};

/// Enumerates one representative per isomorphism class, deterministic order.
/// Degenerate specs (e.g. Final with m = 0 and a mismatched leaf set) yield
/// an empty list; oversized leaf specs raise resource-limit.
std::vector<LabelledTree> enumerate_trees(const TreeFamilySpec& spec, const Caps& caps = {});
std::vector<PlanarTree> enumerate_planar_trees(const PlanarFamilySpec& spec, const Caps& caps = {});

/// Visitor forms; the tree passed to `fn` may be reused storage.
void for_each_tree(const TreeFamilySpec& spec,
                   const std::function<void(const LabelledTree&)>& fn,
                   const Caps& caps = {});
void for_each_planar_tree(const PlanarFamilySpec& spec,
                          const std::function<void(const PlanarTree&)>& fn,
                          const Caps& caps = {});

// ---------------------------------------------------------------------------
// Energies
// ---------------------------------------------------------------------------

/// Product over internal vertices v of H[type(v), outdegree(v)].
/// A tree with no internal vertices has energy 1.
Rational tree_energy(const LabelledTree& t, const CoeffTable& H, int dim);

/// Alternating energy: Q factors at even-depth internal vertices (each has
/// exactly one child; the factor is Q[type(v), type(child)]), H factors at
/// odd-depth internal vertices. Throws invalid-argument when `t` is not an
/// alternating tree.
Rational alt_tree_energy(const LabelledTree& t, const CoeffTable& H, const RationalMatrix& Q,
                         int dim);

/// Product over internal vertices of H[type(v), free_outdegree(v)].
Rational planar_energy(const PlanarTree& t, const FreeCoeffTable& H);

Rational planar_alt_energy(const PlanarTree& t, const FreeCoeffTable& H,
                           const RationalMatrix& Q);

} // namespace arbor
