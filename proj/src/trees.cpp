#include "arbor/trees.hpp"

#include <algorithm>
#include <sstream>

namespace arbor {

namespace {

std::string format_mi(const MultiIndex& m) {
    std::string s = "(";
    for (int p = 0; p < m.dim(); ++p) {
        if (p) s += ',';
        s += std::to_string(m[p]);
    }
    s += ')';
    return s;
}

std::string format_word(const Word& w) {
    std::string s = "(";
    for (int p = 0; p < w.length(); ++p) {
        if (p) s += ',';
        s += std::to_string(w[p]);
    }
    s += ')';
    return s;
}

} // namespace

// ---------------------------------------------------------------------------
// Tree basics
// ---------------------------------------------------------------------------

LabelledTree make_leaf(int type, std::optional<LabelSlot> label) {
    LabelledTree t;
    t.type = type;
    t.label = label;
    return t;
}

LabelledTree make_node(int type, std::vector<LabelledTree> children) {
    LabelledTree t;
    t.type = type;
    t.children = std::move(children);
    std::sort(t.children.begin(), t.children.end(),
              [](const LabelledTree& a, const LabelledTree& b) {
                  return canonical_encode(a) < canonical_encode(b);
              });
    return t;
}

std::string canonical_encode(const LabelledTree& t) {
    std::string s = "(";
    s += std::to_string(t.type);
    if (t.label) {
        s += 'L';
        s += std::to_string(t.label->component);
        s += '.';
        s += std::to_string(t.label->index);
    }
    for (const LabelledTree& c : t.children) s += canonical_encode(c);
    s += ')';
    return s;
}

MultiIndex outdegree(const LabelledTree& v, int dim) {
    MultiIndex m(dim);
    for (const LabelledTree& c : v.children) m = m.incremented(c.type);
    return m;
}

int leaf_count(const LabelledTree& t) {
    if (t.is_leaf()) return 1;
    int n = 0;
    for (const LabelledTree& c : t.children) n += leaf_count(c);
    return n;
}

int vertex_count(const LabelledTree& t) {
    int n = 1;
    for (const LabelledTree& c : t.children) n += vertex_count(c);
    return n;
}

std::string planar_encode(const PlanarTree& t) {
    std::string s = "(";
    s += std::to_string(t.type);
    for (const PlanarTree& c : t.children) s += planar_encode(c);
    s += ')';
    return s;
}

Word free_outdegree(const PlanarTree& v) {
    std::vector<int> letters;
    letters.reserve(v.children.size());
    for (const PlanarTree& c : v.children) letters.push_back(c.type);
    return Word(std::move(letters));
}

namespace {

void collect_leaf_types(const PlanarTree& t, std::vector<int>& out) {
    if (t.is_leaf()) {
        out.push_back(t.type);
        return;
    }
    for (const PlanarTree& c : t.children) collect_leaf_types(c, out);
}

} // namespace

Word planar_leaf_word(const PlanarTree& t) {
    std::vector<int> letters;
    collect_leaf_types(t, letters);
    return Word(std::move(letters));
}

int planar_leaf_count(const PlanarTree& t) {
    if (t.is_leaf()) return 1;
    int n = 0;
    for (const PlanarTree& c : t.children) n += planar_leaf_count(c);
    return n;
}

// ---------------------------------------------------------------------------
// Coefficient tables
// ---------------------------------------------------------------------------

Rational CoeffTable::lookup(int component, const MultiIndex& mi) const {
    if (const Rational* v = find(component, mi)) return *v;
    if (zero_extended_) return Rational(0);
    throw MissingCoefficient("no coefficient for (type=" + std::to_string(component) +
                             ", outdegree=" + format_mi(mi) + ")");
}

Rational FreeCoeffTable::lookup(int component, const Word& w) const {
    if (const Rational* v = find(component, w)) return *v;
    if (zero_extended_) return Rational(0);
    throw MissingCoefficient("no coefficient for (type=" + std::to_string(component) +
                             ", outdegree=" + format_word(w) + ")");
}

// ---------------------------------------------------------------------------
// Enumeration: labelled families
// ---------------------------------------------------------------------------

namespace {

using TreeSink = std::function<void(const LabelledTree&)>;
using PlanarSink = std::function<void(const PlanarTree&)>;

struct LabelledEnumerator {
    int dim;
    std::size_t partition_cap;

    // All trees with the given root type whose leaves are labelled by S and
    // all lie in generation m.
    void visit_final(int root_type, const LabelSet& s, int m, const TreeSink& sink) const {
        if (m == 0) {
            if (s.size() == 1 && s[0].component == root_type)
                sink(make_leaf(root_type, s[0]));
            return;
        }
        if (s.empty()) return;
        std::vector<LabelledTree> partial;
        for_each_set_partition(
            s,
            [&](const SetPartition& pi) {
                final_combos(pi.blocks, 0, m, partial, root_type, sink);
            },
            partition_cap);
    }

    void final_combos(const std::vector<LabelSet>& blocks, std::size_t idx, int m,
                      std::vector<LabelledTree>& partial, int root_type,
                      const TreeSink& sink) const {
        if (idx == blocks.size()) {
            sink(make_node(root_type, partial));
            return;
        }
        for (int t = 1; t <= dim; ++t)
            visit_final(t, blocks[idx], m - 1, [&](const LabelledTree& sub) {
                partial.push_back(sub);
                final_combos(blocks, idx + 1, m, partial, root_type, sink);
                partial.pop_back();
            });
    }

    // Proper trees: every internal vertex has two or more children.
    void visit_proper(int root_type, const LabelSet& s, const TreeSink& sink) const {
        if (s.size() == 1) {
            if (s[0].component == root_type) sink(make_leaf(root_type, s[0]));
            return;
        }
        if (s.empty()) return;
        std::vector<LabelledTree> partial;
        for_each_set_partition(
            s,
            [&](const SetPartition& pi) {
                if (pi.block_count() < 2) return;
                proper_combos(pi.blocks, 0, partial, root_type, sink);
            },
            partition_cap);
    }

    void proper_combos(const std::vector<LabelSet>& blocks, std::size_t idx,
                       std::vector<LabelledTree>& partial, int root_type,
                       const TreeSink& sink) const {
        if (idx == blocks.size()) {
            sink(make_node(root_type, partial));
            return;
        }
        for (int t = 1; t <= dim; ++t)
            visit_proper(t, blocks[idx], [&](const LabelledTree& sub) {
                partial.push_back(sub);
                proper_combos(blocks, idx + 1, partial, root_type, sink);
                partial.pop_back();
            });
    }

    // Alternating trees are expansions of proper trees: above the root and
    // above every other vertex sits a single-child vertex whose type ranges
    // freely; the new root is pinned to root_type.
    void visit_alternating(int root_type, const LabelSet& s, const TreeSink& sink) const {
        for (int j = 1; j <= dim; ++j)
            visit_proper(j, s, [&](const LabelledTree& proper) {
                expand_odd(proper, [&](const LabelledTree& odd) {
                    sink(make_node(root_type, {odd}));
                });
            });
    }

    // All retypings of `v` into an odd-generation subtree: each child gets a
    // freely typed single-child parent inserted above it.
    void expand_odd(const LabelledTree& v, const TreeSink& sink) const {
        if (v.is_leaf()) {
            sink(v);
            return;
        }
        std::vector<LabelledTree> partial;
        expand_combos(v, 0, partial, sink);
    }

    void expand_combos(const LabelledTree& v, std::size_t idx,
                       std::vector<LabelledTree>& partial, const TreeSink& sink) const {
        if (idx == v.children.size()) {
            sink(make_node(v.type, partial));
            return;
        }
        expand_odd(v.children[idx], [&](const LabelledTree& odd) {
            for (int a = 1; a <= dim; ++a) {
                partial.push_back(make_node(a, {odd}));
                expand_combos(v, idx + 1, partial, sink);
                partial.pop_back();
            }
        });
    }

    void visit_ferns(int root_type, const MultiIndex& alpha, int terminal_type, int m,
                     const TreeSink& sink) const {
        LabelSet ground = label_slots(alpha);
        std::vector<int> spine(static_cast<std::size_t>(m) + 1, 0);
        spine[0] = root_type;
        spine[static_cast<std::size_t>(m)] = terminal_type;
        fern_spines(ground, spine, 1, m, sink);
    }

    void fern_spines(const LabelSet& ground, std::vector<int>& spine, int pos, int m,
                     const TreeSink& sink) const {
        if (pos == m) {
            for_each_ordered_decomposition(
                ground, m,
                [&](const std::vector<LabelSet>& parts) {
                    LabelledTree cur = make_leaf(spine[static_cast<std::size_t>(m)]);
                    for (int l = m; l >= 1; --l) {
                        std::vector<LabelledTree> children;
                        for (const LabelSlot& slot : parts[static_cast<std::size_t>(l - 1)])
                            children.push_back(make_leaf(slot.component, slot));
                        children.push_back(std::move(cur));
                        cur = make_node(spine[static_cast<std::size_t>(l - 1)],
                                        std::move(children));
                    }
                    sink(cur);
                },
                partition_cap);
            return;
        }
        for (int t = 1; t <= dim; ++t) {
            spine[static_cast<std::size_t>(pos)] = t;
            fern_spines(ground, spine, pos + 1, m, sink);
        }
    }
};

struct PlanarEnumerator {
    int dim;
    const std::vector<int>* kappa = nullptr;

    void visit_final(int root_type, int lo, int hi, int m, const PlanarSink& sink) const {
        if (m == 0) {
            if (hi - lo == 1 && (*kappa)[static_cast<std::size_t>(lo)] == root_type)
                sink(PlanarTree{root_type, {}});
            return;
        }
        if (lo == hi) return;
        std::vector<PlanarTree> partial;
        final_parts(root_type, lo, lo, hi, m, partial, sink);
    }

    // Splits kappa[pos, hi) into consecutive non-empty parts, left to right.
    void final_parts(int root_type, int lo, int pos, int hi, int m,
                     std::vector<PlanarTree>& partial, const PlanarSink& sink) const {
        if (pos == hi) {
            sink(PlanarTree{root_type, partial});
            return;
        }
        for (int end = pos + 1; end <= hi; ++end)
            for (int t = 1; t <= dim; ++t)
                visit_final(t, pos, end, m - 1, [&](const PlanarTree& sub) {
                    partial.push_back(sub);
                    final_parts(root_type, lo, end, hi, m, partial, sink);
                    partial.pop_back();
                });
    }

    void visit_proper(int root_type, int lo, int hi, const PlanarSink& sink) const {
        if (hi - lo == 1) {
            if ((*kappa)[static_cast<std::size_t>(lo)] == root_type)
                sink(PlanarTree{root_type, {}});
            return;
        }
        if (lo == hi) return;
        std::vector<PlanarTree> partial;
        proper_parts(root_type, lo, lo, hi, partial, sink);
    }

    // The first part must be a strict prefix, which forces two or more parts.
    void proper_parts(int root_type, int lo, int pos, int hi, std::vector<PlanarTree>& partial,
                      const PlanarSink& sink) const {
        if (pos == hi) {
            sink(PlanarTree{root_type, partial});
            return;
        }
        int max_end = (pos == lo) ? hi - 1 : hi;
        for (int end = pos + 1; end <= max_end; ++end)
            for (int t = 1; t <= dim; ++t)
                visit_proper(t, pos, end, [&](const PlanarTree& sub) {
                    partial.push_back(sub);
                    proper_parts(root_type, lo, end, hi, partial, sink);
                    partial.pop_back();
                });
    }

    void visit_alternating(int root_type, int lo, int hi, const PlanarSink& sink) const {
        for (int j = 1; j <= dim; ++j)
            visit_proper(j, lo, hi, [&](const PlanarTree& proper) {
                expand_odd(proper, [&](const PlanarTree& odd) {
                    sink(PlanarTree{root_type, {odd}});
                });
            });
    }

    void expand_odd(const PlanarTree& v, const PlanarSink& sink) const {
        if (v.is_leaf()) {
            sink(v);
            return;
        }
        std::vector<PlanarTree> partial;
        expand_combos(v, 0, partial, sink);
    }

    void expand_combos(const PlanarTree& v, std::size_t idx, std::vector<PlanarTree>& partial,
                       const PlanarSink& sink) const {
        if (idx == v.children.size()) {
            sink(PlanarTree{v.type, partial});
            return;
        }
        expand_odd(v.children[idx], [&](const PlanarTree& odd) {
            for (int a = 1; a <= dim; ++a) {
                partial.push_back(PlanarTree{a, {odd}});
                expand_combos(v, idx + 1, partial, sink);
                partial.pop_back();
            }
        });
    }
};

void validate_common(int dim, int root_type) {
    if (dim < 1) throw InvalidArgument("tree family dimension must be >= 1");
    if (root_type < 1 || root_type > dim)
        throw InvalidArgument("root type out of range [1, N]");
}

} // namespace

void for_each_tree(const TreeFamilySpec& spec, const std::function<void(const LabelledTree&)>& fn,
                   const Caps& caps) {
    validate_common(spec.dimension, spec.root_type);
    if (spec.leaf_counts.dim() != spec.dimension)
        throw DimensionMismatch("leaf multi-index dimension differs from family dimension");
    if (spec.leaf_counts.degree() > caps.max_leaves)
        throw ResourceLimit("leaf count " + std::to_string(spec.leaf_counts.degree()) +
                            " exceeds cap " + std::to_string(caps.max_leaves));

    LabelledEnumerator en{spec.dimension, static_cast<std::size_t>(caps.max_degree)};
    LabelSet slots = label_slots(spec.leaf_counts);
    switch (spec.family) {
        case TreeFamily::Final:
            if (spec.generations < 0) throw InvalidArgument("generation count must be >= 0");
            en.visit_final(spec.root_type, slots, spec.generations, fn);
            return;
        case TreeFamily::Proper:
            en.visit_proper(spec.root_type, slots, fn);
            return;
        case TreeFamily::Alternating:
            en.visit_alternating(spec.root_type, slots, fn);
            return;
        case TreeFamily::Fern:
            if (spec.generations < 1) throw InvalidArgument("fern length must be >= 1");
            if (spec.terminal_type < 1 || spec.terminal_type > spec.dimension)
                throw InvalidArgument("fern terminal type out of range [1, N]");
            en.visit_ferns(spec.root_type, spec.leaf_counts, spec.terminal_type,
                           spec.generations, fn);
            return;
    }
    throw InvalidArgument("unknown tree family");
}

std::vector<LabelledTree> enumerate_trees(const TreeFamilySpec& spec, const Caps& caps) {
    std::vector<LabelledTree> out;
    for_each_tree(spec, [&](const LabelledTree& t) { out.push_back(t); }, caps);
    return out;
}

void for_each_planar_tree(const PlanarFamilySpec& spec,
                          const std::function<void(const PlanarTree&)>& fn, const Caps& caps) {
    validate_common(spec.dimension, spec.root_type);
    if (spec.leaf_word.max_letter() > spec.dimension)
        throw DimensionMismatch("leaf word letter exceeds family dimension");
    if (spec.leaf_word.length() > caps.max_leaves)
        throw ResourceLimit("leaf word length " + std::to_string(spec.leaf_word.length()) +
                            " exceeds cap " + std::to_string(caps.max_leaves));

    PlanarEnumerator en{spec.dimension, &spec.leaf_word.letters()};
    int len = spec.leaf_word.length();
    switch (spec.family) {
        case TreeFamily::Final:
            if (spec.generations < 0) throw InvalidArgument("generation count must be >= 0");
            en.visit_final(spec.root_type, 0, len, spec.generations, fn);
            return;
        case TreeFamily::Proper:
            en.visit_proper(spec.root_type, 0, len, fn);
            return;
        case TreeFamily::Alternating:
            en.visit_alternating(spec.root_type, 0, len, fn);
            return;
        case TreeFamily::Fern:
            throw InvalidArgument("fern family has no planar counterpart");
    }
    throw InvalidArgument("unknown tree family");
}

std::vector<PlanarTree> enumerate_planar_trees(const PlanarFamilySpec& spec, const Caps& caps) {
    std::vector<PlanarTree> out;
    for_each_planar_tree(spec, [&](const PlanarTree& t) { out.push_back(t); }, caps);
    return out;
}

// ---------------------------------------------------------------------------
// Energies
// ---------------------------------------------------------------------------

Rational tree_energy(const LabelledTree& t, const CoeffTable& h, int dim) {
    if (t.is_leaf()) return Rational(1);
    Rational e = h.lookup(t.type, outdegree(t, dim));
    for (const LabelledTree& c : t.children) {
        if (e.is_zero()) return e;
        e *= tree_energy(c, h, dim);
    }
    return e;
}

namespace {

Rational alt_energy_rec(const LabelledTree& v, const CoeffTable& h, const RationalMatrix& q,
                        int dim, int depth) {
    bool even = depth % 2 == 0;
    if (v.is_leaf()) {
        if (even) throw InvalidArgument("not an alternating tree: leaf at even depth");
        return Rational(1);
    }
    if (even) {
        if (v.children.size() != 1)
            throw InvalidArgument(
                "not an alternating tree: even-depth vertex without exactly one child");
        const LabelledTree& c = v.children.front();
        return q.at(v.type, c.type) * alt_energy_rec(c, h, q, dim, depth + 1);
    }
    if (v.children.size() < 2)
        throw InvalidArgument("not an alternating tree: odd-depth internal vertex with one child");
    Rational e = h.lookup(v.type, outdegree(v, dim));
    for (const LabelledTree& c : v.children) {
        if (e.is_zero()) return e;
        e *= alt_energy_rec(c, h, q, dim, depth + 1);
    }
    return e;
}

Rational planar_alt_energy_rec(const PlanarTree& v, const FreeCoeffTable& h,
                               const RationalMatrix& q, int depth) {
    bool even = depth % 2 == 0;
    if (v.is_leaf()) {
        if (even) throw InvalidArgument("not an alternating tree: leaf at even depth");
        return Rational(1);
    }
    if (even) {
        if (v.children.size() != 1)
            throw InvalidArgument(
                "not an alternating tree: even-depth vertex without exactly one child");
        const PlanarTree& c = v.children.front();
        return q.at(v.type, c.type) * planar_alt_energy_rec(c, h, q, depth + 1);
    }
    if (v.children.size() < 2)
        throw InvalidArgument("not an alternating tree: odd-depth internal vertex with one child");
    Rational e = h.lookup(v.type, free_outdegree(v));
    for (const PlanarTree& c : v.children) {
        if (e.is_zero()) return e;
        e *= planar_alt_energy_rec(c, h, q, depth + 1);
    }
    return e;
}

} // namespace

Rational alt_tree_energy(const LabelledTree& t, const CoeffTable& h, const RationalMatrix& q,
                         int dim) {
    return alt_energy_rec(t, h, q, dim, 0);
}

Rational planar_energy(const PlanarTree& t, const FreeCoeffTable& h) {
    if (t.is_leaf()) return Rational(1);
    Rational e = h.lookup(t.type, free_outdegree(t));
    for (const PlanarTree& c : t.children) {
        if (e.is_zero()) return e;
        e *= planar_energy(c, h);
    }
    return e;
}

Rational planar_alt_energy(const PlanarTree& t, const FreeCoeffTable& h,
                           const RationalMatrix& q) {
    return planar_alt_energy_rec(t, h, q, 0);
}

} // namespace arbor
