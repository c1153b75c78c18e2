#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <vector>

#include "arbor/multi_index.hpp"

namespace arbor {

/// One slot (i, a) of a label set: the a-th copy attached to component i.
/// Valid for a multi-index alpha when 1 <= a <= alpha_i.
struct LabelSlot {
    int component = 1;
    int index = 1;

    friend bool operator==(const LabelSlot&, const LabelSlot&) = default;
    friend auto operator<=>(const LabelSlot&, const LabelSlot&) = default;
};

/// Finite subset of [N] x Z_{>=1}, kept sorted ascending.
using LabelSet = std::vector<LabelSlot>;

/// The label set [alpha] = {(i, a) : 1 <= a <= alpha_i}, sorted.
LabelSet label_slots(const MultiIndex& alpha);

/// The multi-index counting slots per component (#S).
MultiIndex slot_counts(const LabelSet& s, int dim);

/// Partition of a ground set into disjoint non-empty blocks.
/// Canonical form: each block sorted, blocks ordered by least element.
struct SetPartition {
    std::vector<LabelSet> blocks;

    int block_count() const { return static_cast<int>(blocks.size()); }

    friend bool operator==(const SetPartition&, const SetPartition&) = default;
};

inline constexpr std::size_t kDefaultPartitionCap = 12;

/// All set partitions of `ground`, in canonical form, deterministic order.
/// The empty set has exactly one partition (no blocks). Ground sets larger
/// than `cap` raise a resource-limit error.
std::vector<SetPartition> set_partitions(const LabelSet& ground,
                                         std::size_t cap = kDefaultPartitionCap);

/// Visitor form of set_partitions; the partition passed to `fn` is reused
/// storage and must be copied if retained.
void for_each_set_partition(const LabelSet& ground,
                            const std::function<void(const SetPartition&)>& fn,
                            std::size_t cap = kDefaultPartitionCap);

/// All ways of distributing `ground` over `parts` ordered, possibly-empty
/// slots. Visitor form; `parts_out` is reused storage.
void for_each_ordered_decomposition(
    const LabelSet& ground, int parts,
    const std::function<void(const std::vector<LabelSet>&)>& fn,
    std::size_t cap = kDefaultPartitionCap);

} // namespace arbor
