#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cocert/coalgebra.hpp"
#include "cocert/fvalue.hpp"

namespace cocert {

using BlockId = std::uint32_t;

// Partition of {0..n-1} as contiguous slices of a permuted state array.
class RefinablePartition {
public:
    RefinablePartition() = default;
    static RefinablePartition new_single_block(std::size_t n);
    // Blocks numbered by first occurrence of their label in state order.
    static RefinablePartition from_assignment(const std::vector<std::uint32_t>& label);

    std::size_t state_count() const { return elems_.size(); }
    std::size_t block_count() const { return begin_.size(); }
    BlockId block_of(StateId s) const { return block_[s]; }
    std::size_t block_size(BlockId b) const { return end_[b] - begin_[b]; }
    std::span<const StateId> members(BlockId b) const {
        return {elems_.data() + begin_[b], elems_.data() + end_[b]};
    }
    std::size_t marked_count(BlockId b) const { return marked_[b]; }

    // Moves s into its block's marked prefix; idempotent.
    void mark(StateId s);

    // Splits off the marked prefix as a new block if it is proper and nonempty; clears marks.
    std::optional<BlockId> split_marked(BlockId b);

    // Groups b by key value. Groups come in order of first occurrence; the group whose value
    // equals `keep` (or the first group if none does) retains id b.
    template <class KeyFn>
    std::vector<std::pair<BlockId, FValue>> split_by_key(BlockId b, const KeyFn& key,
                                                         const std::optional<FValue>& keep = std::nullopt);

    // Block id per state.
    const std::vector<BlockId>& assignment() const { return block_; }

    // Full structural audit; throws VerificationError on inconsistency.
    void audit() const;

    // States moved or inspected by mark/split operations so far.
    std::uint64_t work() const { return work_; }

private:
    std::vector<StateId> elems_;
    std::vector<std::uint32_t> pos_;
    std::vector<BlockId> block_;
    std::vector<std::uint32_t> begin_, end_, marked_;
    std::uint64_t work_ = 0;
};

template <class KeyFn>
std::vector<std::pair<BlockId, FValue>> RefinablePartition::split_by_key(BlockId b, const KeyFn& key,
                                                                        const std::optional<FValue>& keep) {
    std::vector<FValue> values;
    std::vector<std::vector<StateId>> groups;
    std::unordered_map<FValue, std::size_t, FValueHash> index;
    for (StateId s : members(b)) {
        FValue v = key(s);
        auto [it, fresh] = index.try_emplace(v, values.size());
        if (fresh) {
            values.push_back(std::move(v));
            groups.emplace_back();
        }
        groups[it->second].push_back(s);
        ++work_;
    }
    std::size_t kept = 0;
    if (keep) {
        auto it = index.find(*keep);
        if (it != index.end()) kept = it->second;
    }
    std::vector<std::pair<BlockId, FValue>> out;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (g == kept) {
            out.emplace_back(b, values[g]);
            continue;
        }
        for (StateId s : groups[g]) mark(s);
        auto nb = split_marked(b);
        out.emplace_back(nb ? *nb : b, values[g]);
    }
    return out;
}

}  // namespace cocert
