#include "cocert/partition.hpp"

#include <numeric>

namespace cocert {

RefinablePartition RefinablePartition::new_single_block(std::size_t n) {
    RefinablePartition p;
    p.elems_.resize(n);
    std::iota(p.elems_.begin(), p.elems_.end(), 0);
    p.pos_.resize(n);
    std::iota(p.pos_.begin(), p.pos_.end(), 0);
    p.block_.assign(n, 0);
    if (n > 0) {
        p.begin_.push_back(0);
        p.end_.push_back(static_cast<std::uint32_t>(n));
        p.marked_.push_back(0);
    }
    return p;
}

RefinablePartition RefinablePartition::from_assignment(const std::vector<std::uint32_t>& label) {
    std::size_t n = label.size();
    std::unordered_map<std::uint32_t, BlockId> id;
    std::vector<std::uint32_t> count;
    std::vector<BlockId> blk(n);
    for (std::size_t s = 0; s < n; ++s) {
        auto [it, fresh] = id.try_emplace(label[s], static_cast<BlockId>(count.size()));
        if (fresh) count.push_back(0);
        blk[s] = it->second;
        ++count[it->second];
    }
    RefinablePartition p;
    p.elems_.resize(n);
    p.pos_.resize(n);
    p.block_ = blk;
    std::uint32_t off = 0;
    for (auto c : count) {
        p.begin_.push_back(off);
        p.end_.push_back(off);
        p.marked_.push_back(0);
        off += c;
    }
    for (std::size_t s = 0; s < n; ++s) {
        auto b = blk[s];
        p.elems_[p.end_[b]] = static_cast<StateId>(s);
        p.pos_[s] = p.end_[b]++;
    }
    return p;
}

void RefinablePartition::mark(StateId s) {
    BlockId b = block_[s];
    std::uint32_t i = pos_[s];
    std::uint32_t m = begin_[b] + marked_[b];
    ++work_;
    if (i < m) return;
    StateId t = elems_[m];
    elems_[m] = s;
    pos_[s] = m;
    elems_[i] = t;
    pos_[t] = i;
    ++marked_[b];
}

std::optional<BlockId> RefinablePartition::split_marked(BlockId b) {
    std::uint32_t m = marked_[b];
    marked_[b] = 0;
    if (m == 0 || m == end_[b] - begin_[b]) return std::nullopt;
    auto nb = static_cast<BlockId>(begin_.size());
    begin_.push_back(begin_[b]);
    end_.push_back(begin_[b] + m);
    marked_.push_back(0);
    begin_[b] += m;
    for (std::uint32_t i = begin_[nb]; i < end_[nb]; ++i) block_[elems_[i]] = nb;
    work_ += m;
    return nb;
}

void RefinablePartition::audit() const {
    std::size_t n = elems_.size();
    if (pos_.size() != n || block_.size() != n) throw VerificationError("partition arrays disagree in size");
    std::size_t total = 0;
    for (BlockId b = 0; b < begin_.size(); ++b) {
        if (begin_[b] >= end_[b]) throw VerificationError("empty block " + std::to_string(b));
        if (marked_[b] != 0) throw VerificationError("stale marks in block " + std::to_string(b));
        total += end_[b] - begin_[b];
        for (std::uint32_t i = begin_[b]; i < end_[b]; ++i) {
            StateId s = elems_[i];
            if (pos_[s] != i) throw VerificationError("position index inconsistent");
            if (block_[s] != b) throw VerificationError("block index inconsistent");
        }
    }
    if (total != n) throw VerificationError("blocks do not cover all states");
}

}  // namespace cocert
