#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cocert/coalgebra.hpp"
#include "cocert/partition.hpp"

namespace cocert {

enum class RefineMode : std::uint8_t { Generic, Cancellative, Naive };

std::string to_string(RefineMode m);
RefineMode parse_mode(const std::string& s);  // throws InputError

// Compound blocks group P-blocks; each one is a block of the coarser partition.
using CompoundId = std::uint32_t;

struct TraceChild {
    BlockId id;
    FValue value;                // over palette 3 (generic, naive) or 2 (cancellative)
    std::vector<StateId> moved;  // members of a newly created block; empty for the child keeping the parent id
};

struct TraceRefinement {
    BlockId parent;
    std::vector<TraceChild> children;  // children[0] keeps the parent id
};

struct TraceSplit {
    BlockId splitter;              // S
    CompoundId compound;           // B; keeps its id for B \ S afterwards
    CompoundId splitter_compound;  // fresh compound holding S alone
    std::vector<TraceRefinement> refined;
};

struct RefinementTrace {
    RefineMode mode = RefineMode::Generic;
    std::size_t n = 0;
    std::vector<BlockId> init_block_of;  // initial partition, per state
    std::vector<FValue> init_values;     // F1 value per initial block
    std::vector<TraceSplit> splits;
};

struct RefineStats {
    std::size_t iterations = 0;       // loop iterations (dequeued splitters)
    std::size_t new_blocks = 0;       // blocks created by refinement steps
    std::size_t child_records = 0;    // (refined block, child) pairs in the trace
    std::size_t visited_edges = 0;    // predecessor edges scanned
    std::size_t key_computations = 0; // F-values computed for split keys
    std::size_t max_splitter_role = 0;
    std::size_t initial_blocks = 0;
};

struct PartitionResult {
    RefinablePartition partition;
    RefinementTrace trace;
    RefineStats stats;
};

struct RefineOptions {
    bool audit = false;  // structural checks after every iteration
};

// P0 = ker(F! . c); blocks numbered by first occurrence in state order.
std::pair<RefinablePartition, std::vector<FValue>> initial_partition(const Coalgebra& c);

class Refiner {
public:
    Refiner(const Coalgebra& c, RefineMode mode, RefineOptions opts = {});
    ~Refiner();
    Refiner(Refiner&&) noexcept;
    Refiner& operator=(Refiner&&) noexcept;

    // Runs one loop iteration; false when the partition is stable.
    bool step();
    void run();
    PartitionResult finish();

    const RefinablePartition& partition() const;
    // Keys computed in the last iteration: states with an edge into S (generic/cancellative) or
    // all states (naive), with their F3 / F2 value.
    const std::vector<std::pair<StateId, FValue>>& last_keys() const;
    const RefineStats& stats() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

PartitionResult refine(const Coalgebra& c, RefineMode mode, RefineOptions opts = {});

// Rebuilds the final partition from a trace; throws VerificationError on mismatch.
RefinablePartition replay(const RefinementTrace& trace);

// Canonical form of a partition: block of each state renumbered by first occurrence.
std::vector<std::uint32_t> normalize_blocks(const std::vector<std::uint32_t>& block_of);

}  // namespace cocert
