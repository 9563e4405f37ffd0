#include "cocert/refiner.hpp"

#include <bit>
#include <deque>
#include <unordered_map>

namespace cocert {

using FK = FunctorExpr::Kind;

std::string to_string(RefineMode m) {
    switch (m) {
    case RefineMode::Generic: return "generic";
    case RefineMode::Cancellative: return "cancellative";
    case RefineMode::Naive: return "naive";
    }
    return "?";
}

RefineMode parse_mode(const std::string& s) {
    if (s == "generic") return RefineMode::Generic;
    if (s == "cancellative") return RefineMode::Cancellative;
    if (s == "naive") return RefineMode::Naive;
    throw InputError("unknown mode '" + s + "' (expected generic, cancellative or naive)");
}

std::pair<RefinablePartition, std::vector<FValue>> initial_partition(const Coalgebra& c) {
    auto p = RefinablePartition::new_single_block(c.n());
    std::vector<FValue> values;
    if (c.n() == 0) return {std::move(p), values};
    std::vector<FValue> f1(c.n());
    for (StateId s = 0; s < c.n(); ++s) f1[s] = terminal_value(c.functor, c.structure[s]);
    auto groups = p.split_by_key(0, [&](StateId s) { return f1[s]; });
    values.resize(p.block_count());
    for (auto& [b, v] : groups) values[b] = std::move(v);
    return {std::move(p), std::move(values)};
}

std::vector<std::uint32_t> normalize_blocks(const std::vector<std::uint32_t>& block_of) {
    std::unordered_map<std::uint32_t, std::uint32_t> id;
    std::vector<std::uint32_t> out(block_of.size());
    for (std::size_t s = 0; s < block_of.size(); ++s) {
        auto [it, fresh] = id.try_emplace(block_of[s], static_cast<std::uint32_t>(id.size()));
        out[s] = it->second;
    }
    return out;
}

namespace {

enum class SlotKind : std::uint8_t { Scalar, Set, Weighted };

// Flat view of the encoding: per state a run of slots, per slot its outgoing edges.
struct EdgeIndex {
    std::vector<std::uint32_t> slot_begin;  // per state, size n+1
    std::vector<SlotKind> slot_kind;
    std::vector<std::int64_t> slot_count;   // distinct successors per slot
    std::vector<Rational> slot_weight;      // total weight per slot (weighted functors only)
    std::vector<StateId> src, tgt;
    std::vector<std::uint32_t> slot;        // global slot of each edge
    std::vector<Rational> weight;           // per edge (weighted functors only)
    std::vector<std::uint32_t> pred_begin;  // CSR by target
    std::vector<std::uint32_t> pred;
    bool weighted = false;

    void collect(const FunctorExpr& f, const Term& t, StateId x) {
        switch (f.kind) {
        case FK::Identity: add_slot(SlotKind::Scalar, x, {&t}, nullptr); return;
        case FK::Constant: return;
        case FK::Powerset:
        case FK::Monoid:
        case FK::Distribution: {
            std::vector<const Term*> items;
            for (const auto& it : t.items) items.push_back(&it);
            if (f.is_set_like()) add_slot(SlotKind::Set, x, items, nullptr);
            else add_slot(SlotKind::Weighted, x, items, &t.weights);
            return;
        }
        case FK::Signature:
            for (const auto& it : t.items) add_slot(SlotKind::Scalar, x, {&it}, nullptr);
            return;
        case FK::Product:
            for (std::size_t i = 0; i < t.items.size(); ++i) collect(f.children[i], t.items[i], x);
            return;
        case FK::Exponent:
            for (const auto& it : t.items) collect(f.children[0], it, x);
            return;
        case FK::Coproduct: collect(f.children[t.tag], t.items[0], x); return;
        case FK::Composite: throw IncompatibleError("composite functor reached the refiner; desugar first");
        }
    }

    void add_slot(SlotKind k, StateId x, const std::vector<const Term*>& items, const std::vector<Rational>* ws) {
        auto g = static_cast<std::uint32_t>(slot_kind.size());
        slot_kind.push_back(k);
        slot_count.push_back(static_cast<std::int64_t>(items.size()));
        Rational total;
        for (std::size_t i = 0; i < items.size(); ++i) {
            src.push_back(x);
            tgt.push_back(items[i]->tag);
            slot.push_back(g);
            if (weighted) {
                Rational w = ws ? (*ws)[i] : Rational(1);
                total += w;
                weight.push_back(std::move(w));
            }
        }
        if (weighted) slot_weight.push_back(std::move(total));
    }

    static bool has_weights(const FunctorExpr& f) {
        if (f.is_weighted()) return true;
        for (const auto& c : f.children)
            if (has_weights(c)) return true;
        return false;
    }

    explicit EdgeIndex(const Coalgebra& c) {
        weighted = has_weights(c.functor);
        std::size_t n = c.n();
        slot_begin.reserve(n + 1);
        for (StateId x = 0; x < n; ++x) {
            slot_begin.push_back(static_cast<std::uint32_t>(slot_kind.size()));
            collect(c.functor, c.structure[x], x);
        }
        slot_begin.push_back(static_cast<std::uint32_t>(slot_kind.size()));
        pred_begin.assign(n + 1, 0);
        for (StateId y : tgt) ++pred_begin[y + 1];
        for (std::size_t i = 0; i < n; ++i) pred_begin[i + 1] += pred_begin[i];
        pred.resize(tgt.size());
        std::vector<std::uint32_t> fill(pred_begin.begin(), pred_begin.end() - 1);
        for (std::uint32_t e = 0; e < tgt.size(); ++e) pred[fill[tgt[e]]++] = e;
    }
};

// Rebuilds an F-value from per-slot pieces, walking only the skeleton of a term.
template <class SlotFn>
FValue build_value(const FunctorExpr& f, const Term& t, std::uint32_t& slot, const SlotFn& fn) {
    switch (f.kind) {
    case FK::Identity: return fn(slot++);
    case FK::Constant: return FValue::atom(t.tag);
    case FK::Powerset:
    case FK::Monoid:
    case FK::Distribution: return fn(slot++);
    case FK::Signature: {
        std::vector<Colour> args;
        args.reserve(t.items.size());
        for (std::size_t i = 0; i < t.items.size(); ++i) args.push_back(fn(slot++).tag);
        return FValue::op(t.tag, std::move(args));
    }
    case FK::Product: {
        std::vector<FValue> items;
        items.reserve(t.items.size());
        for (std::size_t i = 0; i < t.items.size(); ++i) items.push_back(build_value(f.children[i], t.items[i], slot, fn));
        return FValue::tuple(std::move(items));
    }
    case FK::Exponent: {
        std::vector<FValue> items;
        items.reserve(t.items.size());
        for (const auto& it : t.items) items.push_back(build_value(f.children[0], it, slot, fn));
        return FValue::tuple(std::move(items));
    }
    case FK::Coproduct: return FValue::inj(t.tag, build_value(f.children[t.tag], t.items[0], slot, fn));
    case FK::Composite: break;
    }
    throw IncompatibleError("composite functor reached the refiner; desugar first");
}

struct GroupKey {
    BlockId block;
    FValue value;
    friend bool operator==(const GroupKey&, const GroupKey&) = default;
};

struct GroupKeyHash {
    std::size_t operator()(const GroupKey& k) const { return k.value.hash() * 31 + k.block; }
};

}  // namespace

struct Refiner::Impl {
    const Coalgebra& c;
    RefineMode mode;
    RefineOptions opts;
    EdgeIndex idx;
    RefinablePartition part;
    RefinementTrace trace;
    RefineStats stats;
    std::vector<std::pair<StateId, FValue>> keys;

    // Compound blocks.
    std::vector<CompoundId> compound_of;                 // per P-block
    std::vector<std::vector<BlockId>> compound_members;  // per compound
    std::vector<std::uint32_t> member_pos;               // per P-block: index in its compound's list
    std::vector<std::size_t> compound_size;              // states per compound
    std::vector<bool> queued;
    std::deque<CompoundId> queue;

    // Weight cells: per (state, compound) summaries of edges into the compound, one entry per slot.
    std::vector<std::uint32_t> edge_cell;
    std::vector<std::uint32_t> cell_off;
    std::vector<std::int64_t> cnt_pool;
    std::vector<Rational> wt_pool;

    // Per-iteration scratch.
    std::vector<std::uint32_t> stamp;
    std::vector<std::uint32_t> old_cell, new_cell;
    std::vector<std::uint32_t> block_stamp;
    std::vector<std::uint32_t> block_slot;
    std::uint32_t iter = 0;
    std::vector<std::uint32_t> s_role;
    std::size_t role_limit = 1;

    Impl(const Coalgebra& coalg, RefineMode m, RefineOptions o) : c(coalg), mode(m), opts(o), idx(coalg) {
        if (contains_composite(c.functor)) throw IncompatibleError("composite functor: desugar before refining");
        (void)is_zippable(c.functor);
        if (mode == RefineMode::Cancellative && !is_cancellative(c.functor))
            throw IncompatibleError("functor " + to_string(c.functor) + " is not cancellative");
        std::size_t n = c.n();
        trace.mode = mode;
        trace.n = n;
        auto [p, values] = initial_partition(c);
        part = std::move(p);
        trace.init_block_of = part.assignment();
        trace.init_values = values;
        stats.initial_blocks = part.block_count();
        role_limit = n > 0 ? static_cast<std::size_t>(std::bit_width(n)) : 1;  // floor(log2 n) + 1
        s_role.assign(n, 0);
        stamp.assign(n, UINT32_MAX);
        old_cell.assign(n, 0);
        new_cell.assign(n, 0);

        if (n > 0) {
            compound_members.push_back({});
            compound_size.push_back(n);
            queued.push_back(false);
            for (BlockId b = 0; b < part.block_count(); ++b) add_member(0, b);
            if (compound_members[0].size() >= 2) enqueue(0);
        }

        if (mode != RefineMode::Naive) {
            edge_cell.assign(idx.tgt.size(), UINT32_MAX);
            if (mode == RefineMode::Generic) {
                for (StateId x = 0; x < n; ++x) {
                    std::uint32_t first = idx.slot_begin[x], last = idx.slot_begin[x + 1];
                    bool any = false;
                    for (std::uint32_t g = first; g < last; ++g) any |= idx.slot_count[g] > 0;
                    if (!any) continue;
                    std::uint32_t cell = alloc_cell(x);
                    for (std::uint32_t g = first; g < last; ++g) {
                        cnt_pool[cell_off[cell] + (g - first)] = idx.slot_count[g];
                        if (idx.weighted) wt_pool[cell_off[cell] + (g - first)] = idx.slot_weight[g];
                    }
                    new_cell[x] = cell;
                }
                for (std::uint32_t e = 0; e < idx.src.size(); ++e) edge_cell[e] = new_cell[idx.src[e]];
            }
        }
    }

    void add_member(CompoundId k, BlockId b) {
        if (compound_of.size() <= b) {
            compound_of.resize(b + 1);
            member_pos.resize(b + 1);
        }
        compound_of[b] = k;
        member_pos[b] = static_cast<std::uint32_t>(compound_members[k].size());
        compound_members[k].push_back(b);
    }

    void remove_member(CompoundId k, BlockId b) {
        auto& list = compound_members[k];
        std::uint32_t i = member_pos[b];
        BlockId last = list.back();
        list[i] = last;
        member_pos[last] = i;
        list.pop_back();
    }

    void enqueue(CompoundId k) {
        if (queued[k]) return;
        queued[k] = true;
        queue.push_back(k);
    }

    std::uint32_t alloc_cell(StateId x) {
        std::uint32_t width = idx.slot_begin[x + 1] - idx.slot_begin[x];
        auto cell = static_cast<std::uint32_t>(cell_off.size());
        cell_off.push_back(static_cast<std::uint32_t>(cnt_pool.size()));
        cnt_pool.resize(cnt_pool.size() + width, 0);
        if (idx.weighted) wt_pool.resize(wt_pool.size() + width);
        return cell;
    }

    // Slot piece over palette 3 from counts into S, into B (before the split) and in total.
    FValue piece3(std::uint32_t g, std::uint32_t off_s, std::uint32_t off_b, std::uint32_t local, bool with_s) const {
        std::int64_t cs = with_s ? cnt_pool[off_s + local] : 0;
        std::int64_t cb = cnt_pool[off_b + local];
        std::int64_t tot = idx.slot_count[g];
        switch (idx.slot_kind[g]) {
        case SlotKind::Scalar: return FValue::colour(cs > 0 ? 2 : cb > 0 ? 1 : 0);
        case SlotKind::Set: {
            std::vector<Colour> cols;
            if (tot - cb > 0) cols.push_back(0);
            if (cb - cs > 0) cols.push_back(1);
            if (cs > 0) cols.push_back(2);
            return FValue::colour_set(std::move(cols));
        }
        case SlotKind::Weighted: {
            std::vector<Rational> ws(3);
            const Rational& wb = wt_pool[off_b + local];
            ws[0] = idx.slot_weight[g] - wb;
            if (with_s) {
                ws[2] = wt_pool[off_s + local];
                ws[1] = wb - ws[2];
            } else {
                ws[1] = wb;
            }
            return FValue::weight_vector(std::move(ws));
        }
        }
        return {};
    }

    // Slot piece over palette 2 from counts into S and totals.
    FValue piece2(std::uint32_t g, std::uint32_t off_s, std::uint32_t local, bool with_s) const {
        std::int64_t cs = with_s ? cnt_pool[off_s + local] : 0;
        std::int64_t tot = idx.slot_count[g];
        switch (idx.slot_kind[g]) {
        case SlotKind::Scalar: return FValue::colour(cs > 0 ? 1 : 0);
        case SlotKind::Set: {
            std::vector<Colour> cols;
            if (tot - cs > 0) cols.push_back(0);
            if (cs > 0) cols.push_back(1);
            return FValue::colour_set(std::move(cols));
        }
        case SlotKind::Weighted: {
            std::vector<Rational> ws(2);
            if (with_s) ws[1] = wt_pool[off_s + local];
            ws[0] = idx.slot_weight[g] - ws[1];
            return FValue::weight_vector(std::move(ws));
        }
        }
        return {};
    }

    FValue value_of(StateId x, bool with_s) {
        std::uint32_t first = idx.slot_begin[x];
        std::uint32_t slot = 0;
        std::uint32_t off_s = cell_off[new_cell[x]];
        if (mode == RefineMode::Cancellative) {
            return build_value(c.functor, c.structure[x], slot,
                               [&](std::uint32_t local) { return piece2(first + local, off_s, local, with_s); });
        }
        std::uint32_t off_b = cell_off[old_cell[x]];
        return build_value(c.functor, c.structure[x], slot,
                           [&](std::uint32_t local) { return piece3(first + local, off_s, off_b, local, with_s); });
    }

    bool step() {
        CompoundId B = UINT32_MAX;
        while (!queue.empty()) {
            CompoundId k = queue.front();
            queue.pop_front();
            queued[k] = false;
            if (compound_members[k].size() >= 2) {
                B = k;
                break;
            }
        }
        if (B == UINT32_MAX) return false;
        ++iter;
        ++stats.iterations;

        BlockId b0 = compound_members[B][0], b1 = compound_members[B][1];
        BlockId S = part.block_size(b1) < part.block_size(b0) ? b1 : b0;
        std::size_t s_size = part.block_size(S);
        if (2 * s_size > compound_size[B]) throw VerificationError("splitter larger than half its compound");

        remove_member(B, S);
        compound_size[B] -= s_size;
        auto K = static_cast<CompoundId>(compound_members.size());
        compound_members.push_back({});
        compound_size.push_back(s_size);
        queued.push_back(false);
        add_member(K, S);
        if (compound_members[B].size() >= 2) enqueue(B);

        for (StateId y : part.members(S)) {
            if (++s_role[y] > role_limit) throw VerificationError("state used as splitter more than log2(n)+1 times");
            stats.max_splitter_role = std::max<std::size_t>(stats.max_splitter_role, s_role[y]);
        }

        TraceSplit ev{S, B, K, {}};
        if (mode == RefineMode::Naive) naive_refine(S, B, ev);
        else fast_refine(S, ev);
        trace.splits.push_back(std::move(ev));

        if (opts.audit) audit();
        return true;
    }

    struct Group {
        FValue value;
        std::vector<StateId> states;
    };
    struct BlockWork {
        BlockId block;
        FValue default_value;
        std::vector<std::size_t> groups;
        std::size_t grouped = 0;
    };

    void fast_refine(BlockId S, TraceSplit& ev) {
        keys.clear();
        std::vector<StateId> touched;
        // Collect edges into S, moving them to fresh cells.
        std::vector<StateId> s_members(part.members(S).begin(), part.members(S).end());
        for (StateId y : s_members) {
            for (std::uint32_t pi = idx.pred_begin[y]; pi < idx.pred_begin[y + 1]; ++pi) {
                std::uint32_t e = idx.pred[pi];
                StateId x = idx.src[e];
                ++stats.visited_edges;
                if (stamp[x] != iter) {
                    stamp[x] = iter;
                    touched.push_back(x);
                    if (mode == RefineMode::Generic) old_cell[x] = edge_cell[e];
                    new_cell[x] = alloc_cell(x);
                }
                if (mode == RefineMode::Generic) edge_cell[e] = new_cell[x];
                std::uint32_t local = idx.slot[e] - idx.slot_begin[x];
                std::uint32_t off = cell_off[new_cell[x]] + local;
                ++cnt_pool[off];
                if (idx.weighted) wt_pool[off] += idx.weight[e];
            }
        }

        std::vector<Group> groups;
        std::vector<BlockWork> work;
        std::unordered_map<GroupKey, std::size_t, GroupKeyHash> group_index;
        if (block_stamp.size() < part.block_count()) {
            block_stamp.resize(part.block_count(), UINT32_MAX);
            block_slot.resize(part.block_count(), 0);
        }
        for (StateId x : touched) {
            BlockId T = part.block_of(x);
            FValue v = value_of(x, true);
            ++stats.key_computations;
            if (block_stamp[T] != iter) {
                block_stamp[T] = iter;
                block_slot[T] = static_cast<std::uint32_t>(work.size());
                work.push_back({T, value_of(x, false), {}, 0});
            }
            BlockWork& w = work[block_slot[T]];
            keys.emplace_back(x, v);
            if (mode == RefineMode::Generic) {
                std::uint32_t off_b = cell_off[old_cell[x]], off_s = cell_off[new_cell[x]];
                std::uint32_t width = idx.slot_begin[x + 1] - idx.slot_begin[x];
                for (std::uint32_t i = 0; i < width; ++i) {
                    cnt_pool[off_b + i] -= cnt_pool[off_s + i];
                    if (idx.weighted) wt_pool[off_b + i] -= wt_pool[off_s + i];
                }
            }
            if (v == w.default_value) continue;
            auto [it, fresh] = group_index.try_emplace(GroupKey{T, v}, groups.size());
            if (fresh) {
                groups.push_back({std::move(v), {}});
                w.groups.push_back(it->second);
            }
            groups[it->second].states.push_back(x);
            ++w.grouped;
        }
        if (mode == RefineMode::Cancellative) {
            // Scratch cells are not referenced by edges; release them.
            if (!touched.empty()) {
                std::uint32_t first_cell = new_cell[touched.front()];
                cnt_pool.resize(cell_off[first_cell]);
                if (idx.weighted) wt_pool.resize(cell_off[first_cell]);
                cell_off.resize(first_cell);
            }
        }
        for (BlockWork& w : work) {
            if (w.groups.empty()) continue;
            bool default_nonempty = w.grouped < part.block_size(w.block);
            if (!default_nonempty && w.groups.size() == 1) continue;
            TraceRefinement ref{w.block, {}};
            std::size_t from = 0;
            if (default_nonempty) {
                ref.children.push_back({w.block, w.default_value, {}});
            } else {
                ref.children.push_back({w.block, groups[w.groups[0]].value, {}});
                from = 1;
            }
            for (std::size_t gi = from; gi < w.groups.size(); ++gi) {
                Group& g = groups[w.groups[gi]];
                ref.children.push_back(split_off(w.block, g.states, std::move(g.value)));
            }
            stats.child_records += ref.children.size();
            ev.refined.push_back(std::move(ref));
        }
    }

    TraceChild split_off(BlockId T, std::vector<StateId>& states, FValue value) {
        for (StateId s : states) part.mark(s);
        auto nb = part.split_marked(T);
        if (!nb) throw VerificationError("degenerate split of a refined block");
        CompoundId k = compound_of[T];
        add_member(k, *nb);
        if (compound_members[k].size() >= 2) enqueue(k);
        ++stats.new_blocks;
        return {*nb, std::move(value), std::move(states)};
    }

    void naive_refine(BlockId S, CompoundId B, TraceSplit& ev) {
        keys.clear();
        std::size_t n = c.n();
        auto colour = [&](StateId y, bool merge_s) -> Colour {
            BlockId b = part.block_of(y);
            if (b == S) return merge_s ? 1 : 2;
            return compound_of[b] == B ? 1 : 0;
        };
        std::vector<FValue> val(n);
        for (StateId x = 0; x < n; ++x) {
            val[x] = apply_coloring(c.functor, c.structure[x], 3, [&](StateId y) { return colour(y, false); });
            ++stats.key_computations;
            keys.emplace_back(x, val[x]);
        }
        std::size_t blocks = part.block_count();
        for (BlockId T = 0; T < blocks; ++T) {
            auto mem = part.members(T);
            StateId first = mem[0];
            FValue dflt =
                apply_coloring(c.functor, c.structure[first], 3, [&](StateId y) { return colour(y, true); });
            std::vector<FValue> values;
            std::vector<std::vector<StateId>> groups;
            std::unordered_map<FValue, std::size_t, FValueHash> gi;
            for (StateId x : mem) {
                auto [it, fresh] = gi.try_emplace(val[x], values.size());
                if (fresh) {
                    values.push_back(val[x]);
                    groups.emplace_back();
                }
                groups[it->second].push_back(x);
            }
            if (groups.size() == 1) continue;
            std::size_t kept = 0;
            if (auto it = gi.find(dflt); it != gi.end()) kept = it->second;
            TraceRefinement ref{T, {}};
            ref.children.push_back({T, values[kept], {}});
            for (std::size_t g = 0; g < groups.size(); ++g) {
                if (g == kept) continue;
                ref.children.push_back(split_off(T, groups[g], values[g]));
            }
            stats.child_records += ref.children.size();
            ev.refined.push_back(std::move(ref));
        }
    }

    void audit() const {
        part.audit();
        std::vector<std::size_t> sizes(compound_members.size(), 0);
        for (CompoundId k = 0; k < compound_members.size(); ++k) {
            for (std::uint32_t i = 0; i < compound_members[k].size(); ++i) {
                BlockId b = compound_members[k][i];
                if (compound_of[b] != k || member_pos[b] != i) throw VerificationError("compound index inconsistent");
                sizes[k] += part.block_size(b);
            }
            if (sizes[k] != compound_size[k]) throw VerificationError("compound size inconsistent");
            if (compound_members[k].size() >= 2 && !queued[k]) throw VerificationError("unstable compound not queued");
        }
        std::size_t listed = 0;
        for (const auto& m : compound_members) listed += m.size();
        if (listed != part.block_count()) throw VerificationError("blocks missing from compounds");
    }
};

Refiner::Refiner(const Coalgebra& c, RefineMode mode, RefineOptions opts)
    : impl_(std::make_unique<Impl>(c, mode, opts)) {}
Refiner::~Refiner() = default;
Refiner::Refiner(Refiner&&) noexcept = default;
Refiner& Refiner::operator=(Refiner&&) noexcept = default;

bool Refiner::step() { return impl_->step(); }

void Refiner::run() {
    while (impl_->step()) {
    }
}

PartitionResult Refiner::finish() {
    run();
    return {std::move(impl_->part), std::move(impl_->trace), impl_->stats};
}

const RefinablePartition& Refiner::partition() const { return impl_->part; }
const std::vector<std::pair<StateId, FValue>>& Refiner::last_keys() const { return impl_->keys; }
const RefineStats& Refiner::stats() const { return impl_->stats; }

PartitionResult refine(const Coalgebra& c, RefineMode mode, RefineOptions opts) {
    return Refiner(c, mode, opts).finish();
}

RefinablePartition replay(const RefinementTrace& trace) {
    auto p = RefinablePartition::from_assignment(trace.init_block_of);
    if (trace.init_block_of.size() != trace.n) throw VerificationError("trace has wrong state count");
    for (const auto& ev : trace.splits) {
        for (const auto& ref : ev.refined) {
            if (ref.parent >= p.block_count()) throw VerificationError("trace refers to an unknown block");
            for (std::size_t i = 1; i < ref.children.size(); ++i) {
                const auto& ch = ref.children[i];
                for (StateId s : ch.moved) {
                    if (p.block_of(s) != ref.parent) throw VerificationError("trace moves a state from another block");
                    p.mark(s);
                }
                auto nb = p.split_marked(ref.parent);
                if (!nb || *nb != ch.id) throw VerificationError("trace block ids do not replay");
            }
        }
    }
    return p;
}

}  // namespace cocert
