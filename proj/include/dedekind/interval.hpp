#pragma once

// Exact interval sizes |[bottom, top]| in the antichain lattice.
//
// [alpha,beta] maps to the downsets of the induced subposet Q = cells(beta) - cells(alpha),
// counted by the antichain recursion  A(Q) = A(Q \ {x}) + A(Q \ comparables(x))
// and memoized on the Q bitmask. Every induced subposet of the 7-element subset
// lattice has at most D(7) ~ 2.4e12 antichains, so the memo values fit in 64 bits.
//
// The cache accepts concurrent readers; writers are serialized per shard. Results
// do not depend on cache state.

#include <atomic>
#include <cstdint>
#include <shared_mutex>
#include <unordered_map>

#include "dedekind/antichain.hpp"
#include "dedekind/bigcount.hpp"

namespace dedekind {

struct IntervalQuery {
    Antichain bottom;
    Antichain top; // same base; the interval is empty unless bottom <= top
};

class IntervalCounter {
public:
    // max_entries = 0 means unbounded; at the cap new results are computed but not stored.
    explicit IntervalCounter(std::size_t max_entries = 0) : max_entries_(max_entries) {}

    BigCount interval_size(const Antichain& bottom, const Antichain& top);
    BigCount interval_size(const IntervalQuery& q) { return interval_size(q.bottom, q.top); }

    // Number of monotone subsets of a (downsets below it): interval_size(bottom, a).
    BigCount monotone_subset_count(const Antichain& a);

    // Fast paths for the engines. interval_size_u64 returns 0 when bottom is not <= top.
    std::uint64_t interval_size_u64(CellMask bottom_cells, CellMask top_cells);
    std::uint64_t downset_count(CellMask poset_cells);

    struct Stats {
        std::uint64_t hits = 0;
        std::uint64_t misses = 0;
        std::size_t entries = 0;
    };
    Stats stats() const;
    void set_max_entries(std::size_t cap) { max_entries_ = cap; }
    void clear();

private:
    static constexpr int kShards = 16;
    struct Shard {
        mutable std::shared_mutex mutex;
        std::unordered_map<CellMask, std::uint64_t, CellMaskHash> map;
    };
    std::uint64_t compute(CellMask q);

    Shard shards_[kShards];
    std::atomic<std::uint64_t> hits_{0};
    std::atomic<std::uint64_t> misses_{0};
    std::atomic<std::size_t> max_entries_;
};

// Process-wide cache shared by the engines and the CLI.
IntervalCounter& shared_interval_counter();

} // namespace dedekind
