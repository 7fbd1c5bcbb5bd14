#include "dedekind/interval.hpp"

#include <mutex>

namespace dedekind {

BigCount IntervalCounter::interval_size(const Antichain& bottom, const Antichain& top) {
    check_same_base(bottom, top);
    return bigcount_from_u128(interval_size_u64(antichain_cells(bottom), antichain_cells(top)));
}

BigCount IntervalCounter::monotone_subset_count(const Antichain& a) {
    return bigcount_from_u128(downset_count(antichain_cells(a)));
}

std::uint64_t IntervalCounter::interval_size_u64(CellMask bottom_cells, CellMask top_cells) {
    if (bottom_cells & ~top_cells) return 0;
    return downset_count(top_cells & ~bottom_cells);
}

std::uint64_t IntervalCounter::downset_count(CellMask q) {
    if (q == 0) return 1;
    if ((q & (q - 1)) == 0) return 2;

    Shard& shard = shards_[CellMaskHash{}(q) % kShards];
    {
        std::shared_lock lock(shard.mutex);
        auto it = shard.map.find(q);
        if (it != shard.map.end()) {
            hits_.fetch_add(1, std::memory_order_relaxed);
            return it->second;
        }
    }
    misses_.fetch_add(1, std::memory_order_relaxed);
    std::uint64_t result = compute(q);
    std::size_t cap = max_entries_.load(std::memory_order_relaxed);
    std::unique_lock lock(shard.mutex);
    if (cap == 0 || shard.map.size() < cap / kShards + 1)
        shard.map.emplace(q, result);
    return result;
}

std::uint64_t IntervalCounter::compute(CellMask q) {
    // pivot on the cell with the most comparable partners; ties to the lowest cell
    int pivot = -1, best = -1;
    CellMask rest = q;
    while (rest) {
        int c = countr_zero128(rest);
        rest &= rest - 1;
        CellMask comp =
            (subset_cells(static_cast<SetMask>(c)) | superset_cells(static_cast<SetMask>(c))) & q;
        int deg = popcount128(comp);
        if (deg > best) {
            best = deg;
            pivot = c;
        }
    }
    CellMask comparables =
        (subset_cells(static_cast<SetMask>(pivot)) | superset_cells(static_cast<SetMask>(pivot))) & q;
    std::uint64_t without = downset_count(q & ~cell_bit(pivot));
    std::uint64_t with = downset_count(q & ~comparables);
    return without + with; // <= D(7), no overflow
}

IntervalCounter::Stats IntervalCounter::stats() const {
    Stats s;
    s.hits = hits_.load(std::memory_order_relaxed);
    s.misses = misses_.load(std::memory_order_relaxed);
    for (const Shard& shard : shards_) {
        std::shared_lock lock(shard.mutex);
        s.entries += shard.map.size();
    }
    return s;
}

void IntervalCounter::clear() {
    for (Shard& shard : shards_) {
        std::unique_lock lock(shard.mutex);
        shard.map.clear();
    }
    hits_ = 0;
    misses_ = 0;
}

IntervalCounter& shared_interval_counter() {
    static IntervalCounter counter;
    return counter;
}

} // namespace dedekind
