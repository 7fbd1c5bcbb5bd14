#pragma once

// Brute-force ground truth. Everything here is deliberately naive: plain
// enumeration and direct equation checks, used to certify the counting
// formulas. No memoized recursion, no connection graphs.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "dedekind/antichain.hpp"
#include "dedekind/pcoef.hpp"

namespace dedekind::oracle {

// Visit every downset D with base <= D <= base|poset (as cell masks), where poset
// is disjoint from base. Cells are taken in (popcount, value) order so that a cell
// becomes addable exactly when all of its subposet predecessors are present.
template <typename F>
void for_each_downset_between(CellMask base, CellMask poset, int n, F&& fn) {
    check_base(n);
    std::vector<SetMask> order;
    order.reserve(static_cast<std::size_t>(popcount128(poset)));
    CellMask rest = poset;
    while (rest) {
        int c = countr_zero128(rest);
        rest &= rest - 1;
        order.push_back(static_cast<SetMask>(c));
    }
    std::sort(order.begin(), order.end(), set_less);
    std::vector<CellMask> pred(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        pred[i] = subset_cells(order[i]) & poset & ~cell_bit(order[i]);

    // explicit stack of (cell index, chosen cells so far)
    struct Frame {
        std::size_t idx;
        CellMask chosen;
    };
    std::vector<Frame> stack{{0, 0}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.idx == order.size()) {
            fn(base | f.chosen);
            continue;
        }
        stack.push_back({f.idx + 1, f.chosen}); // without this cell
        if ((pred[f.idx] & ~f.chosen) == 0)
            stack.push_back({f.idx + 1, f.chosen | cell_bit(order[f.idx])});
    }
}

template <typename F>
void for_each_downset(int n, F&& fn) {
    for_each_downset_between(CellMask{0}, all_cells(n), n, std::forward<F>(fn));
}

// Enumeration guards. The limits are explicit, not timeouts.
struct Limits {
    int max_enumeration_n = 6;
    std::uint64_t max_solver_nodes = 200'000'000;    // candidate-tuple visits before giving up
    std::uint64_t max_interval_members = 20'000'000; // materialized interval elements
};

// All antichains over {1..n}, ordered by downset mask. Throws capability_error
// past the enumeration guard.
std::vector<Antichain> all_antichains(int n, const Limits& limits = {});
std::uint64_t count_antichains(int n, const Limits& limits = {});

template <typename F>
void for_each_antichain(int n, F&& fn, const Limits& limits = {}) {
    check_base(n);
    if (n > limits.max_enumeration_n)
        throw capability_error("antichain enumeration capped at n=" +
                               std::to_string(limits.max_enumeration_n));
    for_each_downset(n, [&](CellMask d) { fn(antichain_from_cells(d, n)); });
}

// Exactly the antichains chi with bottom <= chi <= top, by direct enumeration.
// Throws capability_error when the interval exceeds the materialization limit.
std::vector<Antichain> interval_members(const Antichain& bottom, const Antichain& top,
                                        const Limits& limits = {});
std::uint64_t count_interval(const Antichain& bottom, const Antichain& top);

struct SolutionTuple {
    std::vector<Antichain> chi;
};

struct SolveOptions {
    // Default: member sets restricted to alpha u beta. Unrestricted searches all of
    // D_n and exists to validate that restriction rather than assume it.
    bool unrestricted = false;
};

// Every assignment of the r variables satisfying all equations of the instance.
std::vector<SolutionTuple> solve_system(const SystemInstance& inst, const SolveOptions& opts = {},
                                        const Limits& limits = {});

// Assemble an antichain over n+k from its 2^k components over n (indexed by subsets
// of the added elements, complements attached), and take it apart again.
// parts[A] <= parts[B] whenever A is a subset of B; violations are invalid input.
Antichain compose_extension(const std::vector<Antichain>& parts, int n, int k);
std::vector<Antichain> decompose_extension(const Antichain& a, int k);

} // namespace dedekind::oracle
