#include "dedekind/oracle.hpp"

#include <algorithm>

namespace dedekind::oracle {

std::vector<Antichain> all_antichains(int n, const Limits& limits) {
    std::vector<Antichain> out;
    for_each_antichain(
        n, [&](Antichain a) { out.push_back(std::move(a)); }, limits);
    std::sort(out.begin(), out.end(), downset_value_less);
    return out;
}

std::uint64_t count_antichains(int n, const Limits& limits) {
    check_base(n);
    if (n > limits.max_enumeration_n)
        throw capability_error("antichain enumeration capped at n=" +
                               std::to_string(limits.max_enumeration_n));
    std::uint64_t count = 0;
    for_each_downset(n, [&](CellMask) { ++count; });
    return count;
}

std::vector<Antichain> interval_members(const Antichain& bottom, const Antichain& top,
                                        const Limits& limits) {
    check_same_base(bottom, top);
    std::vector<Antichain> out;
    CellMask lo = antichain_cells(bottom);
    CellMask hi = antichain_cells(top);
    if (lo & ~hi) return out; // empty interval
    for_each_downset_between(lo, hi & ~lo, bottom.n, [&](CellMask d) {
        if (out.size() >= limits.max_interval_members)
            throw capability_error("interval has more members than the materialization limit");
        out.push_back(antichain_from_cells(d, bottom.n));
    });
    std::sort(out.begin(), out.end(), downset_value_less);
    return out;
}

std::uint64_t count_interval(const Antichain& bottom, const Antichain& top) {
    check_same_base(bottom, top);
    CellMask lo = antichain_cells(bottom);
    CellMask hi = antichain_cells(top);
    if (lo & ~hi) return 0;
    std::uint64_t count = 0;
    for_each_downset_between(lo, hi & ~lo, bottom.n, [&](CellMask) { ++count; });
    return count;
}

std::vector<SolutionTuple> solve_system(const SystemInstance& inst, const SolveOptions& opts,
                                        const Limits& limits) {
    inst.validate();
    int n = inst.alpha.n;
    int r = inst.r;

    std::vector<Antichain> universe;
    if (opts.unrestricted) {
        universe = all_antichains(n, limits);
    } else {
        // antichain subsets of the member sets of alpha and all right-hand sides
        std::vector<SetMask> pool = inst.alpha.sets;
        for (const Antichain& b : inst.betas) pool.insert(pool.end(), b.sets.begin(), b.sets.end());
        std::sort(pool.begin(), pool.end(), set_less);
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

        std::vector<SetMask> chosen;
        auto emit = [&](auto&& self, std::size_t idx) -> void {
            if (idx == pool.size()) {
                universe.push_back(Antichain::from_sets(chosen, n));
                return;
            }
            self(self, idx + 1);
            bool compatible = true;
            for (SetMask c : chosen)
                if ((c & ~pool[idx]) == 0 || (pool[idx] & ~c) == 0) {
                    compatible = false;
                    break;
                }
            if (compatible) {
                chosen.push_back(pool[idx]);
                self(self, idx + 1);
                chosen.pop_back();
            }
        };
        emit(emit, 0);
    }

    // chi_k <= beta_ki for every i is immediate from the join equations
    std::vector<std::vector<const Antichain*>> candidates(r);
    for (const Antichain& cand : universe) {
        for (int k = 1; k <= r; ++k) {
            bool ok = true;
            for (int i = 1; i <= r && ok; ++i)
                if (i != k) ok = leq(cand, inst.beta(k, i));
            if (ok) candidates[k - 1].push_back(&cand);
        }
    }

    std::vector<SolutionTuple> solutions;
    std::vector<const Antichain*> pick(r, nullptr);
    std::uint64_t nodes = 0;
    auto search = [&](auto&& self, int k) -> void {
        if (++nodes > limits.max_solver_nodes)
            throw capability_error("solver exceeded the configured search budget");
        if (k == r) {
            Antichain m = *pick[0];
            for (int i = 1; i < r; ++i) m = meet(m, *pick[i]);
            if (m == inst.alpha) {
                SolutionTuple t;
                for (int i = 0; i < r; ++i) t.chi.push_back(*pick[i]);
                solutions.push_back(std::move(t));
            }
            return;
        }
        for (const Antichain* cand : candidates[k]) {
            bool ok = true;
            for (int prev = 0; prev < k && ok; ++prev)
                ok = join(*pick[prev], *cand) == inst.beta(prev + 1, k + 1);
            if (!ok) continue;
            pick[k] = cand;
            self(self, k + 1);
        }
    };
    search(search, 0);
    return solutions;
}

Antichain compose_extension(const std::vector<Antichain>& parts, int n, int k) {
    check_base(n);
    if (k < 0 || n + k > kMaxBase)
        throw invalid_input_error("extension exceeds the supported base size");
    if (parts.size() != (std::size_t{1} << k))
        throw invalid_input_error("expected one part per subset of the added elements");
    for (const Antichain& p : parts)
        if (p.n != n) throw invalid_input_error("parts must live over the original base");
    int added = (1 << k) - 1;
    for (int a = 0; a <= added; ++a)
        for (int b = 0; b <= added; ++b)
            if ((a & ~b) == 0 && !leq(parts[a], parts[b]))
                throw invalid_input_error("parts violate the monotone indexing condition");

    int big_n = n + k;
    Antichain result = Antichain::bottom(big_n);
    for (int a = 0; a <= added; ++a) {
        Antichain lifted(parts[a]);
        lifted.n = big_n;
        SetMask attach = static_cast<SetMask>((~a & added) << n);
        result = join(result, direct_product(lifted, Antichain::singleton(attach, big_n)));
    }
    return result;
}

std::vector<Antichain> decompose_extension(const Antichain& a, int k) {
    if (k < 0 || k > a.n) throw invalid_input_error("cannot remove more elements than the base has");
    int n = a.n - k;
    int added = (1 << k) - 1;
    CellMask cells = antichain_cells(a);
    std::vector<Antichain> parts;
    parts.reserve(std::size_t{1} << k);
    for (int sub = 0; sub <= added; ++sub) {
        SetMask attach = static_cast<SetMask>((~sub & added) << n);
        CellMask piece = 0;
        for (int x = 0; x < cell_count(n); ++x)
            if ((cells >> (x | attach)) & 1) piece |= cell_bit(x);
        parts.push_back(antichain_from_cells(piece, n));
    }
    return parts;
}

} // namespace dedekind::oracle
