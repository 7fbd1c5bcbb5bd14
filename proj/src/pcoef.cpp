#include "dedekind/pcoef.hpp"

#include <algorithm>
#include <array>

namespace dedekind {

namespace {

// Path-compressing union-find over at most 128 vertices.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }

private:
    std::vector<int> parent_;
};

std::vector<SetMask> gamma_members(const SystemInstance& inst) {
    std::vector<SetMask> gamma;
    for (const Antichain& b : inst.betas)
        for (SetMask x : b.sets)
            if (!inst.alpha.contains(x)) gamma.push_back(x);
    std::sort(gamma.begin(), gamma.end(), set_less);
    gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
    return gamma;
}

// components of the connection graph, as vertex -> component id (0-based, by first vertex)
std::vector<int> connection_components(const std::vector<SetMask>& gamma, CellMask alpha_cells,
                                       int* count_out) {
    int v = static_cast<int>(gamma.size());
    UnionFind uf(v);
    for (int i = 0; i < v; ++i)
        for (int j = i + 1; j < v; ++j)
            if (directly_connected_cells(gamma[i], gamma[j], alpha_cells)) uf.unite(i, j);
    std::vector<int> id(v, -1);
    int next = 0;
    for (int i = 0; i < v; ++i) {
        int root = uf.find(i);
        if (id[root] < 0) id[root] = next++;
        id[i] = id[root];
    }
    if (count_out) *count_out = next;
    return id;
}

} // namespace

int SystemInstance::pair_index(int i, int j, int r) {
    if (i > j) std::swap(i, j);
    return (i - 1) * (2 * r - i) / 2 + (j - i - 1);
}

const Antichain& SystemInstance::beta(int i, int j) const {
    return betas[pair_index(i, j, r)];
}

void SystemInstance::validate() const {
    if (r < 2) throw invalid_input_error("system needs at least two variables");
    if (r > 11) throw capability_error("systems with more than 11 variables are not supported");
    if (static_cast<int>(betas.size()) != pair_count(r))
        throw invalid_input_error("expected " + std::to_string(pair_count(r)) +
                                  " right-hand sides, got " + std::to_string(betas.size()));
    for (const Antichain& b : betas)
        if (b.n != alpha.n) throw invalid_input_error("mismatched base sets in system");
}

bool directly_connected(const ElementSet& x, const ElementSet& y, const Antichain& alpha) {
    if (x.n != alpha.n || y.n != alpha.n) throw invalid_input_error("mismatched base sets");
    return !dominates(alpha, static_cast<SetMask>(x.bits & y.bits));
}

int connected_component_count(const Antichain& alpha, const Antichain& beta) {
    if (!leq(alpha, beta)) throw invalid_input_error("bottom is not below top");
    std::vector<SetMask> gamma;
    for (SetMask x : beta.sets)
        if (!alpha.contains(x)) gamma.push_back(x);
    int count = 0;
    connection_components(gamma, antichain_cells(alpha), &count);
    return count;
}

BigCount pair_solution_count(const Antichain& alpha, const Antichain& beta) {
    check_same_base(alpha, beta);
    if (!leq(alpha, beta)) return 0;
    return bigcount_pow2(static_cast<unsigned>(connected_component_count(alpha, beta)));
}

ConnectionDecomposition decompose_connections(const SystemInstance& inst) {
    inst.validate();
    for (const Antichain& b : inst.betas)
        if (!leq(inst.alpha, b)) throw invalid_input_error("alpha is not below every beta");

    ConnectionDecomposition out;
    out.r = inst.r;
    out.base_n = inst.alpha.n;
    std::vector<SetMask> gamma = gamma_members(inst);
    CellMask alpha_cells = antichain_cells(inst.alpha);
    int count = 0;
    std::vector<int> comp = connection_components(gamma, alpha_cells, &count);
    out.components.resize(count);

    int pairs = SystemInstance::pair_count(inst.r);
    for (int v = 0; v < static_cast<int>(gamma.size()); ++v) {
        ConnectionVertex vx;
        vx.set = gamma[v];
        vx.component = comp[v];
        int present = 0;
        for (int p = 0; p < pairs; ++p)
            if (inst.betas[p].contains(gamma[v])) ++present;
        vx.in_all = present == pairs;
        if (!vx.in_all) {
            for (int s = 1; s <= inst.r; ++s) {
                bool everywhere = true;
                for (int i = 1; i <= inst.r && everywhere; ++i)
                    if (i != s) everywhere = inst.beta(s, i).contains(gamma[v]);
                if (everywhere) vx.forced |= 1u << (s - 1);
            }
        }
        out.components[comp[v]].push_back(v);
        out.vertices.push_back(vx);
    }
    return out;
}

int component_weight(const ConnectionDecomposition& decomp, int component) {
    std::uint32_t forced_union = 0;
    bool has_in_all = false;
    for (int v : decomp.components[component]) {
        forced_union |= decomp.vertices[v].forced;
        has_in_all |= decomp.vertices[v].in_all;
    }
    std::uint32_t everyone = (decomp.r >= 32) ? ~0u : ((1u << decomp.r) - 1);
    if (has_in_all) return decomp.r - __builtin_popcount(forced_union);
    return forced_union == everyone ? 0 : 1;
}

SystemCount count_system_solutions(const SystemInstance& inst, ReductionOrder order) {
    inst.validate();
    SystemCount out;
    out.decomposition.r = inst.r;
    out.decomposition.base_n = inst.alpha.n;

    for (const Antichain& b : inst.betas)
        if (!leq(inst.alpha, b)) return out; // count 0 by convention

    std::vector<SetMask> gamma = gamma_members(inst);
    CellMask alpha_cells = antichain_cells(inst.alpha);
    for (SetMask x : gamma)
        if ((alpha_cells >> x) & 1) return out; // gamma set dominated by alpha: no solution

    int vcount = static_cast<int>(gamma.size());
    int comp_count = 0;
    std::vector<int> comp = connection_components(gamma, alpha_cells, &comp_count);

    int pairs = SystemInstance::pair_count(inst.r);
    std::vector<Antichain> cur(inst.betas);
    std::vector<char> alive(vcount, 1);
    std::vector<std::uint32_t> forced(vcount, 0);
    std::vector<char> processed(vcount, 0);

    auto is_maximal_alive = [&](int v) {
        for (int w = 0; w < vcount; ++w)
            if (w != v && alive[w] && (gamma[v] & ~gamma[w]) == 0 && gamma[v] != gamma[w])
                return false;
        return true;
    };

    // Reduce set by set: a maximal gamma set missing from some current right-hand side
    // has its variable memberships forced. Removing it re-exposes its strict subsets
    // in exactly the right-hand sides it was removed from.
    bool feasible = true;
    while (feasible) {
        int chosen = -1;
        for (int v = 0; v < vcount; ++v) {
            if (!alive[v] || !is_maximal_alive(v)) continue;
            bool in_all = true;
            for (int p = 0; p < pairs && in_all; ++p) in_all = cur[p].contains(gamma[v]);
            if (in_all) continue;
            if (chosen < 0) {
                chosen = v;
                continue;
            }
            int pv = popcount(gamma[v]), pc = popcount(gamma[chosen]);
            bool better = order == ReductionOrder::kLargestFirst
                              ? (pv > pc || (pv == pc && gamma[v] < gamma[chosen]))
                              : (pv < pc || (pv == pc && gamma[v] < gamma[chosen]));
            if (better) chosen = v;
        }
        if (chosen < 0) break;
        SetMask x = gamma[chosen];

        std::uint32_t s_x = 0;
        for (int s = 1; s <= inst.r; ++s) {
            bool everywhere = true;
            for (int i = 1; i <= inst.r && everywhere; ++i)
                if (i != s) everywhere = cur[SystemInstance::pair_index(s, i, inst.r)].contains(x);
            if (everywhere) s_x |= 1u << (s - 1);
        }
        // every equation whose right-hand side contains x must get it from chi_i or chi_j
        for (int i = 1; i <= inst.r && feasible; ++i)
            for (int j = i + 1; j <= inst.r && feasible; ++j)
                if (cur[SystemInstance::pair_index(i, j, inst.r)].contains(x) &&
                    !(s_x & ((1u << (i - 1)) | (1u << (j - 1)))))
                    feasible = false;
        if (!feasible) break;

        forced[chosen] = s_x;
        alive[chosen] = 0;
        processed[chosen] = 1;
        std::vector<int> removed_from;
        for (int p = 0; p < pairs; ++p) {
            auto it = std::find(cur[p].sets.begin(), cur[p].sets.end(), x);
            if (it != cur[p].sets.end()) {
                cur[p].sets.erase(it);
                removed_from.push_back(p);
            }
        }
        for (int v = 0; v < vcount; ++v) {
            if (!alive[v] || (gamma[v] & ~x) || gamma[v] == x) continue;
            Antichain lifted = Antichain::singleton(gamma[v], inst.alpha.n);
            for (int p : removed_from) cur[p] = join(cur[p], lifted);
        }
    }

    // breakdown record: vertices with reduction-forced sets, or in_all for the survivors
    out.decomposition.components.resize(comp_count);
    for (int v = 0; v < vcount; ++v) {
        ConnectionVertex vx;
        vx.set = gamma[v];
        vx.component = comp[v];
        vx.forced = forced[v];
        vx.in_all = alive[v] != 0;
        out.decomposition.components[comp[v]].push_back(v);
        out.decomposition.vertices.push_back(vx);
    }
    if (!feasible) {
        out.feasible = false;
        return out;
    }

    // Component weights. Survivors are grouped into residual components (their
    // connection graph after the forced sets are gone); each residual component
    // carries one free choice of omitted variable, which must avoid every variable
    // forced to hold a directly connected processed set.
    UnionFind residual(vcount);
    for (int i = 0; i < vcount; ++i)
        for (int j = i + 1; j < vcount; ++j)
            if (alive[i] && alive[j] && directly_connected_cells(gamma[i], gamma[j], alpha_cells))
                residual.unite(i, j);
    std::vector<std::uint32_t> residual_blocked(vcount, 0);
    for (int i = 0; i < vcount; ++i) {
        if (!processed[i] || forced[i] == 0) continue;
        for (int j = 0; j < vcount; ++j)
            if (alive[j] && directly_connected_cells(gamma[i], gamma[j], alpha_cells))
                residual_blocked[residual.find(j)] |= forced[i];
    }

    // A component whose forced sets occupy every variable can still leave the meet
    // equation intact: only a full tuple of forced sets, one per variable, with an
    // undominated common intersection rules solutions out. Search those tuples with
    // pruning (once a partial intersection is dominated, every extension is).
    auto forced_tuple_violation = [&](const std::vector<int>& members) {
        std::vector<std::vector<SetMask>> per_var(inst.r);
        for (int v : members)
            if (processed[v])
                for (int s = 0; s < inst.r; ++s)
                    if (forced[v] & (1u << s)) per_var[s].push_back(gamma[v]);
        for (const auto& slot : per_var)
            if (slot.empty()) return false;
        auto dfs = [&](auto&& self, int var, SetMask partial) -> bool {
            if ((alpha_cells >> partial) & 1) return false;
            if (var == inst.r) return true; // undominated full intersection
            for (SetMask x : per_var[var])
                if (self(self, var + 1, static_cast<SetMask>(partial & x))) return true;
            return false;
        };
        return dfs(dfs, 0, full_set(inst.alpha.n));
    };

    BigCount total = 1;
    out.component_weights.reserve(comp_count);
    for (int c = 0; c < comp_count; ++c) {
        BigCount weight = 1;
        for (int v : out.decomposition.components[c])
            if (alive[v] && residual.find(v) == v)
                weight *= inst.r - __builtin_popcount(residual_blocked[v]);
        if (forced_tuple_violation(out.decomposition.components[c])) weight = 0;
        total *= weight;
        out.component_weights.push_back(std::move(weight));
    }
    out.count = std::move(total);
    return out;
}

BigCount system_solution_count(const SystemInstance& inst, ReductionOrder order) {
    return count_system_solutions(inst, order).count;
}

u128 system_solution_count_u128(const SystemInstance& inst) {
    u128 out = 0;
    if (!bigcount_to_u128(system_solution_count(inst), &out))
        throw capability_error("solution count exceeds 128 bits");
    return out;
}

} // namespace dedekind
