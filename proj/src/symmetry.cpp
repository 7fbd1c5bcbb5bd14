#include "dedekind/symmetry.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace dedekind {

namespace {

// Per-permutation cell relabeling tables, built once for every base size.
struct PermTable {
    std::vector<Permutation> perms;
    std::vector<std::array<std::uint8_t, 128>> cell_maps;
};

PermTable build_table(int n) {
    PermTable t;
    std::array<std::uint8_t, kMaxBase> values{};
    std::iota(values.begin(), values.begin() + n, static_cast<std::uint8_t>(1));
    do {
        Permutation p;
        p.n = n;
        std::copy(values.begin(), values.begin() + n, p.image.begin());
        std::array<std::uint8_t, 128> map{};
        for (int c = 0; c < cell_count(n); ++c)
            map[c] = p.apply_set(static_cast<SetMask>(c));
        t.perms.push_back(p);
        t.cell_maps.push_back(map);
    } while (std::next_permutation(values.begin(), values.begin() + n));
    return t;
}

const PermTable& perm_table(int n) {
    check_base(n);
    static const std::array<PermTable, kMaxBase + 1> tables = [] {
        std::array<PermTable, kMaxBase + 1> t;
        for (int n = 0; n <= kMaxBase; ++n) t[n] = build_table(n);
        return t;
    }();
    return tables[n];
}

CellMask permute_cells(CellMask cells, const std::array<std::uint8_t, 128>& map) {
    CellMask out = 0;
    while (cells) {
        int c = countr_zero128(cells);
        cells &= cells - 1;
        out |= cell_bit(map[c]);
    }
    return out;
}

struct MinOrbit {
    CellMask representative;
    std::uint64_t stabilizer;
};

MinOrbit min_over_orbit(CellMask cells, int n) {
    const PermTable& t = perm_table(n);
    CellMask best = cells;
    std::uint64_t stab = 0;
    for (const auto& map : t.cell_maps) {
        CellMask img = permute_cells(cells, map);
        if (img == cells) ++stab;
        if (img < best) best = img;
    }
    return {best, stab};
}

} // namespace

Permutation Permutation::identity(int n) {
    check_base(n);
    Permutation p;
    p.n = n;
    for (int i = 0; i < n; ++i) p.image[i] = static_cast<std::uint8_t>(i + 1);
    return p;
}

SetMask Permutation::apply_set(SetMask x) const {
    SetMask out = 0;
    for (int i = 0; i < n; ++i)
        if (x & (1u << i)) out |= static_cast<SetMask>(1u << (image[i] - 1));
    return out;
}

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

const std::vector<Permutation>& all_permutations(int n) { return perm_table(n).perms; }

Antichain apply(const Permutation& p, const Antichain& a) {
    if (p.n != a.n) throw invalid_input_error("mismatched base sets");
    std::vector<SetMask> sets;
    sets.reserve(a.sets.size());
    for (SetMask x : a.sets) sets.push_back(p.apply_set(x));
    return Antichain::from_sets(std::move(sets), a.n);
}

CanonicalClass canonical_form(const Antichain& a) {
    MinOrbit m = min_over_orbit(antichain_cells(a), a.n);
    CanonicalClass c;
    c.representative = antichain_from_cells(m.representative, a.n);
    c.orbit_size = factorial(a.n) / m.stabilizer;
    return c;
}

std::vector<CanonicalClass> equivalence_classes(int n) {
    check_base(n);
    if (n > 6) throw capability_error("class enumeration is limited to base sets of size 6");

    // DFS over canonical downsets: every class is reachable from the empty downset
    // by adding one addable cell at a time and canonicalizing.
    std::unordered_set<CellMask, CellMaskHash> seen;
    std::vector<CellMask> stack;
    seen.insert(0);
    stack.push_back(0);
    std::vector<CellMask> reps{0};
    int cells = cell_count(n);
    while (!stack.empty()) {
        CellMask d = stack.back();
        stack.pop_back();
        for (int c = 0; c < cells; ++c) {
            if ((d >> c) & 1) continue;
            CellMask below = subset_cells(static_cast<SetMask>(c)) & ~cell_bit(c);
            if (below & ~d) continue; // not addable yet
            CellMask canon = min_over_orbit(d | cell_bit(c), n).representative;
            if (seen.insert(canon).second) {
                stack.push_back(canon);
                reps.push_back(canon);
            }
        }
    }

    std::sort(reps.begin(), reps.end());
    std::vector<CanonicalClass> out;
    out.reserve(reps.size());
    for (CellMask rep : reps) {
        CanonicalClass c;
        c.representative = antichain_from_cells(rep, n);
        c.orbit_size = factorial(n) / min_over_orbit(rep, n).stabilizer;
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace dedekind
