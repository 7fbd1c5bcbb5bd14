#pragma once

// Antichains over a base set {1..n}, n <= 7, and their lattice algebra.
//
// Two interchangeable views of the same object:
//   Antichain - the maximal sets, stored as sorted 8-bit masks (bit i-1 <-> element i)
//   Downset   - one bit per subset of the base set (2^n cells), closed under taking subsets
//
// All values are immutable after construction and safe to share across threads.

#include <cstdint>
#include <string>
#include <vector>

#include "dedekind/errors.hpp"

namespace dedekind {

constexpr int kMaxBase = 7; // masks fit in 8 bits, downsets in 128 bits

using SetMask = std::uint8_t;           // one subset of {1..n}
using CellMask = unsigned __int128;     // bitset over all 2^n subsets

inline int popcount(SetMask m) { return __builtin_popcount(m); }

inline int popcount128(CellMask m) {
    return __builtin_popcountll(static_cast<std::uint64_t>(m)) +
           __builtin_popcountll(static_cast<std::uint64_t>(m >> 64));
}

inline int countr_zero128(CellMask m) {
    auto lo = static_cast<std::uint64_t>(m);
    if (lo != 0) return __builtin_ctzll(lo);
    return 64 + __builtin_ctzll(static_cast<std::uint64_t>(m >> 64));
}

inline CellMask cell_bit(int c) { return CellMask{1} << c; }

// Cells that are subsets of c (including c itself); independent of n.
CellMask subset_cells(SetMask c);
// Cells that are supersets of c within the full 7-element universe; mask to 2^n as needed.
CellMask superset_cells(SetMask c);

inline int cell_count(int n) { return 1 << n; }
inline CellMask all_cells(int n) {
    return (n >= kMaxBase) ? ~CellMask{0} : (cell_bit(cell_count(n)) - 1);
}
inline SetMask full_set(int n) { return static_cast<SetMask>((1u << n) - 1); }

void check_base(int n); // throws invalid_input_error unless 0 <= n <= kMaxBase

// One subset of the base set, tagged with the base size it lives in.
struct ElementSet {
    SetMask bits = 0;
    int n = 0;

    ElementSet() = default;
    ElementSet(SetMask bits_, int n_) : bits(bits_), n(n_) {
        check_base(n);
        if (bits & ~full_set(n))
            throw invalid_input_error("element out of range for base set");
    }
    friend bool operator==(const ElementSet&, const ElementSet&) = default;
};

// Canonical order on member sets: by popcount, then numeric value.
inline bool set_less(SetMask a, SetMask b) {
    int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa < pb : a < b;
}

struct Downset;

// A set of pairwise-incomparable subsets of {1..n}, in canonical encoding.
struct Antichain {
    int n = 0;
    std::vector<SetMask> sets; // sorted by set_less; pairwise incomparable

    Antichain() = default;

    static Antichain bottom(int n) {
        check_base(n);
        Antichain a;
        a.n = n;
        return a;
    }
    static Antichain top(int n) {
        check_base(n);
        Antichain a;
        a.n = n;
        a.sets.push_back(full_set(n));
        return a;
    }
    // Single-member antichain {X}.
    static Antichain singleton(SetMask x, int n) {
        check_base(n);
        if (x & ~full_set(n)) throw invalid_input_error("element out of range for base set");
        Antichain a;
        a.n = n;
        a.sets.push_back(x);
        return a;
    }
    // max() of an arbitrary collection: absorb dominated sets, drop duplicates, sort.
    static Antichain normalized(std::vector<SetMask> raw, int n);
    // Requires the input to already be an antichain; canonicalizes the order only.
    static Antichain from_sets(std::vector<SetMask> sets, int n);

    bool is_bottom() const { return sets.empty(); }
    bool is_top() const { return sets.size() == 1 && sets[0] == full_set(n); }
    bool contains(SetMask x) const;

    friend bool operator==(const Antichain&, const Antichain&) = default;
};

// Subset-closed family over the 2^n cells.
struct Downset {
    int n = 0;
    CellMask member = 0; // bit c <-> cell c belongs

    Downset() = default;
    Downset(CellMask member_, int n_) : n(n_), member(member_) { check_base(n_); }

    bool test(SetMask c) const { return (member >> c) & 1; }
    int size() const { return popcount128(member); }

    friend bool operator==(const Downset&, const Downset&) = default;
};

inline void check_same_base(const Antichain& a, const Antichain& b) {
    if (a.n != b.n) throw invalid_input_error("mismatched base sets");
}

// Order and lattice operations (Definitions of le/join/meet on antichains).
bool dominates(const Antichain& a, SetMask x);
bool leq(const Antichain& a, const Antichain& b);
Antichain join(const Antichain& a, const Antichain& b);
Antichain meet(const Antichain& a, const Antichain& b);
SetMask span(const Antichain& a);
// Requires disjoint spans; {X u Y | X in a, Y in b}.
Antichain direct_product(const Antichain& a, const Antichain& b);
// Complement of the set of complements; order-reversing involution.
Antichain dual(const Antichain& a);

Downset to_downset(const Antichain& a);
Antichain from_downset(const Downset& d); // validates downward closure

// Downset-level helpers (the fast path used by the counting engines).
CellMask antichain_cells(const Antichain& a, int* out_n = nullptr);
Antichain antichain_from_cells(CellMask member, int n); // maximal cells; no closure check
CellMask dual_cells(CellMask member, int n);
inline bool cells_leq(CellMask a, CellMask b) { return (a & ~b) == 0; }
bool is_downward_closed(CellMask member, int n);

// Total order used wherever a deterministic order on antichains of one base is needed
// (class representatives, enumeration order): numeric order of the downset mask.
bool downset_value_less(const Antichain& a, const Antichain& b);

// --- text grammar ---------------------------------------------------------
//
//   "{}"                 the empty antichain (bottom)
//   "{0}"                the antichain containing only the empty set
//   "{12,13}"            {{1,2},{1,3}}; each member is a strictly increasing digit string
//
// parse_antichain rejects inputs that are not antichains unless normalize is set.
std::string format_antichain(const Antichain& a);
std::string format_set(SetMask x);
Antichain parse_antichain(const std::string& text, int n, bool normalize = false);

struct AntichainHash {
    std::size_t operator()(const Antichain& a) const;
};
struct CellMaskHash {
    std::size_t operator()(CellMask m) const {
        auto mix = [](std::uint64_t x) {
            x ^= x >> 33;
            x *= 0xff51afd7ed558ccdULL;
            x ^= x >> 33;
            x *= 0xc4ceb9fe1a85ec53ULL;
            x ^= x >> 33;
            return x;
        };
        return static_cast<std::size_t>(mix(static_cast<std::uint64_t>(m)) ^
                                        (mix(static_cast<std::uint64_t>(m >> 64)) * 0x9e3779b97f4a7c15ULL));
    }
};

} // namespace dedekind
