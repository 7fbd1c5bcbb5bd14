#pragma once

// Solution counting for the meet-plus-pairwise-join equation systems
//
//     chi_1 ^ ... ^ chi_r = alpha
//     chi_i v chi_j       = beta_ij      (1 <= i < j <= r)
//
// For r = 2 the count is 2^C where C is the number of connected components of the
// graph on the member sets of beta - alpha, with an edge between X and Y whenever
// {X n Y} is not dominated by alpha. For general r the count is a product of
// per-component weights, computed by reducing the system set by set: each maximal
// set of gamma that is missing from some right-hand side has a forced set of
// variable indices, and the sets present in every right-hand side contribute the
// free choices.

#include <cstdint>
#include <vector>

#include "dedekind/antichain.hpp"
#include "dedekind/bigcount.hpp"

namespace dedekind {

struct SystemInstance {
    int r = 2;
    Antichain alpha;
    std::vector<Antichain> betas; // r*(r-1)/2 entries in pair order (1,2),(1,3),..,(1,r),(2,3),..

    static int pair_count(int r) { return r * (r - 1) / 2; }
    static int pair_index(int i, int j, int r); // 1-based, i < j
    const Antichain& beta(int i, int j) const;  // symmetric accessor

    // throws invalid_input_error on shape/base mismatches, capability_error for r > 11
    void validate() const;
};

// {x n y} not dominated by alpha.
bool directly_connected(const ElementSet& x, const ElementSet& y, const Antichain& alpha);
inline bool directly_connected_cells(SetMask x, SetMask y, CellMask alpha_cells) {
    return !((alpha_cells >> (x & y)) & 1);
}

// Number of connected components of the connection graph on beta - alpha.
// Throws invalid_input_error unless alpha <= beta.
int connected_component_count(const Antichain& alpha, const Antichain& beta);

// Solution count of the two-variable system: 2^components, 0 when alpha is not <= beta.
BigCount pair_solution_count(const Antichain& alpha, const Antichain& beta);

struct ConnectionVertex {
    SetMask set = 0;
    std::uint32_t forced = 0; // bit s-1 <-> variable chi_s must contain the set
    bool in_all = false;      // member of every beta_ij; forced is empty for these
    int component = 0;
};

struct ConnectionDecomposition {
    int r = 2;
    int base_n = 0;
    std::vector<ConnectionVertex> vertices;        // the member sets of gamma = beta - alpha
    std::vector<std::vector<int>> components;      // vertex indices per component
    int component_count() const { return static_cast<int>(components.size()); }
};

// Static view of an instance: components, in_all flags, and the forced index sets
// read off the original right-hand sides. Throws on precondition violations.
ConnectionDecomposition decompose_connections(const SystemInstance& inst);

// Weight of one component of a decomposition:
//   no in_all vertex:   0 if the forced sets cover {1..r}, else 1
//   some in_all vertex: r - |union of forced sets|
int component_weight(const ConnectionDecomposition& decomp, int component);

enum class ReductionOrder {
    kLargestFirst,  // default: largest popcount, then lowest bits
    kSmallestFirst, // used to cross-check order independence
};

// Full reduction record, kept around for the CLI breakdown and for tests.
// A component's weight is the product of the free choices its surviving pieces
// carry (so it can exceed r when a forced hub split the component).
struct SystemCount {
    BigCount count = 0;
    bool feasible = true; // false: a forced assignment left some equation uncoverable
    ConnectionDecomposition decomposition; // forced sets as accumulated by the reduction
    std::vector<BigCount> component_weights; // empty when !feasible
};

SystemCount count_system_solutions(const SystemInstance& inst,
                                   ReductionOrder order = ReductionOrder::kLargestFirst);

// Just the number of solutions; 0 on unsatisfiable right-hand sides.
BigCount system_solution_count(const SystemInstance& inst,
                               ReductionOrder order = ReductionOrder::kLargestFirst);

// Engine fast path; throws capability_error past 128 bits (unreachable within the
// engine caps).
u128 system_solution_count_u128(const SystemInstance& inst);

} // namespace dedekind
