#pragma once

// Base-set permutations acting on antichains: canonical representatives, orbit
// sizes, and enumeration of the equivalence classes that make symmetry-reduced
// sums possible.

#include <array>
#include <cstdint>
#include <vector>

#include "dedekind/antichain.hpp"

namespace dedekind {

struct Permutation {
    int n = 0;
    std::array<std::uint8_t, kMaxBase> image{}; // image[i-1] = image of element i (1-based)

    static Permutation identity(int n);
    SetMask apply_set(SetMask x) const;
};

std::uint64_t factorial(int n);
const std::vector<Permutation>& all_permutations(int n);

Antichain apply(const Permutation& p, const Antichain& a);

struct CanonicalClass {
    Antichain representative; // the orbit member with the smallest downset mask
    std::uint64_t orbit_size = 0;
};

// Explicit minimization over all n! images; orbit size via the stabilizer.
CanonicalClass canonical_form(const Antichain& a);

// One entry per orbit, ordered by representative downset mask. n <= 6.
std::vector<CanonicalClass> equivalence_classes(int n);

} // namespace dedekind
