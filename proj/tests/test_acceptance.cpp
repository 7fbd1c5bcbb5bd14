// Acceptance suite: one pass/fail line per criterion, exact values throughout.

#include <doctest.h>

#include <cstdio>
#include <random>
#include <string>

#include "dedekind/engine.hpp"
#include "dedekind/interval.hpp"
#include "dedekind/oracle.hpp"
#include "dedekind/pcoef.hpp"
#include "dedekind/symmetry.hpp"
#include "dedekind/worked_examples.hpp"

using namespace dedekind;

namespace {

const char* kDedekind[] = {"2", "3", "6", "20", "168", "7581", "7828354", "2414682040998"};

void report(int criterion, bool ok, const std::string& what) {
    std::printf("[%s] criterion %-2d %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
    std::fflush(stdout);
}

RunConfig cfg(const std::string& method, int n) {
    RunConfig c;
    c.method = method;
    c.n = n;
    return c;
}

} // namespace

TEST_CASE("criterion 1: brute force reproduces the base sequence") {
    bool ok = true;
    for (int n = 0; n <= 6; ++n)
        ok &= to_decimal(brute_force_dedekind(n)) == kDedekind[n];
    report(1, ok, "bruteforce D(0..6) = 2,3,6,20,168,7581,7828354");
    CHECK(ok);
}

TEST_CASE("criterion 2: two-step formula through D(7), term counts exact") {
    bool ok = true;
    for (int n = 0; n <= 5; ++n) {
        ComputationReport r = compute(cfg("nplus2", n));
        ok &= to_decimal(r.result) == kDedekind[n + 2];
        if (n <= 4) ok &= to_decimal(r.terms) == kDedekind[n + 1];
    }
    report(2, ok, "nplus2 D(2..7), D(7)=2414682040998; terms = D(n+1) for n<=4");
    CHECK(ok);
}

TEST_CASE("criterion 3: dual-split cross-check equals the two-step formula") {
    bool ok = true;
    for (int n = 0; n <= 4; ++n)
        ok &= compute(cfg("wiedemann", n)).result == compute(cfg("nplus2", n)).result;
    report(3, ok, "wiedemann(n) = nplus2(n) for n = 0..4");
    CHECK(ok);
}

TEST_CASE("criterion 4: three-step formula with row-by-row table totals") {
    bool ok = true;
    ok &= to_decimal(compute(cfg("nplus3", 0)).result) == "20";
    ok &= to_decimal(compute(cfg("nplus3", 1)).result) == "168";
    ok &= to_decimal(compute(cfg("nplus3", 2)).result) == "7581";
    ok &= to_decimal(compute(cfg("nplus3", 3)).result) == "7828354";
    worked::TableOutcome t0 = worked::verify_three_variable_table(0);
    worked::TableOutcome t1 = worked::verify_three_variable_table(1);
    ok &= t0.ok && t1.ok;
    report(4, ok, "nplus3 D(3..6); row totals 9,6,3,2 and the ten n=1 rows verified");
    CHECK(ok);
    CHECK(t0.ok);
    CHECK(t1.ok);
}

TEST_CASE("criterion 5: doubled four-variable formula and its combination table") {
    bool ok = true;
    ok &= to_decimal(compute(cfg("nplus4", 0)).result) == "168";
    ok &= to_decimal(compute(cfg("nplus4", 1)).result) == "7581";
    ok &= (1u << 6) + 8 * (1u << 3) + 14 * (1u << 1) + 12 * (1u << 0) == 168;
    worked::TableOutcome lower = worked::verify_four_variable_lower();
    worked::TableOutcome upper = worked::verify_four_variable_upper();
    worked::TableOutcome combined = worked::verify_four_variable_combined();
    ok &= lower.ok && upper.ok && combined.ok;
    report(5, ok, "nplus4 D(4)=2^6+8*2^3+14*2^1+12*2^0, D(5); combination cells verified");
    CHECK(ok);
    CHECK(lower.ok);
    CHECK(upper.ok);
    CHECK(combined.ok);
}

TEST_CASE("criterion 6: solution counts certified against the exhaustive solver") {
    bool ok = true;
    std::uint64_t instances = 0;
    // exhaustive over all right-hand-side tuples, n <= 2, r in {2,3,4}
    for (int n = 0; n <= 2 && ok; ++n)
        for (int r = 2; r <= 4 && ok; ++r) {
            int pairs = SystemInstance::pair_count(r);
            for (const Antichain& alpha : oracle::all_antichains(n)) {
                std::vector<Antichain> above = oracle::interval_members(alpha, Antichain::top(n));
                std::vector<std::size_t> idx(pairs, 0);
                while (ok) {
                    SystemInstance inst;
                    inst.r = r;
                    inst.alpha = alpha;
                    for (int p = 0; p < pairs; ++p) inst.betas.push_back(above[idx[p]]);
                    ++instances;
                    BigCount counted = system_solution_count(inst);
                    ok &= counted ==
                          BigCount(static_cast<unsigned long>(oracle::solve_system(inst).size()));
                    if (r == 2) ok &= counted == pair_solution_count(alpha, inst.betas[0]);
                    int pos = pairs - 1;
                    while (pos >= 0 && ++idx[pos] == above.size()) idx[pos--] = 0;
                    if (pos < 0) break;
                }
                if (!ok) break;
            }
        }
    // exhaustive three-variable sweep at n = 3: the full instance space of the
    // three-step formula at its largest base
    for (const Antichain& alpha : oracle::all_antichains(3)) {
        if (!ok) break;
        std::vector<Antichain> above = oracle::interval_members(alpha, Antichain::top(3));
        for (const Antichain& b12 : above)
            for (const Antichain& b13 : above)
                for (const Antichain& b23 : above) {
                    SystemInstance inst;
                    inst.r = 3;
                    inst.alpha = alpha;
                    inst.betas = {b12, b13, b23};
                    ++instances;
                    ok &= system_solution_count(inst) ==
                          BigCount(static_cast<unsigned long>(oracle::solve_system(inst).size()));
                }
    }
    // and at least ten thousand random instances at n = 3 across r in {2,3}
    std::mt19937_64 rng(987654321);
    std::vector<Antichain> elems = oracle::all_antichains(3);
    for (int trial = 0; trial < 10000 && ok; ++trial) {
        int r = 2 + static_cast<int>(rng() % 2);
        const Antichain& alpha = elems[rng() % elems.size()];
        std::vector<Antichain> above = oracle::interval_members(alpha, Antichain::top(3));
        SystemInstance inst;
        inst.r = r;
        inst.alpha = alpha;
        for (int p = 0; p < SystemInstance::pair_count(r); ++p)
            inst.betas.push_back(above[rng() % above.size()]);
        ++instances;
        ok &= system_solution_count(inst) ==
              BigCount(static_cast<unsigned long>(oracle::solve_system(inst).size()));
    }
    // every pinned per-instance solution count in the worked tables
    ok &= worked::verify_three_variable_table(0).ok;
    ok &= worked::verify_three_variable_table(1).ok;
    ok &= worked::verify_four_variable_lower().ok;
    ok &= worked::verify_four_variable_upper().ok;
    report(6, ok,
           "solution counts = solver counts on " + std::to_string(instances) +
               " instances (exhaustive n<=2 r<=4 and n=3 r=3, 10^4 random n=3) and all pinned "
               "tables");
    CHECK(ok);
}

TEST_CASE("criterion 7: interval sizes certified against enumeration") {
    bool ok = true;
    IntervalCounter& ivc = shared_interval_counter();
    std::uint64_t pairs = 0;
    for (int n = 0; n <= 3; ++n) {
        std::vector<Antichain> elems = oracle::all_antichains(n);
        for (const Antichain& a : elems)
            for (const Antichain& b : elems) {
                ++pairs;
                ok &= ivc.interval_size(a, b) ==
                      BigCount(static_cast<unsigned long>(oracle::count_interval(a, b)));
            }
    }
    std::mt19937_64 rng(13579);
    std::vector<Antichain> elems4 = oracle::all_antichains(4);
    for (int trial = 0; trial < 10000 && ok; ++trial) {
        const Antichain& a = elems4[rng() % elems4.size()];
        const Antichain& b = elems4[rng() % elems4.size()];
        ++pairs;
        ok &= ivc.interval_size(a, b) ==
              BigCount(static_cast<unsigned long>(oracle::count_interval(a, b)));
    }
    report(7, ok,
           "interval sizes = enumeration on " + std::to_string(pairs) +
               " pairs (exhaustive n<=3, 10^4 random n=4)");
    CHECK(ok);
}

TEST_CASE("criterion 8: symmetry machinery") {
    bool ok = true;
    const std::uint64_t class_counts[] = {2, 3, 5, 10, 30, 210, 16353};
    const std::uint64_t totals[] = {2, 3, 6, 20, 168, 7581};
    for (int n = 0; n <= 6; ++n)
        ok &= equivalence_classes(n).size() == class_counts[n];
    for (int n = 0; n <= 5; ++n) {
        std::uint64_t total = 0;
        for (const CanonicalClass& c : equivalence_classes(n)) total += c.orbit_size;
        ok &= total == totals[n];
    }
    for (int n = 0; n <= 4; ++n) {
        RunConfig reduced = cfg("nplus2", n);
        reduced.reduce_symmetry = true;
        ok &= compute(reduced).result == compute(cfg("nplus2", n)).result;
    }
    report(8, ok, "class counts 2,3,5,10,30,210,16353; orbit sums = D(n); reduced = unreduced");
    CHECK(ok);
}

TEST_CASE("criterion 9: determinism across workers and checkpoint interruption") {
    bool ok = true;
    ComputationReport base = compute(cfg("nplus2", 4));
    for (int workers : {1, 2, 8}) {
        RunConfig c = cfg("nplus2", 4);
        c.workers = workers;
        ComputationReport r = compute(c);
        ok &= to_decimal(r.result) == to_decimal(base.result);
        ok &= to_decimal(r.terms) == to_decimal(base.terms);
        ok &= r.digest == base.digest && r.shards == base.shards;
    }
    std::string path = "acceptance_resume.ckpt";
    std::remove(path.c_str());
    RunConfig interrupted = cfg("nplus2", 4);
    interrupted.checkpoint_path = path;
    interrupted.workers = 2;
    interrupted.stop_after_shards = base.shards / 2;
    ok &= compute(interrupted).interrupted;
    RunConfig resumed_cfg = cfg("nplus2", 4);
    resumed_cfg.checkpoint_path = path;
    resumed_cfg.workers = 8;
    ComputationReport resumed = compute(resumed_cfg);
    ok &= !resumed.interrupted;
    ok &= to_decimal(resumed.result) == to_decimal(base.result);
    ok &= to_decimal(resumed.terms) == to_decimal(base.terms);
    ok &= resumed.digest == base.digest;
    std::remove(path.c_str());
    report(9, ok, "nplus2(4) byte-identical for 1/2/8 workers and across interrupt/resume");
    CHECK(ok);
}

TEST_CASE("criterion 10: property suites, self-contained") {
    bool ok = true;
    // lattice axioms
    for (int n = 0; n <= 3; ++n) {
        std::vector<Antichain> elems = oracle::all_antichains(n);
        for (const Antichain& a : elems)
            for (const Antichain& b : elems) {
                ok &= join(a, b) == join(b, a) && meet(a, b) == meet(b, a);
                ok &= join(a, meet(a, b)) == a && meet(a, join(a, b)) == a;
                ok &= leq(a, b) == (join(a, b) == b) && leq(a, b) == (meet(a, b) == a);
            }
    }
    // dual involution and antiisomorphism
    for (int n = 0; n <= 3; ++n) {
        std::vector<Antichain> elems = oracle::all_antichains(n);
        for (const Antichain& a : elems) {
            ok &= dual(dual(a)) == a;
            for (const Antichain& b : elems) ok &= leq(a, b) == leq(dual(b), dual(a));
        }
    }
    // split structure of two-variable solutions and the member restriction
    for (int n = 0; n <= 2; ++n) {
        std::vector<Antichain> elems = oracle::all_antichains(n);
        for (const Antichain& alpha : elems)
            for (const Antichain& beta : elems) {
                if (!leq(alpha, beta)) continue;
                SystemInstance inst;
                inst.r = 2;
                inst.alpha = alpha;
                inst.betas = {beta};
                oracle::SolveOptions wide;
                wide.unrestricted = true;
                std::vector<oracle::SolutionTuple> sols = oracle::solve_system(inst, wide);
                ok &= sols.size() == oracle::solve_system(inst).size();
                for (const oracle::SolutionTuple& s : sols) {
                    for (SetMask x : beta.sets)
                        if (!alpha.contains(x))
                            ok &= s.chi[0].contains(x) != s.chi[1].contains(x);
                    for (const Antichain& chi : s.chi)
                        for (SetMask x : chi.sets) ok &= alpha.contains(x) || beta.contains(x);
                }
            }
    }
    // extension decomposition round-trips
    for (const Antichain& a : oracle::all_antichains(2))
        ok &= oracle::compose_extension(oracle::decompose_extension(a, 2), 0, 2) == a;
    for (const Antichain& a : oracle::all_antichains(3))
        ok &= oracle::compose_extension(oracle::decompose_extension(a, 3), 0, 3) == a;
    report(10, ok, "lattice axioms, dual laws, split structure checks, extension round-trips");
    CHECK(ok);
}
