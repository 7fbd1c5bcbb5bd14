#include <doctest.h>

#include <random>
#include <thread>

#include "dedekind/interval.hpp"
#include "dedekind/oracle.hpp"

using namespace dedekind;

namespace {

Antichain ac(const std::string& text, int n) { return parse_antichain(text, n); }

} // namespace

TEST_CASE("interval size basics") {
    IntervalCounter ivc;
    Antichain a = ac("{1,2}", 2);
    CHECK(ivc.interval_size(a, a) == 1);
    CHECK(ivc.interval_size(a, Antichain::bottom(2)) == 0); // empty when not below
    const std::uint64_t full[] = {2, 3, 6, 20, 168, 7581, 7828354};
    for (int n = 0; n <= 6; ++n)
        CHECK(ivc.interval_size(Antichain::bottom(n), Antichain::top(n)) ==
              BigCount(static_cast<unsigned long>(full[n])));
    // [bot, {0}] has two elements; its cube 8 is the second summand of the
    // smallest worked example
    CHECK(ivc.interval_size(Antichain::bottom(3), ac("{0}", 3)) == 2);
}

TEST_CASE("interval queries carry the bounds") {
    IntervalCounter ivc;
    IntervalQuery q{ac("{1}", 2), Antichain::top(2)};
    CHECK(ivc.interval_size(q) == ivc.interval_size(q.bottom, q.top));
    CHECK(ivc.interval_size(IntervalQuery{Antichain::top(2), ac("{1}", 2)}) == 0);
}

TEST_CASE("monotone subset counts") {
    IntervalCounter ivc;
    CHECK(ivc.monotone_subset_count(Antichain::bottom(3)) == 1);
    CHECK(ivc.monotone_subset_count(Antichain::top(2)) == 6);
    CHECK(ivc.monotone_subset_count(ac("{0}", 2)) == 2);
}

TEST_CASE("agreement with enumeration, exhaustive through n=3") {
    IntervalCounter ivc;
    for (int n = 0; n <= 3; ++n) {
        std::vector<Antichain> elems = oracle::all_antichains(n);
        for (const Antichain& a : elems)
            for (const Antichain& b : elems)
                CHECK(ivc.interval_size(a, b) ==
                      BigCount(static_cast<unsigned long>(oracle::count_interval(a, b))));
    }
}

TEST_CASE("agreement with enumeration, sampled at n=4") {
    IntervalCounter ivc;
    std::vector<Antichain> elems = oracle::all_antichains(4);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 1000; ++trial) {
        const Antichain& a = elems[rng() % elems.size()];
        const Antichain& b = elems[rng() % elems.size()];
        CHECK(ivc.interval_size(a, b) ==
              BigCount(static_cast<unsigned long>(oracle::count_interval(a, b))));
    }
}

TEST_CASE("nested intervals never grow") {
    IntervalCounter ivc;
    std::vector<Antichain> elems = oracle::all_antichains(4);
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 500; ++trial) {
        const Antichain& lo = elems[rng() % elems.size()];
        const Antichain& hi = elems[rng() % elems.size()];
        if (!leq(lo, hi)) continue;
        std::vector<Antichain> inside = oracle::interval_members(lo, hi);
        const Antichain& lo2 = inside[rng() % inside.size()];
        std::vector<Antichain> upper = oracle::interval_members(lo2, hi);
        const Antichain& hi2 = upper[rng() % upper.size()];
        CHECK(ivc.interval_size(lo2, hi2) <= ivc.interval_size(lo, hi));
    }
}

TEST_CASE("duality identity, exhaustive through n=3") {
    IntervalCounter ivc;
    for (int n = 0; n <= 3; ++n) {
        std::vector<Antichain> elems = oracle::all_antichains(n);
        for (const Antichain& a : elems)
            for (const Antichain& b : elems)
                CHECK(ivc.interval_size(a, b) == ivc.interval_size(dual(b), dual(a)));
    }
}

TEST_CASE("the two dual pairings sum identically through n=4") {
    IntervalCounter ivc;
    for (int n = 0; n <= 4; ++n) {
        BigCount down = 0, up = 0;
        Antichain bottom = Antichain::bottom(n), top = Antichain::top(n);
        for (const Antichain& a : oracle::all_antichains(n)) {
            down += ivc.interval_size(bottom, a);
            up += ivc.interval_size(a, top);
        }
        CHECK(down == up);
    }
}

TEST_CASE("cache statistics and cap") {
    IntervalCounter capped(8);
    capped.interval_size(Antichain::bottom(4), Antichain::top(4));
    IntervalCounter::Stats stats = capped.stats();
    CHECK(stats.misses > 0);
    CHECK(stats.entries <= 8 + 16); // per-shard slack of one entry
    std::uint64_t before = stats.hits;
    capped.interval_size(Antichain::bottom(4), Antichain::top(4));
    CHECK(capped.stats().hits > before);
    capped.clear();
    CHECK(capped.stats().entries == 0);

    IntervalCounter unbounded;
    unbounded.downset_count(all_cells(4));
    CHECK(unbounded.stats().entries > 0);
    CHECK(unbounded.downset_count(all_cells(4)) == 168);
}

TEST_CASE("results are identical when racing the shared cache") {
    IntervalCounter ivc;
    std::vector<std::uint64_t> results(8, 0);
    std::vector<std::thread> pool;
    for (int t = 0; t < 8; ++t)
        pool.emplace_back([&, t] { results[t] = ivc.downset_count(all_cells(5)); });
    for (auto& th : pool) th.join();
    for (std::uint64_t r : results) CHECK(r == 7581);
}
