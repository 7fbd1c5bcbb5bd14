#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "dedekind/engine.hpp"

using namespace dedekind;

namespace {

RunConfig cfg(const std::string& method, int n) {
    RunConfig c;
    c.method = method;
    c.n = n;
    return c;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("engine_test_" + name + ".ckpt") {
        std::remove(path.c_str());
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("brute force matches the known sequence") {
    CHECK(brute_force_dedekind(0) == 2);
    CHECK(brute_force_dedekind(4) == 168);
    CHECK_THROWS_AS(brute_force_dedekind(7), capability_error);
}

TEST_CASE("two-step formula and its term count") {
    const std::uint64_t dedekind[] = {2, 3, 6, 20, 168, 7581, 7828354};
    for (int n = 0; n <= 4; ++n) {
        ComputationReport r = compute(cfg("nplus2", n));
        CHECK(r.result == BigCount(static_cast<unsigned long>(dedekind[n + 2])));
        CHECK(r.terms == BigCount(static_cast<unsigned long>(dedekind[n + 1])));
        CHECK_FALSE(r.interrupted);
    }
}

TEST_CASE("dual-split cross-check equals the two-step formula") {
    for (int n = 0; n <= 3; ++n)
        CHECK(compute(cfg("wiedemann", n)).result == compute(cfg("nplus2", n)).result);
}

TEST_CASE("three-step and four-step formulas at small bases") {
    CHECK(compute(cfg("nplus3", 0)).result == 20);
    CHECK(compute(cfg("nplus3", 1)).result == 168);
    CHECK(compute(cfg("nplus3", 2)).result == 7581);
    CHECK(compute(cfg("nplus4", 0)).result == 168);
    CHECK(compute(cfg("nplus4", 1)).result == 7581);
    CHECK(compute(cfg("nplus4", 2)).result == 7828354);
}

TEST_CASE("symmetry reduction does not change results") {
    for (int n = 0; n <= 3; ++n) {
        RunConfig reduced = cfg("nplus2", n);
        reduced.reduce_symmetry = true;
        ComputationReport a = compute(cfg("nplus2", n));
        ComputationReport b = compute(reduced);
        CHECK(a.result == b.result);
        CHECK(b.reduce_symmetry);
        CHECK(b.terms <= a.terms);
    }
}

TEST_CASE("worker count does not change the report") {
    ComputationReport base = compute(cfg("nplus2", 3));
    for (int workers : {2, 5, 8}) {
        RunConfig c = cfg("nplus2", 3);
        c.workers = workers;
        ComputationReport r = compute(c);
        CHECK(r.result == base.result);
        CHECK(r.terms == base.terms);
        CHECK(r.digest == base.digest);
        CHECK(r.shards == base.shards);
    }
}

TEST_CASE("capability caps") {
    CHECK_THROWS_AS(compute(cfg("nplus2", 6)), capability_error);
    CHECK_THROWS_AS(compute(cfg("nplus3", 4)), capability_error);
    CHECK_THROWS_AS(compute(cfg("nplus4", 3)), capability_error);
    CHECK_THROWS_AS(compute(cfg("wiedemann", 5)), capability_error);
    CHECK_THROWS_AS(compute(cfg("bruteforce", -1)), invalid_input_error);
    CHECK_THROWS_AS(compute(cfg("no-such-method", 1)), invalid_input_error);
    RunConfig lowered = cfg("nplus2", 4);
    lowered.limits.nplus2_max_n = 3;
    CHECK_THROWS_AS(compute(lowered), capability_error);
    RunConfig raised = cfg("bruteforce", 7);
    raised.limits.bruteforce_max_n = 9; // hard cap still applies
    CHECK_THROWS_AS(compute(raised), capability_error);
}

TEST_CASE("checkpoint record format") {
    CheckpointRecord rec;
    rec.shard_id = 12;
    rec.partial_sum = "123456789012345678901234567890";
    rec.term_count = "42";
    rec.digest = "0123456789abcdef";
    CheckpointRecord back;
    REQUIRE(parse_checkpoint_record(format_checkpoint_record(rec), &back));
    CHECK(back.shard_id == rec.shard_id);
    CHECK(back.partial_sum == rec.partial_sum);
    CHECK(back.term_count == rec.term_count);
    CHECK(back.digest == rec.digest);
    CHECK_FALSE(parse_checkpoint_record("shard=1 sum=2 terms=3", &back));
    CHECK_FALSE(parse_checkpoint_record("shard=1 sum=2x terms=3 digest=0123456789abcdef", &back));
    CHECK_FALSE(parse_checkpoint_record("shard=1 sum=2 terms=3 digest=xyz", &back));
}

TEST_CASE("interrupt and resume reproduce the uninterrupted run") {
    ComputationReport straight = compute(cfg("nplus2", 4));
    TempFile file("resume");

    RunConfig first = cfg("nplus2", 4);
    first.checkpoint_path = file.path;
    first.stop_after_shards = straight.shards / 2;
    ComputationReport partial = compute(first);
    CHECK(partial.interrupted);

    RunConfig second = cfg("nplus2", 4);
    second.checkpoint_path = file.path;
    ComputationReport resumed = compute(second);
    CHECK_FALSE(resumed.interrupted);
    CHECK(resumed.resumed_shards >= static_cast<std::uint64_t>(first.stop_after_shards));
    CHECK(resumed.result == straight.result);
    CHECK(resumed.terms == straight.terms);
    CHECK(resumed.digest == straight.digest);
    CHECK(resumed.shards == straight.shards);
}

TEST_CASE("a finished checkpoint resumes to the same result without recomputing") {
    TempFile file("full");
    RunConfig c = cfg("nplus2", 2);
    c.checkpoint_path = file.path;
    ComputationReport first = compute(c);
    ComputationReport second = compute(c);
    CHECK(second.result == first.result);
    CHECK(second.resumed_shards == static_cast<std::uint64_t>(first.shards));
}

TEST_CASE("checkpoints from a different run are refused") {
    TempFile file("mismatch");
    RunConfig c = cfg("nplus2", 3);
    c.checkpoint_path = file.path;
    compute(c);

    RunConfig other = cfg("nplus2", 2);
    other.checkpoint_path = file.path;
    CHECK_THROWS_AS(compute(other), invalid_input_error);

    RunConfig reduced = cfg("nplus2", 3);
    reduced.checkpoint_path = file.path;
    reduced.reduce_symmetry = true;
    CHECK_THROWS_AS(compute(reduced), invalid_input_error);
}

TEST_CASE("torn trailing record is ignored, corrupt middle record is fatal") {
    ComputationReport straight = compute(cfg("nplus2", 3));
    TempFile file("torn");
    {
        RunConfig c = cfg("nplus2", 3);
        c.checkpoint_path = file.path;
        c.stop_after_shards = 3;
        compute(c);
    }
    {
        std::ofstream out(file.path, std::ios::app);
        out << "shard=9 sum=123"; // torn write
    }
    RunConfig c = cfg("nplus2", 3);
    c.checkpoint_path = file.path;
    ComputationReport resumed = compute(c);
    CHECK(resumed.result == straight.result);

    // now front-load garbage: refuse
    TempFile bad("corrupt");
    {
        std::ofstream out(bad.path);
        out << "garbage line\n";
        out << "shard=0 sum=1 terms=1 digest=0123456789abcdef\n";
    }
    RunConfig c2 = cfg("nplus2", 3);
    c2.checkpoint_path = bad.path;
    CHECK_THROWS_AS(compute(c2), invalid_input_error);
}

TEST_CASE("duplicate shard records are refused") {
    TempFile file("dup");
    {
        RunConfig c = cfg("nplus2", 3);
        c.checkpoint_path = file.path;
        c.stop_after_shards = 2;
        compute(c);
    }
    std::ifstream in(file.path);
    std::string first_line;
    std::getline(in, first_line);
    in.close();
    std::ofstream(file.path, std::ios::app) << first_line << "\n";
    RunConfig c = cfg("nplus2", 3);
    c.checkpoint_path = file.path;
    CHECK_THROWS_AS(compute(c), invalid_input_error);
}

TEST_CASE("empty checkpoint file means a full recompute") {
    TempFile file("empty");
    std::ofstream(file.path).close();
    RunConfig c = cfg("nplus2", 2);
    c.checkpoint_path = file.path;
    ComputationReport r = compute(c);
    CHECK(r.result == 168);
    CHECK(r.resumed_shards == 0);
}

TEST_CASE("consistency matrix agrees across methods") {
    ConsistencyReport rep = consistency_matrix(5);
    REQUIRE(rep.rows.size() == 6);
    CHECK(rep.rows[5].value == 7581);
    CHECK(rep.rows[4].entries.size() == 5); // D(4) via all five methods
    CHECK(rep.rows[5].entries.size() == 5);
    CHECK_THROWS_AS(consistency_matrix(9), capability_error);
}
