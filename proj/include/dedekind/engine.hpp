#pragma once

// The counting formulas:
//
//   bruteforce  D(n)   by plain enumeration
//   nplus2      D(n+2) = sum over alpha <= beta of 2^C(alpha,beta) |[bot,alpha]| |[beta,top]|
//   wiedemann   D(n+2) = sum over (sigma,tau) of eta(sigma ^ tau) eta(dual sigma ^ dual tau)
//   nplus3      D(n+3) via the three-variable system and four interval factors
//   nplus4      D(n+4) via two four-variable systems (the upper one on duals) and
//               eight interval factors
//
// Work is split into deterministic shards (independent of the worker count),
// accumulated exactly, folded in shard order, and optionally checkpointed as
// newline-delimited records so an interrupted run can resume.

#include <cstdint>
#include <string>
#include <vector>

#include "dedekind/bigcount.hpp"

namespace dedekind {

struct EngineLimits {
    int bruteforce_max_n = 6;
    int nplus2_max_n = 5;
    int nplus3_max_n = 3;
    int nplus4_max_n = 2;
    int wiedemann_max_n = 4;
};

struct RunConfig {
    std::string method; // bruteforce | nplus2 | nplus3 | nplus4 | wiedemann
    int n = 0;
    int workers = 1;
    bool reduce_symmetry = false;   // nplus2 only: sum over canonical alpha classes
    std::string checkpoint_path;    // empty: no checkpointing
    int stop_after_shards = -1;     // testing hook: stop after this many fresh shards
    std::size_t cache_max_entries = 0;
    EngineLimits limits;
};

struct ComputationReport {
    std::string method;
    int n = 0;
    BigCount result = 0;
    BigCount terms = 0;
    double seconds = 0;
    int shards = 0;
    std::string digest; // over the shard plan; stable for fixed (method, n, reduce)
    bool reduce_symmetry = false;
    int workers = 1;
    bool interrupted = false; // result/terms then cover only the completed shards
    std::uint64_t resumed_shards = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t cache_misses = 0;
    std::size_t cache_entries = 0;
};

BigCount brute_force_dedekind(int n, const EngineLimits& limits = {});

// Validates caps and dispatches on config.method.
ComputationReport compute(const RunConfig& config);

struct ConsistencyEntry {
    std::string method;
    int base_n = 0;
    BigCount value = 0;
};
struct ConsistencyRow {
    int m = 0;
    BigCount value = 0;
    std::vector<ConsistencyEntry> entries;
};
struct ConsistencyReport {
    std::vector<ConsistencyRow> rows;
    double seconds = 0;
};

// Computes D(m) for m = 0..max_m by every applicable method and requires agreement
// (and agreement with the known values). Throws consistency_error with the
// divergent context otherwise.
ConsistencyReport consistency_matrix(int max_m, const RunConfig& base = {});

// Checkpoint records, one per line:  shard=<id> sum=<decimal> terms=<decimal> digest=<hex16>
struct CheckpointRecord {
    std::uint64_t shard_id = 0;
    std::string partial_sum;
    std::string term_count;
    std::string digest;
};
std::string format_checkpoint_record(const CheckpointRecord& rec);
bool parse_checkpoint_record(const std::string& line, CheckpointRecord* out);

} // namespace dedekind
