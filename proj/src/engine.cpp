#include "dedekind/engine.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "dedekind/interval.hpp"
#include "dedekind/oracle.hpp"
#include "dedekind/pcoef.hpp"
#include "dedekind/symmetry.hpp"

namespace dedekind {

namespace {

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct ShardOutcome {
    SumAccumulator sum;
    std::uint64_t terms = 0;
};

struct ShardPlan {
    std::uint64_t items = 0;
    std::uint64_t chunk = 1;
    int count = 0;
    std::string prefix; // method|n|reduce

    std::uint64_t begin(int shard) const { return static_cast<std::uint64_t>(shard) * chunk; }
    std::uint64_t end(int shard) const { return std::min(items, begin(shard) + chunk); }
    std::string shard_digest(int shard) const {
        std::ostringstream os;
        os << prefix << "|shards=" << count << "|id=" << shard << "|range=" << begin(shard) << ":"
           << end(shard);
        return hex16(fnv1a64(os.str()));
    }
};

ShardPlan make_plan(const std::string& method, const RunConfig& config, std::uint64_t items) {
    ShardPlan plan;
    plan.items = items;
    plan.chunk = std::max<std::uint64_t>(1, (items + 63) / 64);
    plan.count = items == 0 ? 0 : static_cast<int>((items + plan.chunk - 1) / plan.chunk);
    std::ostringstream os;
    os << method << "|n=" << config.n << "|reduced=" << (config.reduce_symmetry ? 1 : 0);
    plan.prefix = os.str();
    return plan;
}

// Shard results previously persisted for this exact plan.
std::vector<std::optional<CheckpointRecord>> load_checkpoint(const std::string& path,
                                                             const ShardPlan& plan) {
    std::vector<std::optional<CheckpointRecord>> done(plan.count);
    std::ifstream in(path);
    if (!in.is_open()) return done;
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        CheckpointRecord rec;
        if (!parse_checkpoint_record(lines[i], &rec)) {
            if (i + 1 == lines.size()) {
                std::cerr << "warning: ignoring torn trailing checkpoint record\n";
                break;
            }
            throw invalid_input_error("corrupt checkpoint record at line " + std::to_string(i + 1));
        }
        if (rec.shard_id >= static_cast<std::uint64_t>(plan.count) ||
            rec.digest != plan.shard_digest(static_cast<int>(rec.shard_id)))
            throw invalid_input_error("checkpoint digest mismatch for shard " +
                                      std::to_string(rec.shard_id) +
                                      "; refusing to resume a different run");
        if (done[rec.shard_id])
            throw invalid_input_error("duplicate checkpoint record for shard " +
                                      std::to_string(rec.shard_id));
        done[rec.shard_id] = std::move(rec);
    }
    return done;
}

template <typename ShardFn>
ComputationReport run_sharded(const std::string& method, const RunConfig& config,
                              std::uint64_t items, ShardFn&& shard_fn) {
    auto t0 = std::chrono::steady_clock::now();
    if (config.workers < 1) throw invalid_input_error("workers must be at least 1");

    ShardPlan plan = make_plan(method, config, items);

    std::vector<std::optional<CheckpointRecord>> persisted(plan.count);
    std::ofstream checkpoint_out;
    if (!config.checkpoint_path.empty()) {
        persisted = load_checkpoint(config.checkpoint_path, plan);
        checkpoint_out.open(config.checkpoint_path, std::ios::app);
        if (!checkpoint_out.is_open())
            throw invalid_input_error("cannot open checkpoint file " + config.checkpoint_path);
    }

    std::uint64_t resumed = 0;
    std::vector<std::optional<ShardOutcome>> results(plan.count);
    for (int s = 0; s < plan.count; ++s)
        if (persisted[s]) ++resumed;

    std::atomic<int> next{0};
    std::atomic<int> fresh{0};
    std::atomic<bool> stop{false};
    std::mutex sink_mutex;
    std::exception_ptr failure;

    auto worker = [&] {
        try {
            while (!stop.load(std::memory_order_relaxed)) {
                int shard = next.fetch_add(1);
                if (shard >= plan.count) break;
                if (persisted[shard]) continue;
                ShardOutcome out = shard_fn(plan.begin(shard), plan.end(shard));
                std::lock_guard lock(sink_mutex);
                if (checkpoint_out.is_open()) {
                    CheckpointRecord rec;
                    rec.shard_id = static_cast<std::uint64_t>(shard);
                    rec.partial_sum = to_decimal(out.sum.total());
                    rec.term_count = std::to_string(out.terms);
                    rec.digest = plan.shard_digest(shard);
                    checkpoint_out << format_checkpoint_record(rec) << "\n";
                    checkpoint_out.flush();
                }
                results[shard] = std::move(out);
                int done = fresh.fetch_add(1) + 1;
                if (config.stop_after_shards >= 0 && done >= config.stop_after_shards)
                    stop.store(true, std::memory_order_relaxed);
            }
        } catch (...) {
            std::lock_guard lock(sink_mutex);
            if (!failure) failure = std::current_exception();
            stop.store(true, std::memory_order_relaxed);
        }
    };

    int nworkers = std::min<int>(config.workers, std::max(plan.count, 1));
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    ComputationReport report;
    report.method = method;
    report.n = config.n;
    report.shards = plan.count;
    report.reduce_symmetry = config.reduce_symmetry;
    report.workers = config.workers;
    report.resumed_shards = resumed;

    // deterministic fold, in shard order
    SumAccumulator total;
    SumAccumulator terms;
    bool complete = true;
    std::string digest_input = plan.prefix + "|shards=" + std::to_string(plan.count);
    for (int s = 0; s < plan.count; ++s) {
        digest_input += "|" + plan.shard_digest(s);
        if (persisted[s]) {
            total.add(bigcount_from_decimal(persisted[s]->partial_sum));
            terms.add(bigcount_from_decimal(persisted[s]->term_count));
        } else if (results[s]) {
            total.add(results[s]->sum);
            terms.add(static_cast<u128>(results[s]->terms));
        } else {
            complete = false;
        }
    }
    report.interrupted = !complete;
    report.result = total.total();
    report.terms = terms.total();
    report.digest = hex16(fnv1a64(digest_input));

    IntervalCounter::Stats stats = shared_interval_counter().stats();
    report.cache_hits = stats.hits;
    report.cache_misses = stats.misses;
    report.cache_entries = stats.entries;
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

struct Element {
    Antichain a;
    CellMask cells = 0;
};

std::vector<Element> lattice_elements(int n) {
    std::vector<Element> out;
    oracle::Limits limits;
    limits.max_enumeration_n = kMaxBase; // engine caps gate the callers
    for (const Antichain& a : oracle::all_antichains(n, limits)) {
        Element e;
        e.cells = antichain_cells(a);
        e.a = a;
        out.push_back(std::move(e));
    }
    return out;
}

// member sets of the downset bcells that are not members of alpha
int gamma_of(CellMask bcells, CellMask alpha_cells, int n, SetMask* gamma) {
    int count = 0;
    CellMask universe = all_cells(n);
    for (int c = 0; c < cell_count(n); ++c) {
        if (!((bcells >> c) & 1)) continue;
        if ((alpha_cells >> c) & 1) continue; // a member of beta inside alpha is a member of alpha
        CellMask strict_sup = superset_cells(static_cast<SetMask>(c)) & universe & ~cell_bit(c);
        if ((bcells & strict_sup) == 0) gamma[count++] = static_cast<SetMask>(c);
    }
    return count;
}

int component_count_of(const SetMask* gamma, int count, CellMask alpha_cells) {
    int parent[64];
    for (int i = 0; i < count; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (int i = 0; i < count; ++i)
        for (int j = i + 1; j < count; ++j)
            if (directly_connected_cells(gamma[i], gamma[j], alpha_cells)) {
                int a = find(i), b = find(j);
                if (a != b) parent[a] = b;
            }
    int components = 0;
    for (int i = 0; i < count; ++i)
        if (find(i) == i) ++components;
    return components;
}

void add_term(ShardOutcome& out, u128 a, u128 b) {
    u128 t;
    if (checked_mul_u128(a, b, &t)) {
        out.sum.add(t);
    } else {
        out.sum.add(bigcount_from_u128(a) * bigcount_from_u128(b));
    }
    ++out.terms;
}

ComputationReport run_nplus2(const RunConfig& config) {
    int n = config.n;
    IntervalCounter& ivc = shared_interval_counter();
    CellMask universe = all_cells(n);

    std::vector<Element> alphas;
    std::vector<std::uint64_t> multiplicity;
    if (config.reduce_symmetry) {
        for (CanonicalClass& c : equivalence_classes(n)) {
            Element e;
            e.cells = antichain_cells(c.representative);
            e.a = std::move(c.representative);
            alphas.push_back(std::move(e));
            multiplicity.push_back(c.orbit_size);
        }
    } else {
        alphas = lattice_elements(n);
        multiplicity.assign(alphas.size(), 1);
    }

    auto shard_fn = [&](std::uint64_t begin, std::uint64_t end) {
        ShardOutcome out;
        SetMask gamma[64];
        for (std::uint64_t i = begin; i < end; ++i) {
            const Element& alpha = alphas[i];
            std::uint64_t mult = multiplicity[i];
            std::uint64_t iv_bot = ivc.downset_count(alpha.cells);
            oracle::for_each_downset_between(
                alpha.cells, universe & ~alpha.cells, n, [&](CellMask bcells) {
                    int gcount = gamma_of(bcells, alpha.cells, n, gamma);
                    int components = component_count_of(gamma, gcount, alpha.cells);
                    std::uint64_t iv_top = ivc.downset_count(universe & ~bcells);
                    add_term(out, u128{1} << components,
                             static_cast<u128>(iv_bot) * iv_top * mult);
                });
        }
        return out;
    };
    return run_sharded("nplus2", config, alphas.size(), shard_fn);
}

ComputationReport run_wiedemann(const RunConfig& config) {
    int n = config.n;
    IntervalCounter& ivc = shared_interval_counter();
    std::vector<Element> elems = lattice_elements(n);
    std::vector<CellMask> cells, duals;
    for (const Element& e : elems) {
        cells.push_back(e.cells);
        duals.push_back(dual_cells(e.cells, n));
    }

    auto shard_fn = [&](std::uint64_t begin, std::uint64_t end) {
        ShardOutcome out;
        for (std::uint64_t i = begin; i < end; ++i)
            for (std::size_t j = 0; j < cells.size(); ++j) {
                std::uint64_t low = ivc.downset_count(cells[i] & cells[j]);
                std::uint64_t high = ivc.downset_count(duals[i] & duals[j]);
                add_term(out, low, high);
            }
        return out;
    };
    return run_sharded("wiedemann", config, elems.size(), shard_fn);
}

ComputationReport run_nplus3(const RunConfig& config) {
    int n = config.n;
    IntervalCounter& ivc = shared_interval_counter();
    CellMask universe = all_cells(n);
    std::vector<Element> alphas = lattice_elements(n);

    auto shard_fn = [&](std::uint64_t begin, std::uint64_t end) {
        ShardOutcome out;
        for (std::uint64_t ai = begin; ai < end; ++ai) {
            const Element& alpha = alphas[ai];
            std::uint64_t iv_bot = ivc.downset_count(alpha.cells);
            std::vector<Element> above;
            oracle::for_each_downset_between(
                alpha.cells, universe & ~alpha.cells, n, [&](CellMask bcells) {
                    above.push_back({antichain_from_cells(bcells, n), bcells});
                });
            for (const Element& b12 : above)
                for (const Element& b13 : above)
                    for (const Element& b23 : above) {
                        SystemInstance inst;
                        inst.r = 3;
                        inst.alpha = alpha.a;
                        inst.betas = {b12.a, b13.a, b23.a};
                        u128 p3 = system_solution_count_u128(inst);
                        if (p3 == 0) continue; // zero terms are pruned before interval work
                        CellMask joined = b12.cells | b13.cells | b23.cells;
                        oracle::for_each_downset_between(
                            joined, universe & ~joined, n, [&](CellMask gcells) {
                                u128 intervals = static_cast<u128>(iv_bot) *
                                                 ivc.downset_count(gcells & ~b12.cells) *
                                                 ivc.downset_count(gcells & ~b13.cells) *
                                                 ivc.downset_count(gcells & ~b23.cells);
                                add_term(out, p3, intervals);
                            });
                    }
        }
        return out;
    };
    return run_sharded("nplus3", config, alphas.size(), shard_fn);
}

// pair slots (1,2),(1,3),(1,4),(2,3),(2,4),(3,4); complementary pairs are mirrored
constexpr int kComplementSlot[6] = {5, 4, 3, 2, 1, 0};

struct FourTuple {
    CellMask bound[6];     // beta cells (lower instance) or delta cells (upper instance)
    std::uint64_t p4 = 0;  // system solution count
    std::uint64_t iv = 0;  // |[bot,alpha]| resp. |[epsilon,top]|
};

ComputationReport run_nplus4(const RunConfig& config) {
    int n = config.n;
    IntervalCounter& ivc = shared_interval_counter();
    CellMask universe = all_cells(n);
    std::vector<Element> elems = lattice_elements(n);

    // lower instances: alpha and the six beta_ij above it, kept when solvable
    std::vector<FourTuple> lower;
    for (const Element& alpha : elems) {
        std::vector<Element> above;
        oracle::for_each_downset_between(alpha.cells, universe & ~alpha.cells, n, [&](CellMask c) {
            above.push_back({antichain_from_cells(c, n), c});
        });
        std::uint64_t iv_bot = ivc.downset_count(alpha.cells);
        std::size_t m = above.size();
        std::array<std::size_t, 6> idx{};
        while (true) {
            SystemInstance inst;
            inst.r = 4;
            inst.alpha = alpha.a;
            for (int p = 0; p < 6; ++p) inst.betas.push_back(above[idx[p]].a);
            u128 p4 = system_solution_count_u128(inst);
            if (p4 != 0) {
                FourTuple t;
                for (int p = 0; p < 6; ++p) t.bound[p] = above[idx[p]].cells;
                t.p4 = static_cast<std::uint64_t>(p4);
                t.iv = iv_bot;
                lower.push_back(t);
            }
            int pos = 5;
            while (pos >= 0 && ++idx[pos] == m) idx[pos--] = 0;
            if (pos < 0) break;
        }
    }

    // upper instances: epsilon and the six delta_ij below it; the system lives on the
    // duals, with each pair slot fed by the dual of the complementary slot's delta
    std::vector<FourTuple> upper;
    for (const Element& eps : elems) {
        std::vector<Element> below;
        oracle::for_each_downset_between(CellMask{0}, eps.cells, n, [&](CellMask c) {
            below.push_back({antichain_from_cells(c, n), c});
        });
        Antichain eps_dual = antichain_from_cells(dual_cells(eps.cells, n), n);
        std::uint64_t iv_top = ivc.downset_count(universe & ~eps.cells);
        std::size_t m = below.size();
        std::array<std::size_t, 6> idx{};
        while (true) {
            SystemInstance inst;
            inst.r = 4;
            inst.alpha = eps_dual;
            inst.betas.resize(6);
            for (int p = 0; p < 6; ++p)
                inst.betas[p] =
                    antichain_from_cells(dual_cells(below[idx[kComplementSlot[p]]].cells, n), n);
            u128 p4 = system_solution_count_u128(inst);
            if (p4 != 0) {
                FourTuple t;
                for (int p = 0; p < 6; ++p) t.bound[p] = below[idx[p]].cells;
                t.p4 = static_cast<std::uint64_t>(p4);
                t.iv = iv_top;
                upper.push_back(t);
            }
            int pos = 5;
            while (pos >= 0 && ++idx[pos] == m) idx[pos--] = 0;
            if (pos < 0) break;
        }
    }

    auto shard_fn = [&](std::uint64_t begin, std::uint64_t end) {
        ShardOutcome out;
        for (std::uint64_t li = begin; li < end; ++li) {
            const FourTuple& lo = lower[li];
            for (const FourTuple& hi : upper) {
                bool fits = true;
                for (int p = 0; p < 6 && fits; ++p) fits = cells_leq(lo.bound[p], hi.bound[p]);
                if (!fits) continue;
                u128 intervals = static_cast<u128>(lo.iv) * hi.iv;
                for (int p = 0; p < 6; ++p)
                    intervals *= ivc.downset_count(hi.bound[p] & ~lo.bound[p]);
                add_term(out, static_cast<u128>(lo.p4) * hi.p4, intervals);
            }
        }
        return out;
    };
    return run_sharded("nplus4", config, lower.size(), shard_fn);
}

ComputationReport run_bruteforce(const RunConfig& config) {
    auto shard_fn = [&](std::uint64_t, std::uint64_t) {
        ShardOutcome out;
        oracle::Limits limits;
        limits.max_enumeration_n = kMaxBase;
        std::uint64_t count = oracle::count_antichains(config.n, limits);
        out.sum.add(static_cast<u128>(count));
        out.terms = count;
        return out;
    };
    return run_sharded("bruteforce", config, 1, shard_fn);
}

// Configured caps can be lowered freely but never raised past the values the
// term arithmetic and runtime were sized for.
void check_cap(const std::string& method, int n, int cap, int hard_cap) {
    if (n < 0) throw invalid_input_error("base size must be nonnegative");
    cap = std::min(cap, hard_cap);
    if (n > cap)
        throw capability_error(method + " is capped at n=" + std::to_string(cap) + ", got n=" +
                               std::to_string(n));
}

} // namespace

BigCount brute_force_dedekind(int n, const EngineLimits& limits) {
    check_cap("bruteforce", n, limits.bruteforce_max_n, 6);
    oracle::Limits olimits;
    olimits.max_enumeration_n = 6;
    return BigCount(static_cast<unsigned long>(oracle::count_antichains(n, olimits)));
}

ComputationReport compute(const RunConfig& config) {
    if (config.cache_max_entries)
        shared_interval_counter().set_max_entries(config.cache_max_entries);
    if (config.method == "bruteforce") {
        check_cap(config.method, config.n, config.limits.bruteforce_max_n, 6);
        return run_bruteforce(config);
    }
    if (config.method == "nplus2") {
        check_cap(config.method, config.n, config.limits.nplus2_max_n, 6);
        return run_nplus2(config);
    }
    if (config.method == "nplus3") {
        check_cap(config.method, config.n, config.limits.nplus3_max_n, 4);
        return run_nplus3(config);
    }
    if (config.method == "nplus4") {
        check_cap(config.method, config.n, config.limits.nplus4_max_n, 3);
        return run_nplus4(config);
    }
    if (config.method == "wiedemann") {
        check_cap(config.method, config.n, config.limits.wiedemann_max_n, 5);
        return run_wiedemann(config);
    }
    throw invalid_input_error("unknown method: " + config.method);
}

ConsistencyReport consistency_matrix(int max_m, const RunConfig& base) {
    auto t0 = std::chrono::steady_clock::now();
    if (max_m < 0 || max_m > 7)
        throw capability_error("consistency matrix covers D(0)..D(7)");
    static const char* kKnown[] = {"2",     "3",       "6",  "20", "168", "7581", "7828354",
                                   "2414682040998"};
    ConsistencyReport report;
    for (int m = 0; m <= max_m; ++m) {
        ConsistencyRow row;
        row.m = m;
        auto add = [&](const std::string& method, int n) {
            RunConfig cfg = base;
            cfg.method = method;
            cfg.n = n;
            cfg.checkpoint_path.clear();
            cfg.stop_after_shards = -1;
            ConsistencyEntry entry;
            entry.method = method;
            entry.base_n = n;
            entry.value = compute(cfg).result;
            row.entries.push_back(std::move(entry));
        };
        const EngineLimits& lim = base.limits;
        if (m <= lim.bruteforce_max_n) add("bruteforce", m);
        if (m >= 2 && m - 2 <= lim.nplus2_max_n) add("nplus2", m - 2);
        if (m >= 2 && m - 2 <= lim.wiedemann_max_n) add("wiedemann", m - 2);
        if (m >= 3 && m - 3 <= lim.nplus3_max_n) add("nplus3", m - 3);
        if (m >= 4 && m - 4 <= std::min(lim.nplus4_max_n, 1)) add("nplus4", m - 4);
        if (row.entries.empty())
            throw capability_error("no method can compute D(" + std::to_string(m) +
                                   ") within the configured caps");
        row.value = row.entries.front().value;
        for (const ConsistencyEntry& e : row.entries)
            if (e.value != row.value)
                throw consistency_error("D(" + std::to_string(m) + ") disagreement: " +
                                        row.entries.front().method + " says " +
                                        to_decimal(row.value) + " but " + e.method + "(n=" +
                                        std::to_string(e.base_n) + ") says " + to_decimal(e.value));
        if (m < 8 && row.value != bigcount_from_decimal(kKnown[m]))
            throw consistency_error("D(" + std::to_string(m) + ") = " + to_decimal(row.value) +
                                    " does not match the known value " + kKnown[m]);
        report.rows.push_back(std::move(row));
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::string format_checkpoint_record(const CheckpointRecord& rec) {
    std::ostringstream os;
    os << "shard=" << rec.shard_id << " sum=" << rec.partial_sum << " terms=" << rec.term_count
       << " digest=" << rec.digest;
    return os.str();
}

bool parse_checkpoint_record(const std::string& line, CheckpointRecord* out) {
    unsigned long long shard = 0;
    char sum[64] = {0}, terms[64] = {0}, digest[64] = {0};
    if (std::sscanf(line.c_str(), "shard=%llu sum=%63s terms=%63s digest=%63s", &shard, sum, terms,
                    digest) != 4)
        return false;
    auto all_digits = [](const char* s) {
        if (!*s) return false;
        for (; *s; ++s)
            if (*s < '0' || *s > '9') return false;
        return true;
    };
    auto all_hex = [](const char* s) {
        std::size_t len = 0;
        for (; s[len]; ++len)
            if (!std::isxdigit(static_cast<unsigned char>(s[len]))) return false;
        return len == 16;
    };
    if (!all_digits(sum) || !all_digits(terms) || !all_hex(digest)) return false;
    out->shard_id = shard;
    out->partial_sum = sum;
    out->term_count = terms;
    out->digest = digest;
    return true;
}

} // namespace dedekind
