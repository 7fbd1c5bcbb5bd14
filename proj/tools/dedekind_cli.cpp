// Command-line front end: method selection, parallelism, checkpoint/resume,
// and machine-readable JSON reports on stdout.
//
// Exit codes: 0 success, 2 invalid input, 3 capability cap, 4 consistency failure.

#include <cmath>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dedekind/engine.hpp"
#include "dedekind/interval.hpp"
#include "dedekind/oracle.hpp"
#include "dedekind/pcoef.hpp"
#include "dedekind/symmetry.hpp"
#include "dedekind/worked_examples.hpp"

namespace {

using nlohmann::json;
using namespace dedekind;

json report_to_json(const ComputationReport& r) {
    return json{{"method", r.method},
                {"n", r.n},
                {"result", to_decimal(r.result)},
                {"terms", to_decimal(r.terms)},
                {"seconds", r.seconds},
                {"shards", r.shards},
                {"digest", r.digest},
                {"reduce_symmetry", r.reduce_symmetry},
                {"workers", r.workers},
                {"status", r.interrupted ? "interrupted" : "complete"},
                {"resumed_shards", r.resumed_shards},
                {"cache",
                 {{"hits", r.cache_hits}, {"misses", r.cache_misses}, {"entries", r.cache_entries}}}};
}

int run_compute(const RunConfig& config, int max_m_for_consistency) {
    if (config.method == "consistency") {
        ConsistencyReport rep = consistency_matrix(max_m_for_consistency, config);
        json rows = json::array();
        for (const ConsistencyRow& row : rep.rows) {
            json entries = json::array();
            for (const ConsistencyEntry& e : row.entries)
                entries.push_back(json{{"method", e.method}, {"n", e.base_n}, {"value", to_decimal(e.value)}});
            rows.push_back(json{{"m", row.m}, {"value", to_decimal(row.value)}, {"methods", entries}});
        }
        std::cout << json{{"method", "consistency"},
                          {"max_m", max_m_for_consistency},
                          {"agree", true},
                          {"seconds", rep.seconds},
                          {"rows", rows}}
                         .dump(2)
                  << "\n";
        return 0;
    }
    std::cout << report_to_json(compute(config)).dump(2) << "\n";
    return 0;
}

int run_pcoef(int n, const std::string& alpha_text, const std::vector<std::string>& beta_texts,
              bool normalize, const std::string& order_name) {
    std::size_t m = beta_texts.size();
    int r = static_cast<int>((1 + std::lround(std::sqrt(1.0 + 8.0 * static_cast<double>(m)))) / 2);
    if (m == 0 || static_cast<std::size_t>(SystemInstance::pair_count(r)) != m)
        throw invalid_input_error("need r*(r-1)/2 right-hand sides in pair order "
                                  "(1,2),(1,3),..,(2,3),..; got " +
                                  std::to_string(m));
    SystemInstance inst;
    inst.r = r;
    inst.alpha = parse_antichain(alpha_text, n, normalize);
    for (const std::string& b : beta_texts) inst.betas.push_back(parse_antichain(b, n, normalize));

    ReductionOrder order =
        order_name == "smallest" ? ReductionOrder::kSmallestFirst : ReductionOrder::kLargestFirst;
    SystemCount sc = count_system_solutions(inst, order);

    json components = json::array();
    for (std::size_t c = 0; c < sc.decomposition.components.size(); ++c) {
        json vertices = json::array();
        for (int v : sc.decomposition.components[c]) {
            const ConnectionVertex& vx = sc.decomposition.vertices[v];
            json forced = json::array();
            for (int s = 1; s <= inst.r; ++s)
                if (vx.forced & (1u << (s - 1))) forced.push_back(s);
            vertices.push_back(
                json{{"set", format_set(vx.set)}, {"forced", forced}, {"in_all", vx.in_all}});
        }
        json comp{{"vertices", vertices}};
        if (!sc.component_weights.empty()) {
            const BigCount& w = sc.component_weights[c];
            if (w.fits_ulong_p())
                comp["weight"] = w.get_ui();
            else
                comp["weight"] = to_decimal(w);
        }
        components.push_back(comp);
    }
    json betas = json::array();
    for (const Antichain& b : inst.betas) betas.push_back(format_antichain(b));
    std::cout << json{{"n", n},
                      {"r", r},
                      {"alpha", format_antichain(inst.alpha)},
                      {"betas", betas},
                      {"count", to_decimal(sc.count)},
                      {"feasible", sc.feasible},
                      {"components", components}}
                     .dump(2)
              << "\n";
    return 0;
}

int run_classes(int n, bool counts_only) {
    std::vector<CanonicalClass> classes = equivalence_classes(n);
    BigCount total = 0;
    json rows = json::array();
    for (const CanonicalClass& c : classes) {
        total += static_cast<unsigned long>(c.orbit_size);
        if (!counts_only)
            rows.push_back(json{{"representative", format_antichain(c.representative)},
                                {"orbit_size", c.orbit_size}});
    }
    json out{{"n", n}, {"count", classes.size()}, {"total_orbit_size", to_decimal(total)}};
    if (!counts_only) out["classes"] = rows;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_oracle_check(int max_n, int samples, unsigned seed) {
    json checks = json::array();
    bool all_ok = true;
    IntervalCounter& ivc = shared_interval_counter();

    // interval sizes against direct enumeration
    for (int n = 0; n <= std::min(max_n, 3); ++n) {
        std::vector<Antichain> elems = oracle::all_antichains(n);
        std::uint64_t instances = 0, bad = 0;
        for (const Antichain& a : elems)
            for (const Antichain& b : elems) {
                ++instances;
                if (ivc.interval_size(a, b) != BigCount(static_cast<unsigned long>(
                                                   oracle::count_interval(a, b))))
                    ++bad;
            }
        checks.push_back(json{{"name", "interval-exhaustive-n" + std::to_string(n)},
                              {"instances", instances},
                              {"mismatches", bad}});
        all_ok &= bad == 0;
    }

    // system counts against the exhaustive solver
    for (int n = 0; n <= std::min(max_n, 2); ++n) {
        std::vector<Antichain> elems = oracle::all_antichains(n);
        for (int r = 2; r <= 4; ++r) {
            std::uint64_t instances = 0, bad = 0;
            int pairs = SystemInstance::pair_count(r);
            for (const Antichain& alpha : elems) {
                std::vector<Antichain> above = oracle::interval_members(alpha, Antichain::top(n));
                std::vector<std::size_t> idx(pairs, 0);
                while (true) {
                    SystemInstance inst;
                    inst.r = r;
                    inst.alpha = alpha;
                    for (int p = 0; p < pairs; ++p) inst.betas.push_back(above[idx[p]]);
                    ++instances;
                    BigCount counted = system_solution_count(inst);
                    std::uint64_t solved = oracle::solve_system(inst).size();
                    if (counted != BigCount(static_cast<unsigned long>(solved))) ++bad;
                    int pos = pairs - 1;
                    while (pos >= 0 && ++idx[pos] == above.size()) idx[pos--] = 0;
                    if (pos < 0) break;
                }
            }
            checks.push_back(json{{"name", "system-exhaustive-n" + std::to_string(n) + "-r" +
                                               std::to_string(r)},
                                  {"instances", instances},
                                  {"mismatches", bad}});
            all_ok &= bad == 0;
        }
    }

    // random instances over n=3
    if (samples > 0) {
        std::mt19937_64 rng(seed);
        std::vector<Antichain> elems = oracle::all_antichains(3);
        std::uint64_t bad = 0;
        for (int i = 0; i < samples; ++i) {
            int r = 2 + static_cast<int>(rng() % 2);
            const Antichain& alpha = elems[rng() % elems.size()];
            std::vector<Antichain> above = oracle::interval_members(alpha, Antichain::top(3));
            SystemInstance inst;
            inst.r = r;
            inst.alpha = alpha;
            for (int p = 0; p < SystemInstance::pair_count(r); ++p)
                inst.betas.push_back(above[rng() % above.size()]);
            if (system_solution_count(inst) !=
                BigCount(static_cast<unsigned long>(oracle::solve_system(inst).size())))
                ++bad;
        }
        checks.push_back(
            json{{"name", "system-random-n3"}, {"instances", samples}, {"mismatches", bad}});
        all_ok &= bad == 0;
    }

    std::cout << json{{"ok", all_ok}, {"checks", checks}}.dump(2) << "\n";
    return all_ok ? 0 : 4;
}

int run_tables() {
    bool all_ok = true;
    json tables = json::array();
    for (const worked::TableOutcome& t : worked::verify_all()) {
        json rows = json::array();
        for (const worked::RowOutcome& row : t.rows)
            rows.push_back(json{
                {"key", row.key}, {"expected", row.expected}, {"actual", row.actual}, {"ok", row.ok}});
        tables.push_back(json{{"name", t.name}, {"ok", t.ok}, {"rows", rows}});
        all_ok &= t.ok;
    }
    std::cout << json{{"ok", all_ok}, {"tables", tables}}.dump(2) << "\n";
    return all_ok ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Dedekind number computation via antichain equation systems"};
    app.require_subcommand(1);

    RunConfig config;
    CLI::App* compute_cmd = app.add_subcommand(
        "compute", "run a counting method and print a JSON report");
    compute_cmd->add_option("--method", config.method,
                            "bruteforce | nplus2 | nplus3 | nplus4 | wiedemann | consistency")
        ->required();
    compute_cmd->add_option("--n", config.n, "base set size (for consistency: largest D(m))")
        ->required();
    compute_cmd->add_option("--workers", config.workers, "worker threads (default 1)");
    compute_cmd->add_flag("--reduce-symmetry", config.reduce_symmetry,
                          "sum over canonical alpha classes (nplus2)");
    compute_cmd->add_option("--checkpoint", config.checkpoint_path,
                            "append shard records here and resume from them");
    compute_cmd->add_option("--interrupt-after-shards", config.stop_after_shards,
                            "testing aid: stop after this many fresh shards");
    compute_cmd->add_option("--cache-cap", config.cache_max_entries,
                            "interval cache entry cap (0 = unbounded)");

    int pcoef_n = 0;
    std::string pcoef_alpha;
    std::vector<std::string> pcoef_betas;
    bool pcoef_normalize = false;
    std::string pcoef_order = "largest";
    CLI::App* pcoef_cmd = app.add_subcommand(
        "pcoef", "count solutions of a meet/join system; betas in pair order (1,2),(1,3),..");
    pcoef_cmd->add_option("--n", pcoef_n, "base set size")->required();
    pcoef_cmd->add_option("--alpha", pcoef_alpha, "meet value, e.g. '{12,3}'")->required();
    pcoef_cmd->add_option("--beta", pcoef_betas, "pairwise join values (repeat)")->required();
    pcoef_cmd->add_flag("--normalize", pcoef_normalize, "normalize inputs instead of rejecting");
    pcoef_cmd->add_option("--order", pcoef_order, "reduction order: largest | smallest")
        ->check(CLI::IsMember({"largest", "smallest"}));

    int classes_n = 0;
    bool classes_counts_only = false;
    CLI::App* classes_cmd =
        app.add_subcommand("classes", "equivalence classes under base-set permutations");
    classes_cmd->add_option("--n", classes_n, "base set size (at most 6)")->required();
    classes_cmd->add_flag("--counts-only", classes_counts_only, "suppress the class list");

    int check_max_n = 2, check_samples = 2000;
    unsigned check_seed = 12345;
    CLI::App* check_cmd = app.add_subcommand(
        "oracle-check", "certify the counting formulas against brute-force enumeration");
    check_cmd->add_option("--max-n", check_max_n, "largest base for the exhaustive sweeps");
    check_cmd->add_option("--samples", check_samples, "random n=3 instances");
    check_cmd->add_option("--seed", check_seed, "RNG seed");

    app.add_subcommand("tables", "replay the pinned worked-example tables row by row");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand("compute")) return run_compute(config, config.n);
        if (app.got_subcommand("pcoef"))
            return run_pcoef(pcoef_n, pcoef_alpha, pcoef_betas, pcoef_normalize, pcoef_order);
        if (app.got_subcommand("classes")) return run_classes(classes_n, classes_counts_only);
        if (app.got_subcommand("oracle-check"))
            return run_oracle_check(check_max_n, check_samples, check_seed);
        if (app.got_subcommand("tables")) return run_tables();
    } catch (const invalid_input_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const capability_error& e) {
        std::cerr << "capability: " << e.what() << "\n";
        return 3;
    } catch (const consistency_error& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
