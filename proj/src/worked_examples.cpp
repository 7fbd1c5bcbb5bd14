#include "dedekind/worked_examples.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "dedekind/interval.hpp"
#include "dedekind/oracle.hpp"
#include "dedekind/pcoef.hpp"

namespace dedekind::worked {

namespace {

std::string multiset_key(std::vector<std::string> parts) {
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const std::string& p : parts) {
        if (!out.empty()) out += " ";
        out += p;
    }
    return out;
}

struct GroupStats {
    std::uint64_t count = 0;
    std::uint64_t inner = 0; // interval sum of the first representative
    std::uint64_t contribution = 0;
};

void push_row(TableOutcome& t, std::string key, std::string expected, std::string actual) {
    RowOutcome row;
    row.key = std::move(key);
    row.expected = std::move(expected);
    row.actual = std::move(actual);
    row.ok = row.expected == row.actual;
    t.ok &= row.ok;
    t.rows.push_back(std::move(row));
}

struct ThreeVarExpected {
    const char* alpha;
    const char* betas; // multiset key
    std::uint64_t eq, p, inner, total;
};

// rows for n=0 (sum 20) and n=1 (sum 168); groups missing here must count zero solutions
const std::vector<ThreeVarExpected>& three_var_expected(int n) {
    static const std::vector<ThreeVarExpected> n0 = {
        {"{}", "{} {} {}", 1, 1, 9, 9},
        {"{}", "{0} {0} {}", 3, 1, 2, 6},
        {"{}", "{0} {0} {0}", 1, 3, 1, 3},
        {"{0}", "{0} {0} {0}", 1, 1, 2, 2},
    };
    static const std::vector<ThreeVarExpected> n1 = {
        {"{}", "{} {} {}", 1, 1, 36, 36},   {"{}", "{0} {0} {}", 3, 1, 14, 42},
        {"{}", "{0} {0} {0}", 1, 3, 9, 27}, {"{}", "{1} {1} {}", 3, 1, 3, 9},
        {"{}", "{0} {1} {1}", 3, 2, 2, 12}, {"{}", "{1} {1} {1}", 1, 3, 1, 3},
        {"{0}", "{0} {0} {0}", 1, 1, 18, 18}, {"{0}", "{0} {1} {1}", 3, 1, 4, 12},
        {"{0}", "{1} {1} {1}", 1, 3, 2, 6}, {"{1}", "{1} {1} {1}", 1, 1, 3, 3},
    };
    return n == 0 ? n0 : n1;
}

struct FourVarExpected {
    const char* name;
    const char* first;   // alpha resp. epsilon
    const char* bounds;  // multiset key of the six right-hand bounds
    std::uint64_t p;
    std::uint64_t count;
};

// the two 3-of-6 groups with count 16 are the star complements; they solve to zero
// and are checked alongside the listed patterns
const std::vector<FourVarExpected> kLowerExpected = {
    {"A1", "{}", "{} {} {} {} {} {}", 1, 1},
    {"A2", "{}", "{0} {} {} {} {} {}", 0, 6},
    {"A3", "{}", "{0} {0} {} {} {} {}", 0, 15},
    {"A4", "{}", "{0} {0} {0} {} {} {}", 1, 4},
    {"A4z", "{}", "{0} {0} {0} {} {} {}", 0, 16},
    {"A5", "{}", "{0} {0} {0} {0} {} {}", 0, 15},
    {"A6", "{}", "{0} {0} {0} {0} {0} {}", 1, 6},
    {"A7", "{}", "{0} {0} {0} {0} {0} {0}", 4, 1},
    {"A8", "{0}", "{0} {0} {0} {0} {0} {0}", 1, 1},
};

const std::vector<FourVarExpected> kUpperExpected = {
    {"B1", "{0}", "{0} {0} {0} {0} {0} {0}", 1, 1},
    {"B2", "{0}", "{0} {0} {0} {0} {0} {}", 0, 6},
    {"B3", "{0}", "{0} {0} {0} {0} {} {}", 0, 15},
    {"B4", "{0}", "{0} {0} {0} {} {} {}", 1, 4},
    {"B4z", "{0}", "{0} {0} {0} {} {} {}", 0, 16},
    {"B5", "{0}", "{0} {0} {} {} {} {}", 0, 15},
    {"B6", "{0}", "{0} {} {} {} {} {}", 1, 6},
    {"B7", "{0}", "{} {} {} {} {} {}", 4, 1},
    {"B8", "{}", "{} {} {} {} {} {}", 1, 1},
};

struct CombinedExpected {
    const char* lower;
    const char* upper;
    std::uint64_t count;
};
const std::vector<CombinedExpected> kCombinedExpected = {
    {"A1", "B1", 1}, {"A1", "B4", 4}, {"A1", "B6", 6}, {"A1", "B7", 1}, {"A1", "B8", 1},
    {"A4", "B1", 4}, {"A4", "B4", 4}, {"A6", "B1", 6}, {"A7", "B1", 1}, {"A8", "B1", 1},
};

constexpr int kComplementSlot[6] = {5, 4, 3, 2, 1, 0};

struct FourTupleInfo {
    std::string name; // expected pattern name, nonzero patterns only
    Antichain first;
    std::array<Antichain, 6> bounds;
    std::uint64_t p;
};

// enumerate all (first, six bounds) tuples; lower = true walks bounds above alpha,
// lower = false walks bounds below epsilon and solves the dual system
template <typename Visit>
void walk_four_var(bool lower, Visit&& visit) {
    int n = 0;
    std::vector<Antichain> elems = oracle::all_antichains(n);
    for (const Antichain& first : elems) {
        std::vector<Antichain> range = lower ? oracle::interval_members(first, Antichain::top(n))
                                             : oracle::interval_members(Antichain::bottom(n), first);
        std::array<std::size_t, 6> idx{};
        while (true) {
            std::array<Antichain, 6> bounds;
            for (int p = 0; p < 6; ++p) bounds[p] = range[idx[p]];
            SystemInstance inst;
            inst.r = 4;
            if (lower) {
                inst.alpha = first;
                inst.betas.assign(bounds.begin(), bounds.end());
            } else {
                inst.alpha = dual(first);
                for (int p = 0; p < 6; ++p) inst.betas.push_back(dual(bounds[kComplementSlot[p]]));
            }
            std::uint64_t p4 = system_solution_count(inst).get_ui();
            visit(first, bounds, p4);
            int pos = 5;
            while (pos >= 0 && ++idx[pos] == range.size()) idx[pos--] = 0;
            if (pos < 0) break;
        }
    }
}

TableOutcome verify_four_variable_side(bool lower) {
    TableOutcome out;
    out.name = lower ? "system4-lower" : "system4-upper";
    const auto& expected = lower ? kLowerExpected : kUpperExpected;

    std::map<std::string, std::uint64_t> groups; // (first|multiset|p) -> tuple count
    walk_four_var(lower, [&](const Antichain& first, const std::array<Antichain, 6>& bounds,
                             std::uint64_t p4) {
        std::vector<std::string> parts;
        for (const Antichain& b : bounds) parts.push_back(format_antichain(b));
        groups[format_antichain(first) + " | " + multiset_key(parts) + " | p=" +
               std::to_string(p4)] += 1;
    });

    std::map<std::string, std::uint64_t> want;
    for (const FourVarExpected& e : expected)
        want[std::string(e.first) + " | " + e.bounds + " | p=" + std::to_string(e.p)] += e.count;
    for (const auto& [key, count] : want) {
        auto it = groups.find(key);
        push_row(out, key, "count=" + std::to_string(count),
                 it == groups.end() ? "missing" : "count=" + std::to_string(it->second));
    }
    for (const auto& [key, count] : groups)
        if (!want.count(key))
            push_row(out, key, "absent", "count=" + std::to_string(count));
    return out;
}

// nonzero pattern name for a tuple, empty when the pattern solves to zero
std::string pattern_name(bool lower, const Antichain& first, const std::array<Antichain, 6>& bounds,
                         std::uint64_t p4) {
    if (p4 == 0) return {};
    std::vector<std::string> parts;
    for (const Antichain& b : bounds) parts.push_back(format_antichain(b));
    std::string key = format_antichain(first) + "|" + multiset_key(parts) + "|" + std::to_string(p4);
    for (const FourVarExpected& e : (lower ? kLowerExpected : kUpperExpected))
        if (key == std::string(e.first) + "|" + e.bounds + "|" + std::to_string(e.p)) return e.name;
    return "?";
}

} // namespace

TableOutcome verify_three_variable_table(int n) {
    TableOutcome out;
    out.name = "system3-n" + std::to_string(n);
    if (n != 0 && n != 1) {
        out.ok = false;
        return out;
    }
    IntervalCounter& ivc = shared_interval_counter();
    Antichain top = Antichain::top(n);

    std::map<std::string, GroupStats> groups;
    std::map<std::string, std::uint64_t> group_p; // must be single-valued per group
    bool p_unambiguous = true;
    std::uint64_t grand_total = 0;

    for (const Antichain& alpha : oracle::all_antichains(n)) {
        std::uint64_t iv_bot = ivc.interval_size(Antichain::bottom(n), alpha).get_ui();
        std::vector<Antichain> above = oracle::interval_members(alpha, top);
        for (const Antichain& b12 : above)
            for (const Antichain& b13 : above)
                for (const Antichain& b23 : above) {
                    SystemInstance inst;
                    inst.r = 3;
                    inst.alpha = alpha;
                    inst.betas = {b12, b13, b23};
                    std::uint64_t p3 = system_solution_count(inst).get_ui();

                    std::uint64_t inner = 0;
                    for (const Antichain& g : oracle::interval_members(join(join(b12, b13), b23), top))
                        inner += iv_bot * ivc.interval_size(b12, g).get_ui() *
                                 ivc.interval_size(b13, g).get_ui() *
                                 ivc.interval_size(b23, g).get_ui();
                    grand_total += p3 * inner;

                    std::string key = format_antichain(alpha) + " | " +
                                      multiset_key({format_antichain(b12), format_antichain(b13),
                                                    format_antichain(b23)});
                    GroupStats& gs = groups[key];
                    if (gs.count == 0) gs.inner = inner;
                    gs.count += 1;
                    gs.contribution += p3 * inner;
                    auto [it, fresh] = group_p.emplace(key, p3);
                    if (!fresh && it->second != p3) p_unambiguous = false;
                }
    }

    push_row(out, "solution count is constant on each orbit", "yes", p_unambiguous ? "yes" : "no");
    for (const ThreeVarExpected& e : three_var_expected(n)) {
        std::string key = std::string(e.alpha) + " | " + e.betas;
        std::ostringstream want, got;
        want << "eq=" << e.eq << " p=" << e.p << " inner=" << e.inner << " tot=" << e.total;
        auto it = groups.find(key);
        if (it == groups.end()) {
            got << "missing";
        } else {
            got << "eq=" << it->second.count << " p=" << group_p[key] << " inner=" << it->second.inner
                << " tot=" << it->second.contribution;
        }
        push_row(out, key, want.str(), got.str());
    }
    for (const auto& [key, gs] : groups) {
        bool listed = false;
        for (const ThreeVarExpected& e : three_var_expected(n))
            listed |= key == std::string(e.alpha) + " | " + e.betas;
        if (!listed)
            push_row(out, key, "p=0 tot=0",
                     "p=" + std::to_string(group_p[key]) + " tot=" + std::to_string(gs.contribution));
    }
    push_row(out, "grand total", n == 0 ? "20" : "168", std::to_string(grand_total));
    return out;
}

TableOutcome verify_four_variable_lower() { return verify_four_variable_side(true); }
TableOutcome verify_four_variable_upper() { return verify_four_variable_side(false); }

TableOutcome verify_four_variable_combined() {
    TableOutcome out;
    out.name = "system4-combined";
    IntervalCounter& ivc = shared_interval_counter();
    int n = 0;

    std::vector<FourTupleInfo> lower, upper;
    walk_four_var(true, [&](const Antichain& first, const std::array<Antichain, 6>& bounds,
                            std::uint64_t p4) {
        std::string name = pattern_name(true, first, bounds, p4);
        if (!name.empty()) lower.push_back({name, first, bounds, p4});
    });
    walk_four_var(false, [&](const Antichain& first, const std::array<Antichain, 6>& bounds,
                             std::uint64_t p4) {
        std::string name = pattern_name(false, first, bounds, p4);
        if (!name.empty()) upper.push_back({name, first, bounds, p4});
    });

    std::map<std::pair<std::string, std::string>, std::uint64_t> cells;
    std::uint64_t total = 0;
    Antichain bottom = Antichain::bottom(n), top = Antichain::top(n);
    for (const FourTupleInfo& lo : lower)
        for (const FourTupleInfo& hi : upper) {
            bool fits = true;
            for (int p = 0; p < 6 && fits; ++p) fits = leq(lo.bounds[p], hi.bounds[p]);
            if (!fits) continue;
            cells[{lo.name, hi.name}] += 1;
            std::uint64_t term = lo.p * hi.p * ivc.interval_size(bottom, lo.first).get_ui() *
                                 ivc.interval_size(hi.first, top).get_ui();
            for (int p = 0; p < 6; ++p)
                term *= ivc.interval_size(lo.bounds[p], hi.bounds[p]).get_ui();
            total += term;
        }

    std::map<std::pair<std::string, std::string>, std::uint64_t> want;
    for (const CombinedExpected& e : kCombinedExpected) want[{e.lower, e.upper}] = e.count;
    for (const auto& [key, count] : want) {
        auto it = cells.find(key);
        push_row(out, key.first + " x " + key.second, "count=" + std::to_string(count),
                 it == cells.end() ? "missing" : "count=" + std::to_string(it->second));
    }
    for (const auto& [key, count] : cells)
        if (!want.count(key))
            push_row(out, key.first + " x " + key.second, "absent", "count=" + std::to_string(count));
    push_row(out, "total", "168", std::to_string(total));
    return out;
}

std::vector<TableOutcome> verify_all() {
    return {verify_three_variable_table(0), verify_three_variable_table(1),
            verify_four_variable_lower(), verify_four_variable_upper(),
            verify_four_variable_combined()};
}

} // namespace dedekind::worked
