#pragma once

// Pinned worked examples for the step formulas at tiny bases: the full instance
// tables of the three-variable system over n=0 and n=1 (row sums D(3) and D(4))
// and of the doubled four-variable system over n=0 (total D(4)), including the
// per-orbit solution counts and equivalence class sizes. The `tables` CLI
// subcommand and the acceptance suite replay them row by row.

#include <string>
#include <vector>

namespace dedekind::worked {

struct RowOutcome {
    std::string key;
    std::string expected;
    std::string actual;
    bool ok = false;
};

struct TableOutcome {
    std::string name;
    std::vector<RowOutcome> rows;
    bool ok = true;
};

TableOutcome verify_three_variable_table(int n); // n = 0 or 1
TableOutcome verify_four_variable_lower();       // solvable (alpha, beta..) patterns, n = 0
TableOutcome verify_four_variable_upper();       // solvable (epsilon, delta..) patterns, n = 0
TableOutcome verify_four_variable_combined();    // nonzero combination counts and the total

std::vector<TableOutcome> verify_all();

} // namespace dedekind::worked
