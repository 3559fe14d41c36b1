#pragma once

#include "oscrank/catalog.hpp"
#include "oscrank/factor.hpp"
#include "oscrank/oracle.hpp"

namespace oscrank {

struct GridOptions {
    bool full = false;
    int max_level = 3;
    int height = 4;
    int depth = 3;
    long long cap = 64;
    std::vector<std::string> systems;

    static GridOptions small_grid();
    static GridOptions full_grid();
};

struct LawResult {
    std::string law;
    long long cases = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// monotonicity, conjugation, br-le-cb, directions, factor, continuity,
/// osc-consistency.
const std::vector<std::string>& law_names();

LawResult run_law(const std::string& law, const GridOptions& opt);

/// One law by name, or every law for "all".
std::vector<LawResult> run_laws(const std::string& law_or_all, const GridOptions& opt);

}  // namespace oscrank
