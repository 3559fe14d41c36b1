// oscrank: oscillation ranks of maps on finitely presented Stone-space
// dynamical systems. Subcommands: rank, derive, check.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <iostream>

#include "oscrank/report.hpp"
#include "oscrank/set_literal.hpp"

using namespace oscrank;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCapped = 3;

struct CommonFlags {
    std::string format = "json";
    bool timings = false;
};

void emit(const json& j, const CommonFlags& flags, const std::string& text) {
    if (flags.format == "json") std::cout << j.dump() << "\n";
    else std::cout << text;
}

json maybe_timings(const CommonFlags& flags, std::chrono::steady_clock::time_point t0) {
    json j;
    if (flags.timings) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        j["total_ms"] = ms;
    }
    return j;
}

int cmd_rank(const std::string& system, const std::string& map_name, bool all_maps, int level,
             long long cap, const CommonFlags& flags) {
    auto t0 = std::chrono::steady_clock::now();
    SystemDescriptor sys = build_system(system);
    json j;
    j["command"] = "rank";
    j["system"] = system;
    j["level"] = level;
    j["cap"] = cap;
    j["version"] = kVersion;
    std::string text;
    bool capped = false;

    auto rank_one = [&](const PiecewiseMap& f) {
        json e;
        e["map"] = f.name();
        RankValue pair_rank = beta_of_pair(f, canonical_partition(sys.space, level),
                                           std::nullopt, cap);
        BetaMapResult bm = beta_of_map(f, level, cap);
        e["rank"] = rank_json(pair_rank);
        json per = json::array();
        for (const auto& r : bm.per_level) per.push_back(rank_json(r));
        e["beta_map"] = json{{"rank", rank_json(bm.rank)},
                             {"stabilized", bm.stabilized},
                             {"per_level", per}};
        capped = capped || pair_rank.is_capped() || bm.rank.is_capped();
        text += system + " " + f.name() + " level " + std::to_string(level) + ": beta(f,W) = " +
                pair_rank.str() + ", beta(f) = " + bm.rank.str() +
                (bm.stabilized ? " (stabilized)\n" : " (not stabilized)\n");
        return e;
    };

    if (all_maps) {
        json maps = json::array();
        for (const auto& e : sys.entries) maps.push_back(rank_one(e.map));
        j["maps"] = std::move(maps);
        RankValue system_rank = beta_of_system(sys.claimed_maps(), level, cap);
        capped = capped || system_rank.is_capped();
        j["system_rank"] = rank_json(system_rank);
        j["system_rank_over"] = "claimed Ellis elements";
        text += system + " system rank (claimed Ellis elements): " + system_rank.str() + "\n";
    } else {
        PiecewiseMap f = parse_map(sys, map_name);
        json e = rank_one(f);
        j["map"] = f.name();
        j["rank"] = e["rank"];
        j["beta_map"] = e["beta_map"];
    }
    json t = maybe_timings(flags, t0);
    if (!t.is_null() && !t.empty()) j["timings"] = t;
    emit(j, flags, text);
    return capped ? kExitCapped : kExitOk;
}

int cmd_derive(const std::string& system, const std::string& map_name, int level,
               const std::string& set_literal, bool steps, long long cap,
               const CommonFlags& flags) {
    auto t0 = std::chrono::steady_clock::now();
    SystemDescriptor sys = build_system(system);
    PiecewiseMap f = parse_map(sys, map_name);
    Partition p = canonical_partition(sys.space, level);
    SymbolicSet start = set_literal.empty() ? SymbolicSet::whole(sys.space)
                                            : parse_set_literal(sys.space, set_literal).closure();
    DerivativeChain chain = iterate_derivative(start, f, p, cap);
    if (steps) annotate_chain(chain, f, p);
    json j;
    j["command"] = "derive";
    j["system"] = system;
    j["map"] = f.name();
    j["level"] = level;
    j["cap"] = cap;
    j["version"] = kVersion;
    json cj = chain_json(chain, steps);
    j["stages"] = cj["stages"];
    j["termination"] = cj["termination"];
    if (steps && cj.contains("witnesses")) j["witnesses"] = cj["witnesses"];
    RankValue r = chain.rank(cap);
    j["rank"] = rank_json(r);
    std::string text = system + " " + f.name() + " level " + std::to_string(level) + ":\n";
    for (size_t i = 0; i < chain.stages.size(); ++i)
        text += "  stage " + std::to_string(i) + ": " + chain.stages[i].str() + "\n";
    text += "  termination: " + termination_str(chain.termination) + ", rank " + r.str() + "\n";
    json t = maybe_timings(flags, t0);
    if (!t.is_null() && !t.empty()) j["timings"] = t;
    emit(j, flags, text);
    return r.is_capped() ? kExitCapped : kExitOk;
}

int cmd_check(const std::string& law, const std::string& grid, const CommonFlags& flags) {
    auto t0 = std::chrono::steady_clock::now();
    GridOptions opt = grid == "full" ? GridOptions::full_grid() : GridOptions::small_grid();
    std::vector<LawResult> results = run_laws(law, opt);
    json j;
    j["command"] = "check";
    j["grid"] = grid;
    j["version"] = kVersion;
    json laws = json::array();
    bool all_ok = true;
    std::string text;
    for (const auto& r : results) {
        laws.push_back(law_json(r));
        all_ok = all_ok && r.ok();
        text += "law " + r.law + ": " + (r.ok() ? "PASS" : "FAIL") + " (" +
                std::to_string(r.cases) + " cases)\n";
        for (const auto& f : r.failures) text += "  " + f + "\n";
    }
    j["laws"] = std::move(laws);
    j["pass"] = all_ok;
    json t = maybe_timings(flags, t0);
    if (!t.is_null() && !t.empty()) j["timings"] = t;
    emit(j, flags, text);
    return all_ok ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"oscillation ranks on finitely presented Stone-space dynamical systems"};
    app.require_subcommand(1);
    CommonFlags flags;

    // OSCRANK_THREADS caps worker fan-out; evaluation currently runs the grid
    // sequentially (deterministic order), so any cap >= 1 is honoured as-is.
    if (const char* env = std::getenv("OSCRANK_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (!end || *end != '\0' || v < 1) {
            std::cerr << "OSCRANK_THREADS must be a positive integer\n";
            return kExitUsage;
        }
    }

    // rank
    auto* rank = app.add_subcommand("rank", "beta ranks of a map or a whole system");
    std::string r_system, r_map;
    bool r_all = false;
    int r_level = 3;
    long long r_cap = 64;
    rank->add_option("--system", r_system, "system spec (acf, dlo, cyclic, multiorder:<n>, cylinder, finite:<path>)")->required();
    rank->add_option("--map", r_map, "catalog map name, or plauto:(x,y)... / perm:(a b)...");
    rank->add_flag("--all", r_all, "rank every catalog map and the system");
    rank->add_option("--level", r_level, "canonical partition level (default 3)");
    rank->add_option("--cap", r_cap, "iteration cap (default 64)");
    rank->add_option("--format", flags.format, "json|text")->check(CLI::IsMember({"json", "text"}));
    rank->add_flag("--timings", flags.timings, "include timings (breaks byte-reproducibility)");

    // derive
    auto* derive = app.add_subcommand("derive", "print the full derivative chain");
    std::string d_system, d_map, d_set;
    int d_level = 3;
    bool d_steps = false;
    long long d_cap = 64;
    derive->add_option("--system", d_system, "system spec")->required();
    derive->add_option("--map", d_map, "map name")->required();
    derive->add_option("--level", d_level, "canonical partition level (default 3)");
    derive->add_option("--set", d_set, "starting set literal, e.g. \"[0+,1-] | {3}\"");
    derive->add_flag("--steps", d_steps, "attach per-stage oscillation witnesses");
    derive->add_option("--cap", d_cap, "iteration cap (default 64)");
    derive->add_option("--format", flags.format, "json|text")->check(CLI::IsMember({"json", "text"}));
    derive->add_flag("--timings", flags.timings, "include timings");

    // check
    auto* check = app.add_subcommand("check", "run a lemma suite over the catalog grid");
    std::string c_law, c_grid = "small";
    check->add_option("--law", c_law, "monotonicity|conjugation|br-le-cb|directions|factor|continuity|osc-consistency|all")
        ->required();
    check->add_option("--grid", c_grid, "small|full")->check(CLI::IsMember({"small", "full"}));
    check->add_option("--format", flags.format, "json|text")->check(CLI::IsMember({"json", "text"}));
    check->add_flag("--timings", flags.timings, "include timings");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (rank->parsed()) {
            if (r_all == !r_map.empty()) {
                std::cerr << "rank: pass exactly one of --map <name> or --all\n";
                return kExitUsage;
            }
            return cmd_rank(r_system, r_map, r_all, r_level, r_cap, flags);
        }
        if (derive->parsed()) return cmd_derive(d_system, d_map, d_level, d_set, d_steps, d_cap, flags);
        if (check->parsed()) {
            if (c_law != "all" &&
                std::find(law_names().begin(), law_names().end(), c_law) == law_names().end()) {
                std::cerr << "check: unknown law '" << c_law << "'\n";
                return kExitUsage;
            }
            return cmd_check(c_law, c_grid, flags);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
