// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "oscrank/oracle.hpp"
#include "oscrank/report.hpp"
#include "oscrank/set_literal.hpp"

using namespace oscrank;
using nlohmann::json;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw Failure(msg);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SymbolicSet exactly_bottom_union(const SpacePtr& sp, int j) {
    // union of boxes pinning j chosen coordinates at -inf (the rest free);
    // as a set this is "at least j coordinates at the bottom"
    int n = sp->kind == SpaceKind::Product ? sp->arity : 1;
    LineInterval minf = *make_line_interval(CutPoint::minus_inf(), true, CutPoint::minus_inf(), true);
    LineInterval full = *make_line_interval(CutPoint::minus_inf(), true, CutPoint::plus_inf(), true);
    std::vector<Box> boxes;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != j) continue;
        Box b;
        for (int i = 0; i < n; ++i) b.push_back(mask & (1u << i) ? minf : full);
        boxes.push_back(std::move(b));
    }
    if (n == 1) {
        std::vector<LineInterval> iv;
        for (auto& b : boxes) iv.push_back(b[0]);
        return SymbolicSet::line(sp, std::move(iv));
    }
    return SymbolicSet::product(sp, std::move(boxes));
}

// ---------------------------------------------------------------------------

void criterion_multiorder_ranks() {
    for (int n = 1; n <= 4; ++n) {
        auto t0 = std::chrono::steady_clock::now();
        SystemDescriptor sys = build_system("multiorder:" + std::to_string(n));
        RankValue r = beta_of_pair(parse_map(sys, "shift-limit"),
                                   canonical_partition(sys.space, 1));
        double dt = seconds_since(t0);
        require(r == RankValue::finite(n), "multiorder:" + std::to_string(n) +
                                               " shift-limit at level 1 gave " + r.str());
        require(dt < 5.0, "multiorder:" + std::to_string(n) + " took " + std::to_string(dt) + "s");
    }
}

void criterion_chain_shape() {
    SystemDescriptor sys = build_system("multiorder:3");
    DerivativeChain chain = iterate_derivative(SymbolicSet::whole(sys.space),
                                               parse_map(sys, "shift-limit"),
                                               canonical_partition(sys.space, 1));
    require(chain.termination == Termination::Empty, "chain did not empty");
    require(chain.stages.size() == 5, "expected stages 0..3 then the empty set");
    for (int j = 0; j <= 3; ++j)
        require(chain.stages[j] == exactly_bottom_union(sys.space, j),
                "stage " + std::to_string(j) + " is not the 'at least " + std::to_string(j) +
                    " coordinates at the bottom' union");
    require(chain.stages[4].is_empty(), "final stage not empty");
}

void criterion_ominimal_bound() {
    SystemDescriptor dlo = build_system("dlo");
    for (const auto& e : dlo.entries) {
        for (int level = 1; level <= 4; ++level) {
            SymbolicSet d = derivative(SymbolicSet::whole(dlo.space), e.map,
                                       canonical_partition(dlo.space, level));
            require(d.is_finite_points(), e.map.name() + " level " + std::to_string(level) +
                                              ": first derivative is not a finite point set");
        }
        BetaMapResult bm = beta_of_map(e.map, 4);
        auto le = RankValue::le(bm.rank, RankValue::finite(1));
        require(le && *le, e.map.name() + ": beta exceeds 1: " + bm.rank.str());
    }
    PiecewiseMap stretch = parse_map(dlo, "stretch-limit");
    NamedPoint plus0 = cut_point(dlo.space, CutPoint::above(Rat(0)));
    require(beta_of_map(stretch, 4).rank == RankValue::finite(1), "stretch-limit rank is not 1");
    for (int level = 1; level <= 4; ++level) {
        Partition p = canonical_partition(dlo.space, level);
        require(derivative(SymbolicSet::whole(dlo.space), stretch, p) ==
                    SymbolicSet::point(plus0),
                "stretch-limit derivative at level " + std::to_string(level));
        OscillationReport rep =
            witness_search(stretch, p, plus0, SymbolicSet::whole(dlo.space), 4, level);
        require(rep.witnessed_everywhere(),
                "no oracle witness pair at level " + std::to_string(level));
    }
}

void criterion_cyclic_bound() {
    SystemDescriptor cyc = build_system("cyclic");
    RankValue system = beta_of_system(cyc.claimed_maps(), 4);
    require(system == RankValue::finite(1), "cyclic system rank " + system.str());
    PiecewiseMap collapse = parse_map(cyc, "cyclic-collapse");
    NamedPoint plus0 = cyclic_point(cyc.space, CyclicPoint{CyclicPoint::Tag::Plus, Rat(0)});
    Partition p2 = canonical_partition(cyc.space, 2);
    SymbolicSet d = derivative(SymbolicSet::whole(cyc.space), collapse, p2);
    require(d == SymbolicSet::point(plus0),
            "cyclic-collapse first derivative is " + d.str() + ", not the cut above the wrap");
    OscillationReport rep = witness_search(collapse, p2, plus0, SymbolicSet::whole(cyc.space), 4, 2);
    require(rep.witnessed_everywhere(), "no oracle witness at the cut above the wrap");
    for (const auto& e : cyc.entries) {
        for (int level = 1; level <= 3; ++level)
            require(derivative(SymbolicSet::whole(cyc.space), e.map,
                               canonical_partition(cyc.space, level))
                        .is_finite_points(),
                    e.map.name() + ": cyclic first derivative is not finite");
    }
}

void criterion_acf() {
    SystemDescriptor acf = build_system("acf");
    for (const auto& e : acf.entries)
        require(is_continuous(e.map, 3), e.map.name() + " is not detected continuous");
    RankValue system = beta_of_system(acf.claimed_maps(), 4);
    require(system == RankValue::finite(0), "acf system rank " + system.str());
}

void criterion_not_fragmented() {
    SystemDescriptor cyl = build_system("cylinder");
    FragmentedReport rep = is_fragmented_report(parse_map(cyl, "tail-map"));
    require(rep.verdict == FragVerdict::NotFragmented, "tail-map not detected as non-fragmented");
    require(rep.fixed && *rep.fixed == SymbolicSet::whole(cyl.space),
            "fixed set is not the whole space");
    require(rep.partition && rep.partition->num_classes() == 2,
            "witnessing partition is not the depth-1 partition");
    require(rep.iterations <= 2, "fixed point took more than 2 iterations");
    require(rep.beta == RankValue::infinite(), "tail-map rank is not infinite");
}

std::vector<LawResult> g_law_results;  // filled by criterion 7, reported in 7

void criterion_lemma_suite() {
    auto t0 = std::chrono::steady_clock::now();
    g_law_results = run_laws("all", GridOptions::full_grid());
    double dt = seconds_since(t0);
    for (const auto& r : g_law_results) {
        std::string first = r.failures.empty() ? "" : (": " + r.failures.front());
        require(r.ok(), "law " + r.law + " failed with " + std::to_string(r.failures.size()) +
                           " failure(s)" + first);
    }
    require(dt < 600.0, "lemma suite took " + std::to_string(dt) + "s (budget 600s)");
}

void criterion_factor_suite() {
    SystemDescriptor mo3 = build_system("multiorder:3");
    FactorMap proj = projection_factor(3, 1);
    FactorLemmaReport rep =
        check_factor_lemmas(proj, parse_map(mo3, "shift-limit"), SymbolicSet::whole(proj.target),
                            canonical_partition(proj.target, 1), 3);
    require(rep.inclusion_all && rep.equality_all, "projection transfer equality fails");
    require(rep.rank_eq && rep.rank_source == RankValue::finite(1),
            "projection rank equality fails");

    FactorMap glue = glue_factor();
    FactorLemmaReport grep = check_factor_lemmas(glue, glue_split_map(),
                                                 SymbolicSet::whole(glue.target),
                                                 canonical_partition(glue.target, 1), 2);
    require(grep.inclusion_all, "gluing inclusion fails");
    bool strict = false;
    for (const auto& row : grep.rows) strict = strict || (row.inclusion && !row.equality);
    require(strict, "gluing factor shows no strict inclusion");

    SystemDescriptor dlo = build_system("dlo");
    FactorMap sing = singleton_factor(dlo.space);
    Partition pulled = sing.pullback(trivial_partition(sing.target));
    for (const auto& e : dlo.entries)
        require(beta_of_pair(e.map, pulled) == RankValue::finite(0),
                "rank over the trivial entourage is not 0 for " + e.map.name());
}

void criterion_soundness() {
    for (const auto& spec : default_grid_specs(true)) {
        SystemDescriptor sys = build_system(spec);
        for (const auto& e : sys.entries) {
            for (int level = 1; level <= 3; ++level) {
                ConsistencyReport rep =
                    consistency_check(e.map, canonical_partition(sys.space, level),
                                      SymbolicSet::whole(sys.space), 4, 3);
                require(rep.hard_failures == 0,
                        spec + " " + e.map.name() + " level " + std::to_string(level) + ": " +
                            (rep.failures.empty() ? "hard failure" : rep.failures.front()));
            }
        }
    }
    // finite systems (built-in and loaded): symbolic derivative == brute force
    std::vector<SystemDescriptor> finite_systems = {builtin_z4_system()};
#ifdef OSCRANK_TEST_DATA_DIR
    finite_systems.push_back(
        load_finite_system(std::string(OSCRANK_TEST_DATA_DIR) + "/z4_rotation.json"));
    finite_systems.push_back(
        load_finite_system(std::string(OSCRANK_TEST_DATA_DIR) + "/one_point.json"));
#endif
    for (const auto& sys : finite_systems) {
        Partition p = canonical_partition(sys.space, 1);
        for (const auto& e : sys.entries) {
            SymbolicSet whole = SymbolicSet::whole(sys.space);
            require(derivative(whole, e.map, p) == finite_bruteforce_derivative(whole, e.map, p),
                    sys.spec + " " + e.map.name() + ": brute force mismatch");
            ConsistencyReport rep = consistency_check(e.map, p, whole, 4, 3);
            require(rep.hard_failures == 0 && rep.unknowns == 0,
                    sys.spec + " " + e.map.name() + ": finite exhaustion left open verdicts");
        }
    }
}

json battery() {
    // a full, freshly computed report battery; used twice for determinism
    json j;
    j["version"] = kVersion;
    for (const std::string& spec : {"acf", "dlo", "cyclic", "multiorder:2", "cylinder"}) {
        SystemDescriptor sys = build_system(spec);
        json s;
        s["system_rank"] = rank_json(beta_of_system(sys.claimed_maps(), 2));
        json maps = json::array();
        for (const auto& e : sys.entries) {
            json m;
            m["map"] = e.map.name();
            Partition p = canonical_partition(sys.space, 2);
            DerivativeChain chain = iterate_derivative(SymbolicSet::whole(sys.space), e.map, p);
            annotate_chain(chain, e.map, p, 4, 2);
            m["chain"] = chain_json(chain, true);
            m["rank"] = rank_json(chain.rank(64));
            maps.push_back(std::move(m));
        }
        s["maps"] = std::move(maps);
        j[spec] = std::move(s);
    }
    GridOptions opt = GridOptions::small_grid();
    json laws = json::array();
    for (const auto& r : run_laws("all", opt)) laws.push_back(law_json(r));
    j["laws"] = std::move(laws);
    return j;
}

std::string run_cli(const std::string& args) {
#ifdef OSCRANK_CLI_PATH
    std::string cmd = std::string(OSCRANK_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "";
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    pclose(pipe);
    return out;
#else
    return "";
#endif
}

void criterion_determinism() {
    std::string first = battery().dump();
    std::string second = battery().dump();
    require(!first.empty() && first == second, "in-process report batteries differ");
    std::string cli1 = run_cli("rank --system multiorder:2 --map shift-limit --level 1");
    std::string cli2 = run_cli("rank --system multiorder:2 --map shift-limit --level 1");
    require(!cli1.empty() && cli1 == cli2, "CLI reports differ between runs");
    std::string chk1 = run_cli("derive --system dlo --map stretch-limit --level 2 --steps");
    std::string chk2 = run_cli("derive --system dlo --map stretch-limit --level 2 --steps");
    require(!chk1.empty() && chk1 == chk2, "CLI derive reports differ between runs");
}

struct Criterion {
    int id;
    std::string name;
    std::function<void()> run;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "multi-order ranks finite(n) at level 1, n = 1..4, under 5s each",
         criterion_multiorder_ranks},
        {2, "multiorder:3 chain stages are the bottom-coordinate unions", criterion_chain_shape},
        {3, "dlo maps: finite first derivatives, rank <= 1, witnessed attainment",
         criterion_ominimal_bound},
        {4, "cyclic system rank finite(1), collapse derivative at the wrap cut",
         criterion_cyclic_bound},
        {5, "acf maps continuous, system rank finite(0)", criterion_acf},
        {6, "tail-map detected non-fragmented with the whole-space fixed set",
         criterion_not_fragmented},
        {7, "lemma suite over the full catalog grid", criterion_lemma_suite},
        {8, "factor suite: open equality, glued strictness, trivial entourage",
         criterion_factor_suite},
        {9, "oscillation soundness harness and finite brute force", criterion_soundness},
        {10, "byte-identical reports across consecutive runs", criterion_determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run();
            std::printf("[PASS] criterion %2d: %s (%.2fs)\n", c.id, c.name.c_str(),
                        seconds_since(t0));
        } catch (const std::exception& e) {
            ++failures;
            std::printf("[FAIL] criterion %2d: %s\n        %s\n", c.id, c.name.c_str(), e.what());
        }
        std::fflush(stdout);
    }
    if (failures == 0) {
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
}
