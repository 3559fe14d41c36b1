#include "oscrank/laws.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace oscrank {

GridOptions GridOptions::small_grid() {
    GridOptions g;
    g.full = false;
    g.max_level = 2;
    g.height = 3;
    g.depth = 2;
    g.systems = default_grid_specs(false);
    return g;
}

GridOptions GridOptions::full_grid() {
    GridOptions g;
    g.full = true;
    g.max_level = 3;
    g.height = 4;
    g.depth = 3;
    g.systems = default_grid_specs(true);
    return g;
}

const std::vector<std::string>& law_names() {
    static const std::vector<std::string> names = {
        "monotonicity", "conjugation", "br-le-cb",       "directions",
        "factor",       "continuity",  "osc-consistency"};
    return names;
}

namespace {

struct GridContext {
    const GridOptions& opt;
    std::vector<SystemDescriptor> systems;
    std::map<std::string, const std::vector<NamedPoint>*> samples;

    explicit GridContext(const GridOptions& o) : opt(o) {
        for (const auto& spec : o.systems) systems.push_back(build_system(spec));
    }
    const std::vector<NamedPoint>& samples_for(const SystemDescriptor& sys) {
        auto it = samples.find(sys.spec);
        if (it == samples.end())
            it = samples.emplace(sys.spec, &named_samples(sys.space, opt.height)).first;
        return *it->second;
    }
};

SymbolicSet stage_at(const DerivativeChain& chain, int alpha, const SpacePtr& sp) {
    if (alpha < static_cast<int>(chain.stages.size())) return chain.stages[alpha];
    if (chain.termination == Termination::FixedPoint) return chain.stages.back();
    return SymbolicSet::empty(sp);
}

void record(LawResult& res, const std::string& msg) {
    if (res.failures.size() < 64) res.failures.push_back(msg);
    else if (res.failures.size() == 64) res.failures.push_back("... (more failures suppressed)");
}

std::string where(const SystemDescriptor& sys, const PiecewiseMap& f, int level) {
    return "system=" + sys.spec + " map=" + f.name() + " level=" + std::to_string(level);
}

// closed sets exercised by the monotonicity suite
std::vector<SymbolicSet> closed_family(const SystemDescriptor& sys, const DerivativeChain& chain,
                                       const Partition& p) {
    std::vector<SymbolicSet> out;
    out.push_back(SymbolicSet::whole(sys.space));
    for (size_t i = 1; i < chain.stages.size(); ++i)
        if (!chain.stages[i].is_empty()) out.push_back(chain.stages[i]);
    out.push_back(p.atom_set(0).closure());
    out.push_back(p.atom_set(p.num_classes() - 1).closure());
    if (auto w = SymbolicSet::whole(sys.space).witness()) out.push_back(SymbolicSet::point(*w));
    std::vector<SymbolicSet> dedup;
    for (auto& s : out) {
        if (s.is_empty() || !s.is_closed()) continue;
        if (std::find(dedup.begin(), dedup.end(), s) == dedup.end()) dedup.push_back(std::move(s));
    }
    return dedup;
}

LawResult law_monotonicity(GridContext& ctx) {
    LawResult res{"monotonicity"};
    for (const auto& sys : ctx.systems) {
        for (const auto& f : sys.all_maps()) {
            std::vector<RankValue> per_level;
            for (int l = 1; l <= ctx.opt.max_level; ++l) {
                Partition p = canonical_partition(sys.space, l);
                DerivativeChain chain =
                    iterate_derivative(SymbolicSet::whole(sys.space), f, p, ctx.opt.cap);
                auto family = closed_family(sys, chain, p);
                for (size_t i = 0; i < family.size(); ++i)
                    for (size_t j = 0; j < family.size(); ++j) {
                        if (i == j || !family[i].subset_of(family[j])) continue;
                        ++res.cases;
                        SymbolicSet d1 = derivative(family[i], f, p);
                        SymbolicSet d2 = derivative(family[j], f, p);
                        if (!d1.subset_of(d2))
                            record(res, "derived-set monotonicity fails: " + where(sys, f, l) +
                                            " Y1=" + family[i].str() + " Y2=" + family[j].str());
                        auto b1 = beta_of_pair(f, p, family[i], ctx.opt.cap);
                        auto b2 = beta_of_pair(f, p, family[j], ctx.opt.cap);
                        auto le = RankValue::le(b1, b2);
                        if (!le || !*le)
                            record(res, "restriction rank monotonicity fails: " +
                                            where(sys, f, l) + " Y1=" + family[i].str() +
                                            " Y2=" + family[j].str() + " " + b1.str() + " vs " +
                                            b2.str());
                    }
                // restriction bound via stage witnesses of the restricted chain
                for (const auto& d : family) {
                    ++res.cases;
                    DerivativeChain dchain = iterate_derivative(d, f, p, ctx.opt.cap);
                    RankValue beta_d = dchain.rank(ctx.opt.cap);
                    std::vector<RankValue> ranks;
                    for (const auto& st : dchain.stages)
                        if (auto w = st.witness())
                            ranks.push_back(point_rank_in_chain(chain, *w, ctx.opt.cap));
                    RankValue sup = RankValue::sup(ranks);
                    auto le = RankValue::le(beta_d, sup);
                    if (!le || !*le)
                        record(res, "restriction bound fails: " + where(sys, f, l) +
                                        " D=" + d.str() + " beta=" + beta_d.str() +
                                        " sup=" + sup.str());
                }
                per_level.push_back(chain.rank(ctx.opt.cap));
            }
            // refinement monotonicity across levels
            for (int l1 = 1; l1 <= ctx.opt.max_level; ++l1)
                for (int l2 = l1 + 1; l2 <= ctx.opt.max_level; ++l2) {
                    ++res.cases;
                    Partition fine = canonical_partition(sys.space, l2);
                    Partition coarse = canonical_partition(sys.space, l1);
                    if (!fine.refines(coarse))
                        record(res, "canonical refinement fails: " + sys.spec + " levels " +
                                        std::to_string(l2) + "->" + std::to_string(l1));
                    auto le = RankValue::le(per_level[l1 - 1], per_level[l2 - 1]);
                    if (!le || !*le)
                        record(res, "refinement rank monotonicity fails: " + where(sys, f, l1) +
                                        " vs level " + std::to_string(l2) + ": " +
                                        per_level[l1 - 1].str() + " vs " + per_level[l2 - 1].str());
                }
        }
    }
    return res;
}

LawResult law_conjugation(GridContext& ctx) {
    LawResult res{"conjugation"};
    for (const auto& sys : ctx.systems) {
        const auto& samples = ctx.samples_for(sys);
        for (const auto& h : sys.homeos) {
            for (const auto& f : sys.all_maps()) {
                if (f.has_dense_codense() && !h.is_identity()) continue;
                auto [fh, hfh] = conjugate(h, f);
                for (int l = 1; l <= ctx.opt.max_level; ++l) {
                    Partition p = canonical_partition(sys.space, l);
                    Partition hp = h.push_partition(p);
                    SymbolicSet whole = SymbolicSet::whole(sys.space);
                    DerivativeChain cf = iterate_derivative(whole, f, p, ctx.opt.cap);
                    DerivativeChain cfh = iterate_derivative(whole, fh, p, ctx.opt.cap);
                    DerivativeChain chfh = iterate_derivative(whole, hfh, hp, ctx.opt.cap);
                    for (int a = 0; a <= 3; ++a) {
                        ++res.cases;
                        SymbolicSet lhs = h.image(stage_at(cf, a, sys.space));
                        SymbolicSet mid = stage_at(cfh, a, sys.space);
                        SymbolicSet rhs = stage_at(chfh, a, sys.space);
                        if (lhs != mid)
                            record(res, "conjugation image fails: " + where(sys, f, l) + " h=" +
                                            h.str() + " alpha=" + std::to_string(a) + ": " +
                                            lhs.str() + " vs " + mid.str());
                        if (mid != rhs)
                            record(res, "full conjugation fails: " + where(sys, f, l) + " h=" +
                                            h.str() + " alpha=" + std::to_string(a) + ": " +
                                            mid.str() + " vs " + rhs.str());
                    }
                    // pair-level point-rank invariance
                    for (const auto& x : samples) {
                        ++res.cases;
                        RankValue r1 = point_rank_in_chain(cf, x, ctx.opt.cap);
                        RankValue r2 = point_rank_in_chain(cfh, h.apply(x), ctx.opt.cap);
                        if (r1 != r2) {
                            record(res, "point-rank invariance fails: " + where(sys, f, l) +
                                            " h=" + h.str() + " x=" + to_string(x) + ": " +
                                            r1.str() + " vs " + r2.str());
                            break;
                        }
                    }
                }
            }
        }
    }
    return res;
}

LawResult law_br_le_cb(GridContext& ctx) {
    LawResult res{"br-le-cb"};
    for (const auto& sys : ctx.systems) {
        const auto& samples = ctx.samples_for(sys);
        for (const auto& f : sys.all_maps()) {
            for (int l = 1; l <= ctx.opt.max_level; ++l) {
                Partition p = canonical_partition(sys.space, l);
                DerivativeChain chain =
                    iterate_derivative(SymbolicSet::whole(sys.space), f, p, ctx.opt.cap);
                for (const auto& x : samples) {
                    ++res.cases;
                    RankValue r = point_rank_in_chain(chain, x, ctx.opt.cap);
                    RankValue c = cb_point_rank(sys.space, x);
                    auto le = RankValue::le(r, c);
                    if (!le || !*le) {
                        record(res, "bR <= CB fails: " + where(sys, f, l) + " x=" + to_string(x) +
                                        ": " + r.str() + " vs " + c.str());
                        break;
                    }
                }
            }
        }
    }
    return res;
}

LawResult law_directions(GridContext& ctx) {
    LawResult res{"directions"};
    for (const auto& sys : ctx.systems) {
        bool ordered = sys.space->kind == SpaceKind::CutLine;
        bool cyclic = sys.space->kind == SpaceKind::Cyclic;
        if (!ordered && !cyclic) continue;
        for (const auto& f : sys.all_maps()) {
            for (int l = 1; l <= ctx.opt.max_level; ++l) {
                Partition p = canonical_partition(sys.space, l);
                SymbolicSet d1 = derivative(SymbolicSet::whole(sys.space), f, p);
                ++res.cases;
                if (!d1.is_finite_points()) {
                    record(res, "first derivative not finite: " + where(sys, f, l) + " = " +
                                    d1.str());
                    continue;
                }
                if (!ordered) continue;
                auto pts = d1.points();
                std::vector<Directions> dirs;
                for (const auto& pt : pts) {
                    ++res.cases;
                    Directions dir = oscillation_directions(f, p, pt);
                    dirs.push_back(dir);
                    if (!dir.any())
                        record(res, "no oscillation direction: " + where(sys, f, l) + " x=" +
                                        to_string(pt));
                }
                for (size_t i = 0; i < pts.size(); ++i)
                    for (size_t j = i + 1; j < pts.size(); ++j) {
                        if (p.atom_index(f.apply(pts[i])) != p.atom_index(f.apply(pts[j])))
                            continue;
                        ++res.cases;
                        if ((dirs[i].right && dirs[j].right) || (dirs[i].left && dirs[j].left))
                            record(res, "shared oscillation direction: " + where(sys, f, l) +
                                            " at " + to_string(pts[i]) + " and " +
                                            to_string(pts[j]));
                    }
            }
        }
    }
    return res;
}

LawResult law_factor(GridContext& ctx) {
    LawResult res{"factor"};
    long long cap = ctx.opt.cap;
    auto expect = [&](bool cond, const std::string& msg) {
        ++res.cases;
        if (!cond) record(res, msg);
    };

    // open projection: equality at every stage and equal ranks
    {
        SystemDescriptor mo3 = build_system("multiorder:3");
        FactorMap proj = projection_factor(3, 1);
        PiecewiseMap f = parse_map(mo3, "shift-limit");
        SymbolicSet d = SymbolicSet::whole(proj.target);
        Partition p = canonical_partition(proj.target, 1);
        FactorLemmaReport rep = check_factor_lemmas(proj, f, d, p, 3, cap);
        expect(rep.inclusion_all, "projection: stage inclusion fails");
        expect(rep.equality_all, "projection: open-map stage equality fails");
        expect(rep.rank_le && *rep.rank_le, "projection: rank comparison fails");
        expect(rep.rank_eq, "projection: open-map rank equality fails");
        expect(rep.rank_source == RankValue::finite(1),
               "projection: pulled-back rank should be finite(1), got " + rep.rank_source.str());

        // transfer identity against the one-coordinate catalog
        SystemDescriptor mo1 = build_system("multiorder:1");
        PiecewiseMap theta = transfer_map(proj, f);
        PiecewiseMap direct = parse_map(mo1, "shift-limit");
        for (const auto& x : named_samples(proj.target, 3)) {
            ++res.cases;
            if (compare(theta.apply(x), direct.apply(x)) != 0) {
                record(res, "transferred shift-limit disagrees at " + to_string(x));
                break;
            }
        }
        PiecewiseMap theta_id = transfer_map(proj, identity_map(proj.source));
        for (const auto& x : named_samples(proj.target, 2)) {
            ++res.cases;
            if (compare(theta_id.apply(x), x) != 0) {
                record(res, "transferred identity is not the identity at " + to_string(x));
                break;
            }
        }
        // equivariance on samples
        for (const auto& g : mo3.homeos)
            for (const auto& x : named_samples(proj.source, 2)) {
                ++res.cases;
                NamedPoint lhs = proj.map_group(g).apply(proj.map_point(x));
                NamedPoint rhs = proj.map_point(g.apply(x));
                if (compare(lhs, rhs) != 0) {
                    record(res, "projection equivariance fails for " + g.str() + " at " +
                                    to_string(x));
                    break;
                }
            }
        // openness witness: the image of a clopen box is clopen
        SymbolicSet box = proj.preimage(
            line_interval_set(proj.target, CutPoint::above(Rat(0)), true, CutPoint::below(Rat(1)), true));
        expect(proj.image(box).is_clopen(), "projection: image of a clopen box is not clopen");
    }

    // singleton factors are equivariant over the whole catalog
    for (const auto& sys : ctx.systems) {
        FactorMap sing = singleton_factor(sys.space);
        for (const auto& g : sys.homeos)
            for (const auto& x : named_samples(sys.space, 2)) {
                ++res.cases;
                if (compare(sing.map_group(g).apply(sing.map_point(x)),
                            sing.map_point(g.apply(x))) != 0) {
                    record(res, "singleton equivariance fails on " + sys.spec);
                    break;
                }
            }
    }

    // singleton factor: the pulled-back trivial entourage kills every rank
    {
        SystemDescriptor dlo = build_system("dlo");
        FactorMap sing = singleton_factor(dlo.space);
        PiecewiseMap f = parse_map(dlo, "stretch-limit");
        Partition triv = trivial_partition(sing.target);
        FactorLemmaReport rep = check_factor_lemmas(sing, f, SymbolicSet::whole(sing.target),
                                                    triv, 2, cap);
        expect(rep.inclusion_all && rep.equality_all, "singleton: stage transfer fails");
        expect(rep.rank_source == RankValue::finite(0) && rep.rank_target == RankValue::finite(0),
               "singleton: ranks over the trivial entourage should vanish");
        Partition pulled = sing.pullback(triv);
        expect(beta_of_pair(f, pulled, std::nullopt, cap) == RankValue::finite(0),
               "singleton: beta over X x X should be finite(0)");
    }

    // gluing factor: not open; inclusion holds, equality fails at some stage
    {
        FactorMap glue = glue_factor();
        expect(!glue.is_open, "glue factor should be declared non-open");
        SymbolicSet zero = SymbolicSet::compact(glue.source, CompactSet{false, {0}, false});
        expect(!glue.image(zero).is_clopen(),
               "glue factor: image of the clopen {iso:0} should not be clopen");
        PiecewiseMap f = glue_split_map();
        Partition p = canonical_partition(glue.target, 1);
        FactorLemmaReport rep =
            check_factor_lemmas(glue, f, SymbolicSet::whole(glue.target), p, 2, cap);
        expect(rep.inclusion_all, "glue: stage inclusion fails");
        bool strict = false;
        for (const auto& row : rep.rows) strict = strict || (row.inclusion && !row.equality);
        expect(strict, "glue: expected strict inclusion at some stage");
        expect(rep.rank_le && *rep.rank_le, "glue: rank comparison fails");
    }
    return res;
}

LawResult law_continuity(GridContext& ctx) {
    LawResult res{"continuity"};
    for (const auto& sys : ctx.systems) {
        for (const auto& f : sys.all_maps()) {
            ++res.cases;
            bool cont = is_continuous(f, ctx.opt.max_level);
            BetaMapResult bm = beta_of_map(f, ctx.opt.max_level, ctx.opt.cap);
            bool zero = bm.rank == RankValue::finite(0);
            if (cont != zero)
                record(res, "continuity <-> rank-0 fails: system=" + sys.spec + " map=" +
                                f.name() + " continuous=" + (cont ? "yes" : "no") + " beta=" +
                                bm.rank.str());
        }
    }
    return res;
}

LawResult law_osc_consistency(GridContext& ctx) {
    LawResult res{"osc-consistency"};
    for (const auto& sys : ctx.systems) {
        for (const auto& f : sys.all_maps()) {
            for (int l = 1; l <= ctx.opt.max_level; ++l) {
                ++res.cases;
                Partition p = canonical_partition(sys.space, l);
                ConsistencyReport rep = consistency_check(f, p, SymbolicSet::whole(sys.space),
                                                          ctx.opt.height, ctx.opt.depth);
                if (!rep.ok())
                    for (const auto& msg : rep.failures)
                        record(res, "soundness: " + where(sys, f, l) + ": " + msg);
                if (sys.space->kind == SpaceKind::Finite && rep.unknowns != 0)
                    record(res, "finite system left unknowns: " + where(sys, f, l));
            }
        }
        // formula cross-check against the literal pairwise form on small partitions
        int pairwise_level = sys.space->kind == SpaceKind::Product ? 1
                             : sys.space->kind == SpaceKind::Cylinder ? 0  // dense/codense: skip
                                                                      : 2;
        for (const auto& f : sys.all_maps()) {
            if (f.has_dense_codense()) continue;
            for (int l = 1; l <= pairwise_level; ++l) {
                ++res.cases;
                Partition p = canonical_partition(sys.space, l);
                SymbolicSet a = derivative(SymbolicSet::whole(sys.space), f, p);
                SymbolicSet b = derivative_pairwise(SymbolicSet::whole(sys.space), f, p);
                if (a != b)
                    record(res, "pairwise formula mismatch: " + where(sys, f, l) + ": " + a.str() +
                                    " vs " + b.str());
            }
        }
    }
    // finite discrete systems: the symbolic derivative equals the brute force
    SystemDescriptor z4 = builtin_z4_system();
    for (const auto& f : z4.all_maps()) {
        Partition p = canonical_partition(z4.space, 1);
        std::vector<SymbolicSet> ys = {SymbolicSet::whole(z4.space),
                                       SymbolicSet::finite(z4.space, {0, 2})};
        for (const auto& y : ys) {
            ++res.cases;
            SymbolicSet a = derivative(y, f, p);
            SymbolicSet b = finite_bruteforce_derivative(y, f, p);
            SymbolicSet c = derivative_pairwise(y, f, p);
            if (a != b || a != c)
                record(res, "finite brute force mismatch: map=" + f.name() + " Y=" + y.str());
        }
    }
    return res;
}

}  // namespace

LawResult run_law(const std::string& law, const GridOptions& opt) {
    GridContext ctx(opt);
    if (law == "monotonicity") return law_monotonicity(ctx);
    if (law == "conjugation") return law_conjugation(ctx);
    if (law == "br-le-cb") return law_br_le_cb(ctx);
    if (law == "directions") return law_directions(ctx);
    if (law == "factor") return law_factor(ctx);
    if (law == "continuity") return law_continuity(ctx);
    if (law == "osc-consistency") return law_osc_consistency(ctx);
    throw std::invalid_argument("unknown law: '" + law + "'");
}

std::vector<LawResult> run_laws(const std::string& law_or_all, const GridOptions& opt) {
    std::vector<LawResult> out;
    if (law_or_all == "all") {
        for (const auto& name : law_names()) out.push_back(run_law(name, opt));
    } else {
        out.push_back(run_law(law_or_all, opt));
    }
    return out;
}

}  // namespace oscrank
