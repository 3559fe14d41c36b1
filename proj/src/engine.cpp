#include "oscrank/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace oscrank {

// ---------------------------------------------------------------------------
// RankValue
// ---------------------------------------------------------------------------

std::optional<bool> RankValue::le(const RankValue& a, const RankValue& b) {
    if (a.is_capped() || b.is_capped()) return std::nullopt;
    if (a.is_infinite()) return b.is_infinite();
    if (b.is_infinite()) return true;
    return a.n <= b.n;
}

RankValue RankValue::sup(const std::vector<RankValue>& xs) {
    if (xs.empty()) return finite(0);
    bool saw_capped = false;
    long long cap_steps = 0;
    bool saw_inf = false;
    long long best = 0;
    for (const auto& x : xs) {
        if (x.is_capped()) {
            saw_capped = true;
            cap_steps = std::max(cap_steps, x.n);
        } else if (x.is_infinite()) {
            saw_inf = true;
        } else {
            best = std::max(best, x.n);
        }
    }
    if (saw_capped && !saw_inf) return capped(cap_steps);
    if (saw_inf) return infinite();
    return finite(best);
}

std::string RankValue::str() const {
    switch (kind) {
        case Kind::Finite: return "finite(" + std::to_string(n) + ")";
        case Kind::Infinite: return "infinite";
        default: return "capped(" + std::to_string(n) + ")";
    }
}

RankValue DerivativeChain::rank(long long cap) const {
    switch (termination) {
        case Termination::Empty: {
            long long k = static_cast<long long>(stages.size()) - 2;
            return RankValue::finite(k < 0 ? 0 : k);
        }
        case Termination::FixedPoint: return RankValue::infinite();
        default: return RankValue::capped(cap);
    }
}

// ---------------------------------------------------------------------------
// equal-atom locus
// ---------------------------------------------------------------------------

namespace {

PLAuto coord_pl(const GroupElement& g, int i) {
    if (std::holds_alternative<IdentityElem>(g.impl)) return PLAuto{};
    if (auto* pl = std::get_if<PLAuto>(&g.impl)) return *pl;
    if (auto* pr = std::get_if<ProductAuto>(&g.impl)) return pr->comps[i];
    throw std::invalid_argument("element has no cut-line coordinate parts");
}

// union over line atoms a of g^-1[a] ∩ h^-1[a]
std::vector<LineInterval> line_equal_locus(const PLAuto& g, const PLAuto& h,
                                           const Partition::LineCuts& cuts,
                                           const SpacePtr& line_sp) {
    Partition p;
    p.space = line_sp;
    p.impl = cuts;
    PLAuto gi = g.inverse(), hi = h.inverse();
    std::vector<LineInterval> out;
    long long n = p.num_classes();
    for (long long i = 0; i < n; ++i) {
        const auto& atom = p.atom_set(i).as_line().iv.front();
        LineInterval ga = gi.image(atom), ha = hi.image(atom);
        AxisPos<CutPoint> lo = compare(ga.lo.p, ha.lo.p) < 0 ||
                                       (compare(ga.lo.p, ha.lo.p) == 0 && ga.lo.side <= ha.lo.side)
                                   ? ha.lo
                                   : ga.lo;
        AxisPos<CutPoint> hi2 = compare(ga.hi.p, ha.hi.p) < 0 ||
                                        (compare(ga.hi.p, ha.hi.p) == 0 && ga.hi.side <= ha.hi.side)
                                    ? ga.hi
                                    : ha.hi;
        auto iv = make_line_interval(lo.p, lo.side == -1, hi2.p, hi2.side == +1);
        if (iv) out.push_back(*iv);
    }
    return canon_line(std::move(out));
}

}  // namespace

SymbolicSet equal_atom_locus(const GroupElement& g, const GroupElement& h, const Partition& p) {
    SpacePtr sp = p.space;
    if (g == h) return SymbolicSet::whole(sp);
    if (auto* pc = std::get_if<Partition::ProductCuts>(&p.impl)) {
        SpacePtr line = parse_space("cutline");
        std::vector<std::vector<LineInterval>> loci;
        for (int i = 0; i < sp->arity; ++i)
            loci.push_back(line_equal_locus(coord_pl(g, i), coord_pl(h, i), pc->factors[i], line));
        // cartesian product of the per-coordinate interval lists
        std::vector<Box> boxes = {{}};
        for (const auto& l : loci) {
            std::vector<Box> next;
            for (const auto& b : boxes)
                for (const auto& iv : l) {
                    Box nb = b;
                    nb.push_back(iv);
                    next.push_back(std::move(nb));
                }
            boxes = std::move(next);
        }
        return SymbolicSet::product(sp, std::move(boxes));
    }
    if (auto* lc = std::get_if<Partition::LineCuts>(&p.impl)) {
        return SymbolicSet::line(sp, line_equal_locus(coord_pl(g, 0), coord_pl(h, 0), *lc, sp));
    }
    // generic: atom loop (compact, cyclic, cylinder-depth with identities, flat)
    long long n = p.num_classes();
    if (n > 4096) throw std::length_error("equal_atom_locus: partition too large");
    SymbolicSet out = SymbolicSet::empty(sp);
    for (long long i = 0; i < n; ++i) {
        SymbolicSet a = p.atom_set(i);
        out = out.unite(g.preimage(a).intersect(h.preimage(a)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// derivative
// ---------------------------------------------------------------------------

namespace {

SymbolicSet preimage_in(const PiecewiseMap& f, const SymbolicSet& a, const SymbolicSet& y) {
    return y.intersect(preimage_clopen(f, a));
}

void check_derivative_args(const SymbolicSet& y, const PiecewiseMap& f, const Partition& p) {
    if (!same_space(y.space(), f.space()) || !same_space(p.space, f.space()))
        throw std::invalid_argument("derivative: space mismatch");
    if (!y.is_closed()) throw std::invalid_argument("derivative: the set is not closed");
}

}  // namespace

SymbolicSet derivative(const SymbolicSet& y, const PiecewiseMap& f, const Partition& p) {
    check_derivative_args(y, f, p);
    if (f.has_dense_codense()) {
        const auto& d = std::get<DenseCodense>(f.pieces().front().action);
        if (!p.separates(d.c0, d.c1)) return SymbolicSet::empty(y.space());
        // both fibers are dense in every cylinder: oscillation exactly at the
        // non-isolated points of Y, i.e. drop the marked points
        CylinderSet cs = y.as_cylinder();
        cs.pts.clear();
        return SymbolicSet::cylinder(y.space(), cs);
    }
    SymbolicSet out = SymbolicSet::empty(y.space());
    for (const auto& piece : f.pieces()) {
        SymbolicSet d = y.intersect(piece.region);
        if (d.is_empty()) continue;
        if (auto* c = std::get_if<Constant>(&piece.action)) {
            SymbolicSet atom = p.atom_of(c->value);
            out = out.unite(d.closure().diff(preimage_in(f, atom, y)));
        } else {
            const GroupElement& g = std::get<ApplyElem>(piece.action).g;
            SymbolicSet boundary = d.closure().diff(d);
            if (boundary.is_empty()) continue;
            // y on the boundary oscillates from this piece iff its own image
            // f(y) and the piece's value g(y) land in different atoms
            for (const auto& other : f.pieces()) {
                SymbolicSet c2 = boundary.intersect(other.region);
                if (c2.is_empty()) continue;
                if (auto* cc = std::get_if<Constant>(&other.action)) {
                    out = out.unite(c2.diff(g.preimage(p.atom_of(cc->value))));
                } else {
                    const GroupElement& h = std::get<ApplyElem>(other.action).g;
                    out = out.unite(c2.diff(equal_atom_locus(h, g, p)));
                }
            }
        }
    }
    return out;
}

SymbolicSet derivative_pairwise(const SymbolicSet& y, const PiecewiseMap& f, const Partition& p) {
    check_derivative_args(y, f, p);
    if (f.has_dense_codense())
        throw std::invalid_argument("derivative_pairwise: dense/codense maps need the engine rule");
    std::vector<SymbolicSet> parts;
    for (const auto& a : p.classes()) {
        SymbolicSet s = preimage_in(f, a, y);
        if (!s.is_empty()) parts.push_back(s.closure());
    }
    SymbolicSet out = SymbolicSet::empty(y.space());
    for (size_t i = 0; i < parts.size(); ++i)
        for (size_t j = i + 1; j < parts.size(); ++j)
            out = out.unite(parts[i].intersect(parts[j]));
    return out;
}

DerivativeChain iterate_derivative(const SymbolicSet& y, const PiecewiseMap& f, const Partition& p,
                                   long long cap) {
    if (cap < 1) throw std::invalid_argument("iterate_derivative: cap must be >= 1");
    DerivativeChain chain;
    chain.stages.push_back(y);
    if (y.is_empty()) {
        chain.termination = Termination::Empty;
        return chain;
    }
    for (long long step = 0; step < cap; ++step) {
        SymbolicSet d = derivative(chain.stages.back(), f, p);
        if (d == chain.stages.back()) {
            chain.termination = Termination::FixedPoint;
            return chain;
        }
        if (!d.subset_of(chain.stages.back()))
            throw std::logic_error("derivative failed to decrease");
        bool empty = d.is_empty();
        chain.stages.push_back(std::move(d));
        if (empty) {
            chain.termination = Termination::Empty;
            return chain;
        }
    }
    chain.termination = Termination::CapReached;
    return chain;
}

RankValue beta_of_pair(const PiecewiseMap& f, const Partition& p,
                       const std::optional<SymbolicSet>& y, long long cap) {
    SymbolicSet start = y ? *y : SymbolicSet::whole(f.space());
    return iterate_derivative(start, f, p, cap).rank(cap);
}

BetaMapResult beta_of_map(const PiecewiseMap& f, int max_level, long long cap) {
    if (max_level < 1) throw std::invalid_argument("beta_of_map: max_level must be >= 1");
    BetaMapResult res;
    for (int l = 1; l <= max_level; ++l) {
        RankValue r = beta_of_pair(f, canonical_partition(f.space(), l), std::nullopt, cap);
        if (!res.per_level.empty()) {
            auto ok = RankValue::le(res.per_level.back(), r);
            if (ok && !*ok)
                throw std::logic_error("refinement monotonicity violated at level " +
                                       std::to_string(l));
        }
        res.per_level.push_back(r);
    }
    res.rank = RankValue::sup(res.per_level);
    size_t n = res.per_level.size();
    if (n >= 3)
        res.stabilized = res.per_level[n - 1] == res.per_level[n - 2] &&
                         res.per_level[n - 2] == res.per_level[n - 3];
    else
        res.stabilized = std::all_of(res.per_level.begin(), res.per_level.end(),
                                     [&](const RankValue& r) { return r == res.per_level[0]; });
    return res;
}

RankValue beta_of_system(const std::vector<PiecewiseMap>& maps, int max_level, long long cap) {
    if (maps.empty()) throw std::invalid_argument("beta_of_system: empty map list");
    bool has_id = false;
    for (const auto& f : maps) {
        if (f.pieces().size() == 1)
            if (auto* a = std::get_if<ApplyElem>(&f.pieces().front().action))
                if (a->g.is_identity()) has_id = true;
    }
    if (!has_id) throw std::invalid_argument("beta_of_system: the identity must be in the list");
    std::vector<RankValue> rs;
    for (const auto& f : maps) rs.push_back(beta_of_map(f, max_level, cap).rank);
    return RankValue::sup(rs);
}

RankValue point_rank_in_chain(const DerivativeChain& chain, const NamedPoint& x, long long cap) {
    long long last = -1;
    for (size_t i = 0; i < chain.stages.size(); ++i)
        if (chain.stages[i].member(x)) last = static_cast<long long>(i);
    if (last < 0) throw std::invalid_argument("point_rank: point outside the starting set");
    bool in_final = last == static_cast<long long>(chain.stages.size()) - 1;
    if (in_final && chain.termination == Termination::FixedPoint) return RankValue::infinite();
    if (in_final && chain.termination == Termination::CapReached) return RankValue::capped(cap);
    return RankValue::finite(last);
}

RankValue point_rank(const PiecewiseMap& f, const Partition& p, const NamedPoint& x,
                     long long cap) {
    DerivativeChain chain = iterate_derivative(SymbolicSet::whole(f.space()), f, p, cap);
    return point_rank_in_chain(chain, x, cap);
}

RankValue cb_point_rank(const SpacePtr& sp, const NamedPoint& x) {
    if (!same_space(sp, x.space)) throw std::invalid_argument("cb_point_rank: space mismatch");
    switch (sp->kind) {
        case SpaceKind::CutLine:
            return x.cut().isolated() ? RankValue::finite(0) : RankValue::infinite();
        case SpaceKind::Product: {
            for (const auto& c : x.coords())
                if (!c.isolated()) return RankValue::infinite();
            return RankValue::finite(0);
        }
        case SpaceKind::Compact:
            return x.compact().is_limit ? RankValue::finite(1) : RankValue::finite(0);
        case SpaceKind::Cyclic:
            return x.cyclic().isolated() ? RankValue::finite(0) : RankValue::infinite();
        case SpaceKind::Cylinder: return RankValue::infinite();
        case SpaceKind::Finite: return RankValue::finite(0);
    }
    throw std::invalid_argument("cb_point_rank: unsupported space");
}

bool is_continuous(const PiecewiseMap& f, int level_bound) {
    if (!f.all_pieces_open()) return false;
    for (int l = 1; l <= level_bound; ++l)
        if (!derivative(SymbolicSet::whole(f.space()), f, canonical_partition(f.space(), l))
                 .is_empty())
            return false;
    return true;
}

FragmentedReport is_fragmented_report(const PiecewiseMap& f, long long cap, int level_bound) {
    FragmentedReport rep;
    bool saw_cap = false;
    for (int l = 1; l <= level_bound; ++l) {
        Partition p = canonical_partition(f.space(), l);
        DerivativeChain chain = iterate_derivative(SymbolicSet::whole(f.space()), f, p, cap);
        if (chain.termination == Termination::FixedPoint) {
            rep.verdict = FragVerdict::NotFragmented;
            rep.beta = RankValue::infinite();
            rep.fixed = chain.stages.back();
            rep.partition = std::move(p);
            rep.iterations = static_cast<long long>(chain.stages.size());
            return rep;
        }
        if (chain.termination == Termination::CapReached) saw_cap = true;
    }
    if (saw_cap) {
        rep.verdict = FragVerdict::Indeterminate;
        rep.beta = RankValue::capped(cap);
        return rep;
    }
    BetaMapResult bm = beta_of_map(f, level_bound, cap);
    rep.verdict = FragVerdict::Fragmented;
    rep.beta = bm.rank;
    rep.stabilized = bm.stabilized;
    return rep;
}

Directions oscillation_directions(const PiecewiseMap& f, const Partition& p, const NamedPoint& x) {
    if (f.space()->kind != SpaceKind::CutLine)
        throw std::invalid_argument("oscillation_directions: not an ordered cut-line space");
    if (!std::holds_alternative<Partition::LineCuts>(p.impl))
        throw std::invalid_argument("oscillation_directions: partition atoms must be intervals");
    SpacePtr sp = f.space();
    NamedPoint fx = f.apply(x);
    SymbolicSet atom = p.atom_of(fx);
    const LineInterval& iv = atom.as_line().iv.front();
    SymbolicSet upto = SymbolicSet::line(sp, {LineInterval{{CutPoint::minus_inf(), -1}, iv.hi}});
    SymbolicSet from = SymbolicSet::line(sp, {LineInterval{iv.lo, {CutPoint::plus_inf(), +1}}});
    SymbolicSet above = SymbolicSet::whole(sp).diff(upto);
    SymbolicSet below = SymbolicSet::whole(sp).diff(from);
    Directions dir;
    if (!above.is_empty()) {
        SymbolicSet pre = preimage_clopen(f, above);
        dir.right = pre.remove_point(x).closure().member(x);
    }
    if (!below.is_empty()) {
        SymbolicSet pre = preimage_clopen(f, below);
        dir.left = pre.remove_point(x).closure().member(x);
    }
    return dir;
}

}  // namespace oscrank
