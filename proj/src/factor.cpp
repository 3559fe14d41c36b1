#include "oscrank/factor.hpp"

#include <algorithm>

#include "oscrank/samples.hpp"

namespace oscrank {

namespace {
[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }
}  // namespace

NamedPoint FactorMap::map_point(const NamedPoint& x) const {
    if (!same_space(x.space, source)) fail("factor map_point: wrong source space");
    switch (kind) {
        case Kind::Projection: {
            if (proj_keep == 1) return cut_point(target, x.coords()[0]);
            std::vector<CutPoint> coords(x.coords().begin(), x.coords().begin() + proj_keep);
            return product_point(target, std::move(coords));
        }
        case Kind::Singleton: return finite_point(target, 0);
        case Kind::Glue: {
            const auto& p = x.compact();
            if (p.is_limit || p.k == 0) return compact_point(target, CompactPoint::limit());
            return compact_point(target, CompactPoint::iso(p.k - 1));
        }
    }
    fail("factor map_point: bad kind");
}

GroupElement FactorMap::map_group(const GroupElement& g) const {
    if (!same_space(g.space, source)) fail("factor map_group: wrong source space");
    switch (kind) {
        case Kind::Projection: {
            if (g.is_identity()) return identity_element(target);
            const auto& pa = std::get<ProductAuto>(g.impl);
            if (proj_keep == 1) return pl_element(target, pa.comps[0]);
            std::vector<PLAuto> comps(pa.comps.begin(), pa.comps.begin() + proj_keep);
            return product_element(target, std::move(comps));
        }
        case Kind::Singleton: return identity_element(target);
        case Kind::Glue:
            if (!g.is_identity()) fail("glue factor: the acting groups are trivial");
            return identity_element(target);
    }
    fail("factor map_group: bad kind");
}

SymbolicSet FactorMap::image(const SymbolicSet& s) const {
    if (!same_space(s.space(), source)) fail("factor image: wrong source space");
    switch (kind) {
        case Kind::Projection: {
            if (proj_keep == 1) {
                std::vector<LineInterval> iv;
                for (const auto& b : s.as_product().boxes) iv.push_back(b[0]);
                return SymbolicSet::line(target, std::move(iv));
            }
            std::vector<Box> boxes;
            for (const auto& b : s.as_product().boxes)
                boxes.emplace_back(b.begin(), b.begin() + proj_keep);
            return SymbolicSet::product(target, std::move(boxes));
        }
        case Kind::Singleton:
            return s.is_empty() ? SymbolicSet::empty(target) : SymbolicSet::whole(target);
        case Kind::Glue: {
            CompactSet c = s.as_compact();
            CompactSet out;
            if (!c.cofinite) {
                for (long long k : c.isos) {
                    if (k == 0) out.has_limit = true;
                    else out.isos.push_back(k - 1);
                }
                out.has_limit = out.has_limit || c.has_limit;
            } else {
                out.cofinite = true;
                bool zero_excluded = std::binary_search(c.isos.begin(), c.isos.end(), 0LL);
                for (long long k : c.isos)
                    if (k >= 1) out.isos.push_back(k - 1);
                out.has_limit = c.has_limit || !zero_excluded;
            }
            return SymbolicSet::compact(target, std::move(out));
        }
    }
    fail("factor image: bad kind");
}

SymbolicSet FactorMap::preimage(const SymbolicSet& s) const {
    if (!same_space(s.space(), target)) fail("factor preimage: wrong target space");
    switch (kind) {
        case Kind::Projection: {
            LineInterval full{{CutPoint::minus_inf(), -1}, {CutPoint::plus_inf(), +1}};
            std::vector<Box> boxes;
            if (proj_keep == 1) {
                for (const auto& iv : s.as_line().iv) {
                    Box b{iv};
                    b.resize(source->arity, full);
                    boxes.push_back(std::move(b));
                }
            } else {
                for (const auto& bx : s.as_product().boxes) {
                    Box b = bx;
                    b.resize(source->arity, full);
                    boxes.push_back(std::move(b));
                }
            }
            return SymbolicSet::product(source, std::move(boxes));
        }
        case Kind::Singleton:
            return s.is_empty() ? SymbolicSet::empty(source) : SymbolicSet::whole(source);
        case Kind::Glue: {
            CompactSet c = s.as_compact();
            CompactSet out;
            if (!c.cofinite) {
                for (long long k : c.isos) out.isos.push_back(k + 1);
                if (c.has_limit) {
                    out.isos.push_back(0);
                    out.has_limit = true;
                }
            } else {
                out.cofinite = true;
                for (long long k : c.isos) out.isos.push_back(k + 1);
                if (!c.has_limit) out.isos.push_back(0);
                out.has_limit = c.has_limit;
            }
            return SymbolicSet::compact(source, std::move(out));
        }
    }
    fail("factor preimage: bad kind");
}

Partition FactorMap::pullback(const Partition& p) const {
    if (!same_space(p.space, target)) fail("factor pullback: wrong target space");
    if (kind == Kind::Projection &&
        (std::holds_alternative<Partition::LineCuts>(p.impl) ||
         std::holds_alternative<Partition::ProductCuts>(p.impl))) {
        Partition out;
        out.space = source;
        Partition::ProductCuts pc;
        if (proj_keep == 1) {
            pc.factors.push_back(std::get<Partition::LineCuts>(p.impl));
        } else {
            pc = std::get<Partition::ProductCuts>(p.impl);
        }
        pc.factors.resize(source->arity);  // trailing coordinates get the trivial factor
        out.impl = std::move(pc);
        return out;
    }
    std::vector<SymbolicSet> classes;
    for (const auto& c : p.classes()) {
        SymbolicSet pre = preimage(c);
        if (!pre.is_empty()) classes.push_back(pre);
    }
    return flat_partition(source, std::move(classes));
}

FactorMap projection_factor(int n, int k) {
    if (k < 1 || k >= n) fail("projection_factor: need 1 <= k < n");
    FactorMap f;
    f.kind = FactorMap::Kind::Projection;
    f.source = parse_space("multiorder:" + std::to_string(n));
    f.target = parse_space("multiorder:" + std::to_string(k));
    f.is_open = true;
    f.proj_keep = k;
    return f;
}

FactorMap singleton_factor(SpacePtr source) {
    FactorMap f;
    f.kind = FactorMap::Kind::Singleton;
    f.source = std::move(source);
    f.target = point_space();
    f.is_open = true;
    return f;
}

FactorMap glue_factor() {
    FactorMap f;
    f.kind = FactorMap::Kind::Glue;
    f.source = parse_space("compactification");
    f.target = parse_space("compactification");
    f.is_open = false;
    return f;
}

PiecewiseMap glue_split_map() {
    SpacePtr sp = parse_space("compactification");
    // {Iso0, Limit} -> Iso(2); all other isos -> Iso(1). Oscillates exactly at
    // the limit point; pi-coherent because the glued fiber maps to one point.
    SymbolicSet fiber = SymbolicSet::compact(sp, CompactSet{false, {0}, true});
    SymbolicSet rest = SymbolicSet::compact(sp, CompactSet{true, {0}, false});
    std::vector<Piece> pieces;
    pieces.push_back(Piece{fiber, Constant{compact_point(sp, CompactPoint::iso(2))}});
    pieces.push_back(Piece{rest, Constant{compact_point(sp, CompactPoint::iso(1))}});
    return PiecewiseMap::make(sp, std::move(pieces), "glue-split", false,
                              "synthetic: not presented as an Ellis element");
}

namespace {

Action transfer_action(const FactorMap& fac, const Action& act) {
    if (auto* c = std::get_if<Constant>(&act)) return Constant{fac.map_point(c->value)};
    if (auto* a = std::get_if<ApplyElem>(&act)) return ApplyElem{fac.map_group(a->g)};
    fail("transfer: dense/codense maps have no factor transfer here");
}

bool actions_agree_on(const Action& a, const Action& b, const SymbolicSet& overlap) {
    if (a.index() == b.index()) {
        if (auto* ca = std::get_if<Constant>(&a))
            if (compare(ca->value, std::get<Constant>(b).value) == 0) return true;
        if (auto* ga = std::get_if<ApplyElem>(&a))
            if (ga->g == std::get<ApplyElem>(b).g) return true;
    }
    if (!overlap.is_finite_points()) return false;
    auto val = [&](const Action& act, const NamedPoint& x) {
        if (auto* c = std::get_if<Constant>(&act)) return c->value;
        return std::get<ApplyElem>(act).g.apply(x);
    };
    for (const auto& pt : overlap.points())
        if (compare(val(a, pt), val(b, pt)) != 0) return false;
    return true;
}

}  // namespace

PiecewiseMap transfer_map(const FactorMap& fac, const PiecewiseMap& f) {
    if (!same_space(f.space(), fac.source)) fail("transfer_map: map not on the source space");
    struct Cand {
        SymbolicSet region;
        Action action;
        std::string origin;
    };
    std::vector<Cand> cands;
    for (const auto& pc : f.pieces()) {
        SymbolicSet img = fac.image(pc.region);
        if (img.is_empty()) continue;
        cands.push_back(Cand{std::move(img), transfer_action(fac, pc.action), pc.region.str()});
    }
    for (size_t i = 0; i < cands.size(); ++i)
        for (size_t j = i + 1; j < cands.size(); ++j) {
            SymbolicSet ov = cands[i].region.intersect(cands[j].region);
            if (ov.is_empty()) continue;
            if (!actions_agree_on(cands[i].action, cands[j].action, ov))
                fail("transfer_map: incoherent pieces over " + ov.str() + " (from regions " +
                     cands[i].origin + " and " + cands[j].origin + ")");
        }
    // disjointify in order; actions on overlaps agree, so dropping them is exact
    std::vector<Piece> pieces;
    SymbolicSet used = SymbolicSet::empty(fac.target);
    for (auto& c : cands) {
        SymbolicSet region = c.region.diff(used);
        if (region.is_empty()) continue;
        used = used.unite(c.region);
        pieces.push_back(Piece{std::move(region), std::move(c.action)});
    }
    PiecewiseMap theta = PiecewiseMap::make(fac.target, std::move(pieces),
                                            "transfer(" + f.name() + ")", false, "");
    // pointwise verification of the defining identity on named samples
    for (const auto& x : named_samples(fac.source, 3)) {
        NamedPoint lhs = theta.apply(fac.map_point(x));
        NamedPoint rhs = fac.map_point(f.apply(x));
        if (compare(lhs, rhs) != 0)
            fail("transfer_map: identity fails at " + to_string(x) + ": " + to_string(lhs) +
                 " vs " + to_string(rhs));
    }
    return theta;
}

namespace {
SymbolicSet stage_at(const DerivativeChain& chain, int alpha, const SpacePtr& sp) {
    if (alpha < static_cast<int>(chain.stages.size())) return chain.stages[alpha];
    if (chain.termination == Termination::FixedPoint) return chain.stages.back();
    return SymbolicSet::empty(sp);
}
}  // namespace

FactorLemmaReport check_factor_lemmas(const FactorMap& fac, const PiecewiseMap& f,
                                      const SymbolicSet& d, const Partition& p, int alpha_max,
                                      long long cap) {
    if (!same_space(d.space(), fac.target) || !same_space(p.space, fac.target))
        fail("check_factor_lemmas: D and P live on the target");
    if (!d.is_closed()) fail("check_factor_lemmas: D must be closed");
    PiecewiseMap theta = transfer_map(fac, f);
    SymbolicSet up_set = fac.preimage(d);
    Partition up_p = fac.pullback(p);
    DerivativeChain up = iterate_derivative(up_set, f, up_p, cap);
    DerivativeChain down = iterate_derivative(d, theta, p, cap);

    FactorLemmaReport rep;
    for (int a = 0; a <= alpha_max; ++a) {
        SymbolicSet su = stage_at(up, a, fac.source);
        SymbolicSet sd = fac.preimage(stage_at(down, a, fac.target));
        FactorLemmaReport::AlphaRow row;
        row.alpha = a;
        row.inclusion = su.subset_of(sd);
        row.equality = row.inclusion && su == sd;
        rep.inclusion_all = rep.inclusion_all && row.inclusion;
        rep.equality_all = rep.equality_all && row.equality;
        rep.rows.push_back(row);
    }
    rep.rank_source = up.rank(cap);
    rep.rank_target = down.rank(cap);
    rep.rank_le = RankValue::le(rep.rank_source, rep.rank_target);
    rep.rank_eq = rep.rank_source == rep.rank_target;
    return rep;
}

}  // namespace oscrank
