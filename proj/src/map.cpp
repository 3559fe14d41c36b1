#include "oscrank/map.hpp"

#include <algorithm>
#include <stdexcept>

#include "oscrank/samples.hpp"

namespace oscrank {

PiecewiseMap PiecewiseMap::make(SpacePtr sp, std::vector<Piece> pieces, std::string name,
                                bool claimed_in_ellis, std::string ellis_witness) {
    if (pieces.empty()) throw std::invalid_argument("piecewise map needs at least one piece");
    SymbolicSet acc = SymbolicSet::empty(sp);
    for (size_t i = 0; i < pieces.size(); ++i) {
        const auto& pc = pieces[i];
        if (!same_space(pc.region.space(), sp))
            throw std::invalid_argument("piece region lives in the wrong space");
        if (pc.region.is_empty()) throw std::invalid_argument("piece region is empty");
        for (size_t j = i + 1; j < pieces.size(); ++j)
            if (!pc.region.intersect(pieces[j].region).is_empty())
                throw std::invalid_argument("piece regions overlap");
        if (auto* c = std::get_if<Constant>(&pc.action)) {
            if (!same_space(c->value.space, sp))
                throw std::invalid_argument("constant value in the wrong space");
        } else if (auto* a = std::get_if<ApplyElem>(&pc.action)) {
            if (!same_space(a->g.space, sp))
                throw std::invalid_argument("group element acts on the wrong space");
        } else {
            if (sp->kind != SpaceKind::Cylinder || pieces.size() != 1)
                throw std::invalid_argument(
                    "dense/codense action must be the single piece of a cylinder-space map");
            const auto& d = std::get<DenseCodense>(pc.action);
            if (!same_space(d.c0.space, sp) || !same_space(d.c1.space, sp))
                throw std::invalid_argument("dense/codense values in the wrong space");
        }
        acc = acc.unite(pc.region);
    }
    if (acc != SymbolicSet::whole(sp))
        throw std::invalid_argument("piece regions do not cover the space");
    PiecewiseMap f;
    f.space_ = std::move(sp);
    f.pieces_ = std::move(pieces);
    f.name_ = std::move(name);
    f.claimed_ = claimed_in_ellis;
    f.ellis_witness_ = std::move(ellis_witness);
    return f;
}

NamedPoint PiecewiseMap::apply(const NamedPoint& x) const {
    if (!same_space(space_, x.space)) throw std::invalid_argument("apply_map: space mismatch");
    for (const auto& pc : pieces_) {
        if (!pc.region.member(x)) continue;
        return std::visit(
            [&](const auto& act) -> NamedPoint {
                using T = std::decay_t<decltype(act)>;
                if constexpr (std::is_same_v<T, Constant>) return act.value;
                else if constexpr (std::is_same_v<T, ApplyElem>) return act.g.apply(x);
                else return x.cylinder().tail_one ? act.c1 : act.c0;
            },
            pc.action);
    }
    throw std::logic_error("apply_map: no piece contains " + to_string(x));
}

bool PiecewiseMap::has_dense_codense() const {
    for (const auto& pc : pieces_)
        if (std::holds_alternative<DenseCodense>(pc.action)) return true;
    return false;
}

bool PiecewiseMap::all_pieces_open() const {
    if (has_dense_codense()) return false;
    for (const auto& pc : pieces_) {
        if (space_->kind == SpaceKind::Cylinder) {
            if (!pc.region.is_clopen()) return false;  // open = clopen there
        } else if (!pc.region.complement().is_closed()) {
            return false;
        }
    }
    return true;
}

PiecewiseMap identity_map(SpacePtr sp) {
    return map_from_element(identity_element(sp), "identity", true,
                            "the identity of the acting group");
}

PiecewiseMap map_from_element(GroupElement g, std::string name, bool claimed_in_ellis,
                              std::string ellis_witness) {
    SpacePtr sp = g.space;
    std::vector<Piece> pieces;
    pieces.push_back(Piece{SymbolicSet::whole(sp), ApplyElem{std::move(g)}});
    return PiecewiseMap::make(sp, std::move(pieces), std::move(name), claimed_in_ellis,
                              std::move(ellis_witness));
}

SymbolicSet preimage_clopen(const PiecewiseMap& f, const SymbolicSet& a) {
    if (!same_space(f.space(), a.space()))
        throw std::invalid_argument("preimage_clopen: space mismatch");
    if (!a.is_clopen()) throw std::invalid_argument("preimage_clopen: set is not clopen");
    SymbolicSet out = SymbolicSet::empty(f.space());
    for (const auto& pc : f.pieces()) {
        if (auto* c = std::get_if<Constant>(&pc.action)) {
            if (a.member(c->value)) out = out.unite(pc.region);
        } else if (auto* ap = std::get_if<ApplyElem>(&pc.action)) {
            out = out.unite(pc.region.intersect(ap->g.preimage(a)));
        } else {
            throw std::invalid_argument(
                "preimage of a dense/codense map leaves the symbolic class");
        }
    }
    return out;
}

namespace {
Action conj_action_right(const Action& act, const GroupElement& hinv) {
    // action of f o h^-1 on h[region]
    if (auto* c = std::get_if<Constant>(&act)) return *c;
    if (auto* a = std::get_if<ApplyElem>(&act)) return ApplyElem{compose(a->g, hinv)};
    if (!hinv.is_identity())
        throw std::invalid_argument("conjugating a dense/codense map by a non-identity element");
    return act;
}
Action conj_action_both(const Action& act, const GroupElement& h, const GroupElement& hinv) {
    if (auto* c = std::get_if<Constant>(&act)) return Constant{h.apply(c->value)};
    if (auto* a = std::get_if<ApplyElem>(&act))
        return ApplyElem{compose(h, compose(a->g, hinv))};
    if (!h.is_identity())
        throw std::invalid_argument("conjugating a dense/codense map by a non-identity element");
    return act;
}
}  // namespace

std::pair<PiecewiseMap, PiecewiseMap> conjugate(const GroupElement& h, const PiecewiseMap& f) {
    if (!same_space(h.space, f.space())) throw std::invalid_argument("conjugate: space mismatch");
    GroupElement hinv = h.inverse();
    std::vector<Piece> right, both;
    for (const auto& pc : f.pieces()) {
        SymbolicSet moved = h.image(pc.region);
        right.push_back(Piece{moved, conj_action_right(pc.action, hinv)});
        both.push_back(Piece{moved, conj_action_both(pc.action, h, hinv)});
    }
    auto f_hinv = PiecewiseMap::make(f.space(), std::move(right), f.name() + "∘" + h.str() + "⁻¹",
                                     false, "");
    auto hf_hinv = PiecewiseMap::make(f.space(), std::move(both),
                                      h.str() + "∘" + f.name() + "∘" + h.str() + "⁻¹", false, "");
    return {std::move(f_hinv), std::move(hf_hinv)};
}

bool is_monotone(const PiecewiseMap& f, int height) {
    if (f.space()->kind != SpaceKind::CutLine)
        throw std::invalid_argument("is_monotone: map is not on an ordered cut line");
    std::vector<CutPoint> pts = cut_samples(height);
    for (const auto& pc : f.pieces()) {   // endpoint analysis: include region endpoints
        for (const auto& iv : pc.region.as_line().iv) {
            pts.push_back(iv.lo.p);
            pts.push_back(iv.hi.p);
        }
    }
    std::sort(pts.begin(), pts.end(), [](const CutPoint& a, const CutPoint& b) {
        return compare(a, b) < 0;
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const CutPoint& a, const CutPoint& b) { return compare(a, b) == 0; }),
              pts.end());
    std::optional<NamedPoint> prev;
    for (const auto& p : pts) {
        NamedPoint img = f.apply(cut_point(f.space(), p));
        if (prev && compare(*prev, img) > 0) return false;
        prev = img;
    }
    return true;
}

bool cyclic_order(const CyclicPoint& a, const CyclicPoint& b, const CyclicPoint& c) {
    int ab = compare(a, b), bc = compare(b, c), ca = compare(c, a);
    return (ab < 0 && bc < 0) || (bc < 0 && ca < 0) || (ca < 0 && ab < 0);
}

bool preserves_cyclic(const PiecewiseMap& f, int height) {
    if (f.space()->kind != SpaceKind::Cyclic)
        throw std::invalid_argument("preserves_cyclic: map is not on the cyclic space");
    auto pts = cyclic_samples(height);
    auto img = [&](const CyclicPoint& p) { return f.apply(cyclic_point(f.space(), p)).cyclic(); };
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            for (size_t k = j + 1; k < pts.size(); ++k) {
                // representative order gives C*(pts[i], pts[j], pts[k])
                CyclicPoint a = img(pts[i]), b = img(pts[j]), c = img(pts[k]);
                if (compare(a, b) == 0 || compare(b, c) == 0 || compare(c, a) == 0) continue;
                if (!cyclic_order(a, b, c)) return false;
            }
    return true;
}

}  // namespace oscrank
