#include "oscrank/group.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace oscrank {

// ---------------------------------------------------------------------------
// PLAuto
// ---------------------------------------------------------------------------

PLAuto::PLAuto(std::vector<std::pair<Rat, Rat>> breaks) : breaks_(std::move(breaks)) {
    for (size_t i = 1; i < breaks_.size(); ++i) {
        if (!(breaks_[i - 1].first < breaks_[i].first) ||
            !(breaks_[i - 1].second < breaks_[i].second))
            throw std::invalid_argument("PLAuto: breakpoints must increase strictly in x and y");
    }
    if (breaks_.size() == 1 && breaks_[0].first == breaks_[0].second) breaks_.clear();
}

Rat PLAuto::eval(const Rat& x) const {
    if (breaks_.empty()) return x;
    if (x <= breaks_.front().first) return x + (breaks_.front().second - breaks_.front().first);
    if (x >= breaks_.back().first) return x + (breaks_.back().second - breaks_.back().first);
    auto it = std::partition_point(breaks_.begin(), breaks_.end(),
                                   [&](const auto& b) { return b.first <= x; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    Rat slope = (hi.second - lo.second) / (hi.first - lo.first);
    return lo.second + (x - lo.first) * slope;
}

CutPoint PLAuto::apply(const CutPoint& p) const {
    switch (p.tag) {
        case CutPoint::Tag::MinusInf:
        case CutPoint::Tag::PlusInf: return p;
        default: return CutPoint{p.tag, eval(p.q)};
    }
}

PLAuto PLAuto::inverse() const {
    std::vector<std::pair<Rat, Rat>> inv;
    inv.reserve(breaks_.size());
    for (const auto& b : breaks_) inv.emplace_back(b.second, b.first);
    return PLAuto(std::move(inv));
}

PLAuto PLAuto::compose(const PLAuto& g, const PLAuto& h) {
    // breakpoints of g∘h: h's own, plus h-preimages of g's
    std::vector<Rat> xs;
    for (const auto& b : h.breaks_) xs.push_back(b.first);
    PLAuto hinv = h.inverse();
    for (const auto& b : g.breaks_) xs.push_back(hinv.eval(b.first));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<std::pair<Rat, Rat>> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.emplace_back(x, g.eval(h.eval(x)));
    return PLAuto(std::move(out));
}

LineInterval PLAuto::image(const LineInterval& i) const {
    LineInterval out = i;
    out.lo.p = apply(i.lo.p);
    out.hi.p = apply(i.hi.p);
    return out;
}

bool PLAuto::is_identity() const {
    for (const auto& b : breaks_)
        if (b.first != b.second) return false;
    return true;
}

// ---------------------------------------------------------------------------
// CyclicPLAuto
// ---------------------------------------------------------------------------

CyclicPLAuto::CyclicPLAuto(std::vector<std::pair<Rat, Rat>> breaks) : breaks_(std::move(breaks)) {
    if (breaks_.empty()) breaks_ = {{Rat(0), Rat(0)}};
    for (const auto& b : breaks_)
        if (b.first < Rat(0) || b.first >= Rat(1))
            throw std::invalid_argument("CyclicPLAuto: breakpoint x must lie in [0,1)");
    for (size_t i = 1; i < breaks_.size(); ++i)
        if (!(breaks_[i - 1].first < breaks_[i].first) ||
            !(breaks_[i - 1].second < breaks_[i].second))
            throw std::invalid_argument("CyclicPLAuto: breakpoints must increase strictly");
    if (!(breaks_.back().second < breaks_.front().second + Rat(1)))
        throw std::invalid_argument("CyclicPLAuto: lift must wind exactly once");
}

CyclicPLAuto CyclicPLAuto::rotation(const Rat& by) {
    Rat r = by - Rat(by.floor());
    return CyclicPLAuto({{Rat(0), r}});
}

Rat CyclicPLAuto::lift(const Rat& x) const {
    BigInt n = x.floor();
    Rat r = x - Rat(n);  // r in [0,1)
    Rat y;
    if (r < breaks_.front().first) {
        // segment arriving from (x_last - 1, y_last - 1)
        Rat x0 = breaks_.back().first - Rat(1);
        Rat y0 = breaks_.back().second - Rat(1);
        Rat slope = (breaks_.front().second - y0) / (breaks_.front().first - x0);
        y = y0 + (r - x0) * slope;
    } else if (r >= breaks_.back().first) {
        // segment heading to (x_first + 1, y_first + 1)
        Rat x1 = breaks_.front().first + Rat(1);
        Rat y1 = breaks_.front().second + Rat(1);
        Rat slope = (y1 - breaks_.back().second) / (x1 - breaks_.back().first);
        y = breaks_.back().second + (r - breaks_.back().first) * slope;
    } else {
        auto it = std::partition_point(breaks_.begin(), breaks_.end(),
                                       [&](const auto& b) { return b.first <= r; });
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        Rat slope = (hi.second - lo.second) / (hi.first - lo.first);
        y = lo.second + (r - lo.first) * slope;
    }
    return y + Rat(n);
}

Rat CyclicPLAuto::eval(const Rat& x) const {
    Rat y = lift(x);
    return y - Rat(y.floor());
}

CyclicPoint CyclicPLAuto::apply(const CyclicPoint& p) const {
    if (p.tag == CyclicPoint::Tag::Minus) {
        // cut below q; the wrap cut is the cut below value 1
        Rat v = p.q == Rat(0) ? Rat(1) : p.q;
        Rat y = lift(v);
        Rat rep = y - Rat(y.floor());
        return CyclicPoint{CyclicPoint::Tag::Minus, rep};
    }
    return CyclicPoint{p.tag, eval(p.q)};
}

CyclicPLAuto CyclicPLAuto::inverse() const {
    std::vector<std::pair<Rat, Rat>> inv;
    for (const auto& b : breaks_) {
        Rat y = b.second - Rat(b.second.floor());  // reduce into [0,1)
        Rat x = b.first - (b.second - y);
        inv.emplace_back(y, x);
    }
    std::sort(inv.begin(), inv.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return CyclicPLAuto(std::move(inv));
}

CyclicPLAuto CyclicPLAuto::compose(const CyclicPLAuto& g, const CyclicPLAuto& h) {
    std::vector<Rat> xs;
    for (const auto& b : h.breaks_) xs.push_back(b.first);
    CyclicPLAuto hinv = h.inverse();
    for (const auto& b : g.breaks_) xs.push_back(hinv.eval(b.first));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<std::pair<Rat, Rat>> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.emplace_back(x, g.lift(h.lift(x)));
    // composed lifts of increasing candidates in [0,1) are increasing already;
    // normalize the window so equal maps compare equal
    if (!out.empty()) {
        Rat shift = Rat(out.front().second.floor());
        for (auto& b : out) b.second -= shift;
    }
    return CyclicPLAuto(std::move(out));
}

std::vector<CycInterval> CyclicPLAuto::image(const CycInterval& i) const {
    CyclicPoint a = apply(i.lo.p);
    CyclicPoint b = apply(i.hi.p);
    int c = compare(a, b);
    if (c < 0 || (c == 0 && i.lo.side <= i.hi.side)) {
        auto iv = make_cyc_interval(a, i.lo.side == -1, b, i.hi.side == +1);
        if (iv) return {*iv};
        return {};
    }
    // image crosses the wrap: split at the top of the representative axis
    std::vector<CycInterval> out;
    CyclicPoint top{CyclicPoint::Tag::Minus, Rat(0)};
    CyclicPoint bot{CyclicPoint::Tag::Rat, Rat(0)};
    if (auto iv = make_cyc_interval(a, i.lo.side == -1, top, true)) out.push_back(*iv);
    if (auto iv = make_cyc_interval(bot, true, b, i.hi.side == +1)) out.push_back(*iv);
    return out;
}

bool CyclicPLAuto::is_identity() const {
    for (const auto& b : breaks_)
        if (b.first != b.second) return false;
    return true;
}

// ---------------------------------------------------------------------------
// FinSuppPerm / FinitePermutation
// ---------------------------------------------------------------------------

FinSuppPerm::FinSuppPerm(const std::vector<std::vector<long long>>& cycles) {
    std::set<long long> seen;
    for (const auto& cyc : cycles) {
        for (long long k : cyc) {
            if (k < 0) throw std::invalid_argument("perm: negative iso index");
            if (!seen.insert(k).second) throw std::invalid_argument("perm: cycles not disjoint");
        }
        if (cyc.size() < 2) continue;
        for (size_t i = 0; i < cyc.size(); ++i) fwd_[cyc[i]] = cyc[(i + 1) % cyc.size()];
    }
}

long long FinSuppPerm::apply(long long k) const {
    auto it = fwd_.find(k);
    return it == fwd_.end() ? k : it->second;
}

CompactPoint FinSuppPerm::apply(const CompactPoint& p) const {
    if (p.is_limit) return p;
    return CompactPoint::iso(apply(p.k));
}

FinSuppPerm FinSuppPerm::inverse() const {
    FinSuppPerm r;
    for (const auto& [k, v] : fwd_) r.fwd_[v] = k;
    return r;
}

FinSuppPerm FinSuppPerm::compose(const FinSuppPerm& g, const FinSuppPerm& h) {
    FinSuppPerm r;
    std::set<long long> support;
    for (const auto& [k, v] : g.fwd_) support.insert(k);
    for (const auto& [k, v] : h.fwd_) support.insert(k);
    for (long long k : support) {
        long long v = g.apply(h.apply(k));
        if (v != k) r.fwd_[k] = v;
    }
    return r;
}

FinitePermutation::FinitePermutation(std::vector<int> table) : table_(std::move(table)) {
    std::vector<bool> seen(table_.size(), false);
    for (int v : table_) {
        if (v < 0 || v >= static_cast<int>(table_.size()) || seen[v])
            throw std::invalid_argument("finite permutation table is not a bijection");
        seen[v] = true;
    }
    if (is_identity()) table_.clear();
}

FinitePermutation FinitePermutation::inverse() const {
    if (table_.empty()) return {};
    std::vector<int> inv(table_.size());
    for (size_t i = 0; i < table_.size(); ++i) inv[table_[i]] = static_cast<int>(i);
    return FinitePermutation(std::move(inv));
}

FinitePermutation FinitePermutation::compose(const FinitePermutation& g,
                                             const FinitePermutation& h) {
    if (g.table_.empty()) return h;
    if (h.table_.empty()) return g;
    std::vector<int> out(h.table_.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = g.apply(h.apply(static_cast<int>(i)));
    return FinitePermutation(std::move(out));
}

bool FinitePermutation::is_identity() const {
    for (size_t i = 0; i < table_.size(); ++i)
        if (table_[i] != static_cast<int>(i)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// GroupElement
// ---------------------------------------------------------------------------

namespace {
[[noreturn]] void bad_elem(const char* what) {
    throw std::invalid_argument(std::string("group element / space mismatch: ") + what);
}
}  // namespace

NamedPoint GroupElement::apply(const NamedPoint& x) const {
    if (!same_space(space, x.space)) bad_elem("apply");
    return std::visit(
        [&](const auto& g) -> NamedPoint {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, IdentityElem>) {
                return x;
            } else if constexpr (std::is_same_v<T, PLAuto>) {
                return cut_point(space, g.apply(x.cut()));
            } else if constexpr (std::is_same_v<T, ProductAuto>) {
                std::vector<CutPoint> coords = x.coords();
                for (size_t i = 0; i < coords.size(); ++i) coords[i] = g.comps[i].apply(coords[i]);
                return product_point(space, std::move(coords));
            } else if constexpr (std::is_same_v<T, FinSuppPerm>) {
                return compact_point(space, g.apply(x.compact()));
            } else if constexpr (std::is_same_v<T, CyclicPLAuto>) {
                return cyclic_point(space, g.apply(x.cyclic()));
            } else {
                return finite_point(space, g.apply(x.finite().idx));
            }
        },
        impl);
}

GroupElement GroupElement::inverse() const {
    GroupElement r;
    r.space = space;
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, IdentityElem>) r.impl = g;
            else if constexpr (std::is_same_v<T, ProductAuto>) {
                ProductAuto p;
                for (const auto& c : g.comps) p.comps.push_back(c.inverse());
                r.impl = std::move(p);
            } else r.impl = g.inverse();
        },
        impl);
    return r;
}

SymbolicSet GroupElement::image(const SymbolicSet& s) const {
    if (!same_space(space, s.space())) bad_elem("image");
    return std::visit(
        [&](const auto& g) -> SymbolicSet {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, IdentityElem>) {
                return s;
            } else if constexpr (std::is_same_v<T, PLAuto>) {
                std::vector<LineInterval> iv;
                for (const auto& i : s.as_line().iv) iv.push_back(g.image(i));
                return SymbolicSet::line(space, std::move(iv));
            } else if constexpr (std::is_same_v<T, ProductAuto>) {
                std::vector<Box> boxes;
                for (const auto& b : s.as_product().boxes) {
                    Box z;
                    for (size_t i = 0; i < b.size(); ++i) z.push_back(g.comps[i].image(b[i]));
                    boxes.push_back(std::move(z));
                }
                return SymbolicSet::product(space, std::move(boxes));
            } else if constexpr (std::is_same_v<T, FinSuppPerm>) {
                CompactSet c = s.as_compact();
                for (auto& k : c.isos) k = g.apply(k);
                return SymbolicSet::compact(space, std::move(c));
            } else if constexpr (std::is_same_v<T, CyclicPLAuto>) {
                std::vector<CycInterval> iv;
                for (const auto& i : s.as_cyclic().iv) {
                    auto cells = g.image(i);
                    iv.insert(iv.end(), cells.begin(), cells.end());
                }
                return SymbolicSet::cyclic(space, std::move(iv));
            } else {
                FiniteSet f = s.as_finite();
                for (auto& m : f.members) m = g.apply(m);
                return SymbolicSet::finite(space, std::move(f.members));
            }
        },
        impl);
}

Partition GroupElement::push_partition(const Partition& p) const {
    if (!same_space(space, p.space)) bad_elem("push_partition");
    if (is_identity()) return p;
    Partition out;
    out.space = p.space;
    if (auto* lc = std::get_if<Partition::LineCuts>(&p.impl)) {
        const auto& g = std::get<PLAuto>(impl);
        Partition::LineCuts r;
        for (const auto& c : lc->cuts) r.cuts.push_back(g.eval(c));
        std::sort(r.cuts.begin(), r.cuts.end());
        out.impl = std::move(r);
        return out;
    }
    if (auto* pc = std::get_if<Partition::ProductCuts>(&p.impl)) {
        const auto& g = std::get<ProductAuto>(impl);
        Partition::ProductCuts r;
        for (size_t i = 0; i < pc->factors.size(); ++i) {
            Partition::LineCuts f;
            for (const auto& c : pc->factors[i].cuts) f.cuts.push_back(g.comps[i].eval(c));
            std::sort(f.cuts.begin(), f.cuts.end());
            r.factors.push_back(std::move(f));
        }
        out.impl = std::move(r);
        return out;
    }
    if (auto* cl = std::get_if<Partition::CompactLevel>(&p.impl)) {
        const auto& g = std::get<FinSuppPerm>(impl);
        Partition::CompactLevel r;
        for (long long k : cl->singled) r.singled.push_back(g.apply(k));
        std::sort(r.singled.begin(), r.singled.end());
        out.impl = std::move(r);
        return out;
    }
    if (auto* cc = std::get_if<Partition::CyclicCutsP>(&p.impl)) {
        const auto& g = std::get<CyclicPLAuto>(impl);
        Partition::CyclicCutsP r;
        for (const auto& c : cc->cuts) r.cuts.push_back(g.eval(c));
        std::sort(r.cuts.begin(), r.cuts.end());
        out.impl = std::move(r);
        return out;
    }
    if (std::holds_alternative<Partition::Flat>(p.impl)) {
        Partition::Flat r;
        for (const auto& c : std::get<Partition::Flat>(p.impl).classes)
            r.classes.push_back(image(c));
        out.impl = std::move(r);
        return out;
    }
    throw std::invalid_argument("push_partition: unsupported partition kind for this element");
}

bool GroupElement::is_identity() const {
    return std::visit(
        [](const auto& g) -> bool {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, IdentityElem>) return true;
            else if constexpr (std::is_same_v<T, ProductAuto>) {
                for (const auto& c : g.comps)
                    if (!c.is_identity()) return false;
                return true;
            } else return g.is_identity();
        },
        impl);
}

std::string GroupElement::str() const {
    return std::visit(
        [&](const auto& g) -> std::string {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, IdentityElem>) return "id";
            else if constexpr (std::is_same_v<T, PLAuto>) {
                if (g.is_identity()) return "id";
                std::string s = "pl";
                for (const auto& b : g.breaks())
                    s += "(" + b.first.str() + "->" + b.second.str() + ")";
                return s;
            } else if constexpr (std::is_same_v<T, ProductAuto>) {
                std::string s = "prod[";
                for (size_t i = 0; i < g.comps.size(); ++i) {
                    if (i) s += ",";
                    std::string t = "pl";
                    if (g.comps[i].is_identity()) t = "id";
                    else
                        for (const auto& b : g.comps[i].breaks())
                            t += "(" + b.first.str() + "->" + b.second.str() + ")";
                    s += t;
                }
                return s + "]";
            } else if constexpr (std::is_same_v<T, FinSuppPerm>) {
                if (g.is_identity()) return "id";
                std::string s = "perm";
                for (const auto& [k, v] : g.table())
                    s += "(" + std::to_string(k) + "->" + std::to_string(v) + ")";
                return s;
            } else if constexpr (std::is_same_v<T, CyclicPLAuto>) {
                if (g.is_identity()) return "id";
                std::string s = "cyc";
                for (const auto& b : g.breaks())
                    s += "(" + b.first.str() + "->" + b.second.str() + ")";
                return s;
            } else {
                if (g.is_identity()) return "id";
                std::string s = "fperm[";
                for (size_t i = 0; i < g.table().size(); ++i) {
                    if (i) s += ",";
                    s += std::to_string(g.table()[i]);
                }
                return s + "]";
            }
        },
        impl);
}

GroupElement identity_element(SpacePtr sp) { return {std::move(sp), IdentityElem{}}; }

GroupElement pl_element(SpacePtr sp, PLAuto g) {
    if (sp->kind != SpaceKind::CutLine) bad_elem("pl_element");
    return {std::move(sp), std::move(g)};
}

GroupElement product_element(SpacePtr sp, std::vector<PLAuto> comps) {
    if (sp->kind != SpaceKind::Product || static_cast<int>(comps.size()) != sp->arity)
        bad_elem("product_element");
    return {std::move(sp), ProductAuto{std::move(comps)}};
}

GroupElement perm_element(SpacePtr sp, FinSuppPerm g) {
    if (sp->kind != SpaceKind::Compact) bad_elem("perm_element");
    return {std::move(sp), std::move(g)};
}

GroupElement cyclic_element(SpacePtr sp, CyclicPLAuto g) {
    if (sp->kind != SpaceKind::Cyclic) bad_elem("cyclic_element");
    return {std::move(sp), std::move(g)};
}

GroupElement finite_perm_element(SpacePtr sp, FinitePermutation g) {
    if (sp->kind != SpaceKind::Finite) bad_elem("finite_perm_element");
    if (!g.table().empty() && g.table().size() != sp->point_names.size())
        bad_elem("finite_perm_element size");
    return {std::move(sp), std::move(g)};
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
    if (!same_space(g.space, h.space)) bad_elem("compose");
    if (g.is_identity()) return h;
    if (h.is_identity()) return g;
    GroupElement r;
    r.space = g.space;
    if (g.impl.index() != h.impl.index())
        throw std::invalid_argument("compose: mixed element kinds");
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            const auto& b = std::get<T>(h.impl);
            if constexpr (std::is_same_v<T, IdentityElem>) r.impl = a;
            else if constexpr (std::is_same_v<T, ProductAuto>) {
                ProductAuto p;
                for (size_t i = 0; i < a.comps.size(); ++i)
                    p.comps.push_back(PLAuto::compose(a.comps[i], b.comps[i]));
                r.impl = std::move(p);
            } else r.impl = T::compose(a, b);
        },
        g.impl);
    return r;
}

}  // namespace oscrank
