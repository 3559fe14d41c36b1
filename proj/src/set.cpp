#include "oscrank/set.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace oscrank {

namespace {

// ---------------------------------------------------------------------------
// Axis policies
// ---------------------------------------------------------------------------

struct LineAxis {
    using Point = CutPoint;
    static std::optional<Point> succ(const Point& p) {
        if (p.tag == CutPoint::Tag::Minus) return CutPoint::at(p.q);
        if (p.tag == CutPoint::Tag::Rat) return CutPoint::above(p.q);
        return std::nullopt;
    }
    // {x : x < p} has no maximum exactly when p lacks a named predecessor
    static bool upper_open_limit(const Point& p) {
        return p.tag == CutPoint::Tag::Minus || p.tag == CutPoint::Tag::PlusInf;
    }
    static Point axis_min() { return CutPoint::minus_inf(); }
    static Point axis_max() { return CutPoint::plus_inf(); }
    // Is there a point strictly between a and b?  (a < b assumed checked inside)
    static bool strictly_between(const Point& a, const Point& b) {
        if (!(compare(a, b) < 0)) return false;
        if (auto s = succ(a)) return compare(*s, b) < 0;
        // a is Plus(t) or -inf: need a rational r with a < Rat(r) < b-ish.
        if (b.tag == CutPoint::Tag::PlusInf) return true;
        if (a.tag == CutPoint::Tag::MinusInf) return true;
        return a.q < b.q;  // a = Plus(t), b carries value
    }
    // Value bounds of the open gap above a / below b, for simplest-rational picks.
    static std::optional<Rat> open_lo_value(const Point& a) {
        if (a.tag == CutPoint::Tag::MinusInf) return std::nullopt;
        return a.q;
    }
    static std::optional<Rat> open_hi_value(const Point& b) {
        if (b.tag == CutPoint::Tag::PlusInf) return std::nullopt;
        return b.q;
    }
    static Point rat(const Rat& r) { return CutPoint::at(r); }
};

struct CyclicAxis {
    using Point = CyclicPoint;
    static bool is_wrap_minus(const Point& p) {
        return p.tag == CyclicPoint::Tag::Minus && p.q == Rat(0);
    }
    static Rat val(const Point& p) { return is_wrap_minus(p) ? Rat(1) : p.q; }
    static std::optional<Point> succ(const Point& p) {
        if (is_wrap_minus(p)) return std::nullopt;  // top of the representative axis
        if (p.tag == CyclicPoint::Tag::Minus) return CyclicPoint{CyclicPoint::Tag::Rat, p.q};
        if (p.tag == CyclicPoint::Tag::Rat) return CyclicPoint{CyclicPoint::Tag::Plus, p.q};
        return std::nullopt;
    }
    static bool upper_open_limit(const Point& p) { return p.tag == CyclicPoint::Tag::Minus; }
    static Point axis_min() { return CyclicPoint{CyclicPoint::Tag::Rat, Rat(0)}; }
    static Point axis_max() { return CyclicPoint{CyclicPoint::Tag::Minus, Rat(0)}; }
    static bool strictly_between(const Point& a, const Point& b) {
        if (!(compare(a, b) < 0)) return false;
        if (auto s = succ(a)) return compare(*s, b) < 0;
        return val(a) < val(b);  // a = Plus(t)
    }
    static std::optional<Rat> open_lo_value(const Point& a) { return val(a); }
    static std::optional<Rat> open_hi_value(const Point& b) { return val(b); }
    static Point rat(const Rat& r) { return CyclicPoint{CyclicPoint::Tag::Rat, r}; }
};

// ---------------------------------------------------------------------------
// Interval algebra, shared between the line and the cyclic representative axis
// ---------------------------------------------------------------------------

template <typename Axis>
struct Alg {
    using Point = typename Axis::Point;
    using Pos = AxisPos<Point>;
    using Iv = AxisInterval<Point>;

    static int cmp_pos(const Pos& a, const Pos& b) {
        int c = compare(a.p, b.p);
        if (c != 0) return c;
        return a.side < b.side ? -1 : a.side > b.side ? 1 : 0;
    }
    static bool pos_le(const Pos& a, const Pos& b) { return cmp_pos(a, b) <= 0; }
    static bool pos_lt(const Pos& a, const Pos& b) { return cmp_pos(a, b) < 0; }

    // Canonical position form: "just above p" is rewritten to "just below the
    // successor of p" whenever that successor is named, so equivalent cut
    // positions compare equal. Canonical positions are (p,-1) for any p, and
    // (p,+1) only for successor-less p.
    static Pos canon_pos(Pos p) {
        if (p.side == +1) {
            if (auto s = Axis::succ(p.p)) return {*s, -1};
        }
        return p;
    }

    static bool nonempty(Pos lo, Pos hi) {
        lo = canon_pos(lo);
        hi = canon_pos(hi);
        if (lo.side == -1) return pos_le({lo.p, +1}, hi);
        if (hi.side == +1) return compare(lo.p, hi.p) < 0;
        return Axis::strictly_between(lo.p, hi.p);
    }

    static std::optional<Iv> make(const Point& lo, bool lo_inc, const Point& hi, bool hi_inc) {
        Pos l = canon_pos({lo, lo_inc ? -1 : +1});
        Pos h = canon_pos({hi, hi_inc ? +1 : -1});
        if (!nonempty(l, h)) return std::nullopt;
        return Iv{l, h};
    }

    // one named point exactly
    static bool is_point(const Iv& i) {
        if (i.lo.side != -1) return false;
        Pos top = canon_pos({i.lo.p, +1});
        return compare(i.hi.p, top.p) == 0 && i.hi.side == top.side;
    }

    static bool member(const Point& x, const Iv& i) {
        return pos_le(i.lo, {x, -1}) && pos_le({x, +1}, i.hi);
    }

    static std::optional<Iv> intersect(const Iv& a, const Iv& b) {
        Pos l = pos_lt(a.lo, b.lo) ? b.lo : a.lo;
        Pos h = pos_lt(a.hi, b.hi) ? a.hi : b.hi;
        if (!nonempty(l, h)) return std::nullopt;
        return Iv{l, h};
    }

    // No point lies strictly between hi and the following lo; with canonical
    // positions every named adjacency shows up as position equality.
    static bool gapless(const Pos& hi, const Pos& lo) { return pos_le(lo, hi); }

    static std::vector<Iv> canon(std::vector<Iv> iv) {
        std::sort(iv.begin(), iv.end(), [](const Iv& a, const Iv& b) {
            int c = cmp_pos(a.lo, b.lo);
            if (c != 0) return c < 0;
            return cmp_pos(a.hi, b.hi) < 0;
        });
        std::vector<Iv> out;
        for (const auto& i : iv) {
            if (!out.empty() && gapless(out.back().hi, i.lo)) {
                if (pos_lt(out.back().hi, i.hi)) out.back().hi = i.hi;
            } else {
                out.push_back(i);
            }
        }
        return out;
    }

    static std::vector<Iv> complement(const std::vector<Iv>& iv) {
        // a lower position reused as an upper bound (and vice versa) flips the
        // inequality exactly, so the gaps inherit canonical positions directly
        std::vector<Iv> out;
        Pos cursor{Axis::axis_min(), -1};
        for (const auto& i : iv) {
            if (nonempty(cursor, i.lo)) out.push_back(Iv{cursor, i.lo});
            cursor = i.hi;
        }
        Pos top{Axis::axis_max(), +1};
        if (nonempty(cursor, top)) out.push_back(Iv{cursor, top});
        return out;
    }

    static Iv closure(Iv i) {
        if (i.lo.side == +1) i.lo = {i.lo.p, -1};
        if (i.hi.side == -1 && Axis::upper_open_limit(i.hi.p)) i.hi = canon_pos({i.hi.p, +1});
        return i;
    }

    static Point least_point(const Iv& i) {
        if (i.lo.side == -1) return i.lo.p;
        // open left end: simplest rational strictly inside the value gap
        std::optional<Rat> a = Axis::open_lo_value(i.lo.p);
        std::optional<Rat> b;
        if (i.hi.side == -1) {
            b = Axis::open_hi_value(i.hi.p);
        } else {
            auto v = Axis::open_hi_value(i.hi.p);
            if (v) {
                // closed upper end at value v: any rational strictly below v works,
                // and the interval's nonemptiness guarantees the open gap is nonempty
                b = v;
                if (a && !(*a < *b)) b = std::nullopt;
            }
        }
        return Axis::rat(simplest_between(a, b));
    }
};

using LineAlg = Alg<LineAxis>;
using CycAlg = Alg<CyclicAxis>;

// Complement of an upper position used as a bound: the complement's left part
// ends exactly at the original lower position (see Alg::complement).

// ---------------------------------------------------------------------------
// Product boxes: canonical form by recursive essential-grid slicing
// ---------------------------------------------------------------------------

using LPos = AxisPos<CutPoint>;

bool box_nonempty(const Box& b) {
    for (const auto& i : b)
        if (!LineAlg::nonempty(i.lo, i.hi)) return false;
    return true;
}

int cmp_interval(const LineInterval& a, const LineInterval& b) {
    int c = LineAlg::cmp_pos(a.lo, b.lo);
    if (c != 0) return c;
    return LineAlg::cmp_pos(a.hi, b.hi);
}

int cmp_box(const Box& a, const Box& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        int c = cmp_interval(a[i], b[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::vector<Box> canon_boxes(std::vector<Box> boxes, int dim) {
    boxes.erase(std::remove_if(boxes.begin(), boxes.end(),
                               [](const Box& b) { return !box_nonempty(b); }),
                boxes.end());
    if (dim == 0) {
        return boxes.empty() ? std::vector<Box>{} : std::vector<Box>{Box{}};
    }
    if (boxes.empty()) return {};

    std::vector<LPos> positions;
    for (const auto& b : boxes) {
        positions.push_back(b[0].lo);
        positions.push_back(b[0].hi);
    }
    std::sort(positions.begin(), positions.end(),
              [](const LPos& a, const LPos& b) { return LineAlg::cmp_pos(a, b) < 0; });
    positions.erase(std::unique(positions.begin(), positions.end(),
                                [](const LPos& a, const LPos& b) {
                                    return LineAlg::cmp_pos(a, b) == 0;
                                }),
                    positions.end());

    struct Run {
        LineInterval span;
        std::vector<Box> section;
        bool open = false;
    };
    Run run;
    std::vector<Box> out;
    auto flush = [&]() {
        if (!run.open) return;
        for (const auto& tail : run.section) {
            Box b;
            b.reserve(dim);
            b.push_back(run.span);
            b.insert(b.end(), tail.begin(), tail.end());
            out.push_back(std::move(b));
        }
        run.open = false;
    };

    for (size_t j = 0; j + 1 < positions.size(); ++j) {
        LineInterval slot{positions[j], positions[j + 1]};
        if (!LineAlg::nonempty(slot.lo, slot.hi)) continue;
        std::vector<Box> tails;
        for (const auto& b : boxes) {
            if (LineAlg::pos_le(b[0].lo, slot.lo) && LineAlg::pos_le(slot.hi, b[0].hi))
                tails.emplace_back(b.begin() + 1, b.end());
        }
        std::vector<Box> section = canon_boxes(std::move(tails), dim - 1);
        if (section.empty()) {
            flush();
            continue;
        }
        if (run.open && run.section == section && LineAlg::gapless(run.span.hi, slot.lo)) {
            run.span.hi = slot.hi;
        } else {
            flush();
            run = Run{slot, std::move(section), true};
        }
    }
    flush();
    std::sort(out.begin(), out.end(), [](const Box& a, const Box& b) { return cmp_box(a, b) < 0; });
    return out;
}

bool box_member(const std::vector<CutPoint>& x, const Box& b) {
    for (size_t i = 0; i < b.size(); ++i)
        if (!LineAlg::member(x[i], b[i])) return false;
    return true;
}

std::vector<Box> box_complement_one(const Box& b, int dim) {
    // prefix-sharp decomposition keeps the pieces disjoint
    std::vector<Box> out;
    for (int i = 0; i < dim; ++i) {
        for (const auto& part : LineAlg::complement({b[i]})) {
            Box nb;
            nb.reserve(dim);
            for (int j = 0; j < i; ++j) nb.push_back(b[j]);
            nb.push_back(part);
            LineInterval full{{CutPoint::minus_inf(), -1}, {CutPoint::plus_inf(), +1}};
            for (int j = i + 1; j < dim; ++j) nb.push_back(full);
            out.push_back(std::move(nb));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cylinder trie helpers
// ---------------------------------------------------------------------------

bool word_prefix_of(const std::string& w, const std::string& v) {
    return v.size() >= w.size() && v.compare(0, w.size(), w) == 0;
}

std::vector<std::string> canon_words(std::vector<std::string> ws) {
    std::sort(ws.begin(), ws.end());
    // drop subsumed
    std::vector<std::string> kept;
    for (const auto& w : ws) {
        if (!kept.empty() && word_prefix_of(kept.back(), w)) continue;
        kept.push_back(w);
    }
    // merge sibling pairs until stable
    bool changed = true;
    while (changed) {
        changed = false;
        std::set<std::string> s(kept.begin(), kept.end());
        for (const auto& w : kept) {
            if (w.empty()) continue;
            std::string sib = w;
            sib.back() = sib.back() == '0' ? '1' : '0';
            if (s.count(sib)) {
                s.erase(w);
                s.erase(sib);
                s.insert(w.substr(0, w.size() - 1));
                changed = true;
                break;
            }
        }
        if (changed) kept.assign(s.begin(), s.end());
    }
    return kept;
}

bool point_in_words(const CylinderPoint& p, const std::vector<std::string>& ws) {
    CylinderPoint n = p.normalized();
    for (const auto& w : ws) {
        if (w.size() <= n.word.size()) {
            if (word_prefix_of(w, n.word)) return true;
        } else {
            // p extends its word by the constant tail
            if (!word_prefix_of(n.word, w)) continue;
            char t = n.tail_one ? '1' : '0';
            bool ok = true;
            for (size_t i = n.word.size(); i < w.size(); ++i)
                if (w[i] != t) { ok = false; break; }
            if (ok) return true;
        }
    }
    return false;
}

CylinderSet canon_cylinder(CylinderSet s) {
    s.cyls = canon_words(std::move(s.cyls));
    std::vector<CylinderPoint> pts;
    for (auto& p : s.pts) {
        CylinderPoint n = p.normalized();
        if (!point_in_words(n, s.cyls)) pts.push_back(n);
    }
    std::sort(pts.begin(), pts.end(),
              [](const CylinderPoint& a, const CylinderPoint& b) { return compare(a, b) < 0; });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    s.pts = std::move(pts);
    return s;
}

// [w] \ [v] for v extending w: siblings along the path from w to v.
std::vector<std::string> word_minus(const std::string& w, const std::string& v) {
    std::vector<std::string> out;
    std::string cur = w;
    for (size_t i = w.size(); i < v.size(); ++i) {
        std::string sib = cur + (v[i] == '0' ? '1' : '0');
        out.push_back(sib);
        cur += v[i];
    }
    return out;
}

}  // namespace

bool CylinderSet::operator==(const CylinderSet& o) const {
    if (cyls != o.cyls || pts.size() != o.pts.size()) return false;
    for (size_t i = 0; i < pts.size(); ++i)
        if (!(pts[i] == o.pts[i])) return false;
    return true;
}

std::optional<LineInterval> make_line_interval(const CutPoint& lo, bool lo_inc,
                                               const CutPoint& hi, bool hi_inc) {
    return LineAlg::make(lo, lo_inc, hi, hi_inc);
}

std::optional<CycInterval> make_cyc_interval(const CyclicPoint& lo, bool lo_inc,
                                             const CyclicPoint& hi, bool hi_inc) {
    return CycAlg::make(lo, lo_inc, hi, hi_inc);
}

std::vector<LineInterval> canon_line(std::vector<LineInterval> iv) {
    return LineAlg::canon(std::move(iv));
}
std::vector<CycInterval> canon_cyc(std::vector<CycInterval> iv) {
    return CycAlg::canon(std::move(iv));
}
LineInterval closure_interval(const LineInterval& i) { return LineAlg::closure(i); }
CycInterval closure_interval(const CycInterval& i) { return CycAlg::closure(i); }
bool line_member(const CutPoint& x, const LineInterval& i) { return LineAlg::member(x, i); }
bool cyc_member(const CyclicPoint& x, const CycInterval& i) { return CycAlg::member(x, i); }

// ---------------------------------------------------------------------------
// SymbolicSet
// ---------------------------------------------------------------------------

namespace {
void check_space(const SpacePtr& a, const SpacePtr& b, const char* op) {
    if (!same_space(a, b))
        throw std::invalid_argument(std::string("space mismatch in ") + op);
}
}  // namespace

SymbolicSet SymbolicSet::empty(SpacePtr sp) {
    SymbolicSet s;
    s.space_ = std::move(sp);
    switch (s.space_->kind) {
        case SpaceKind::CutLine: s.payload_ = LineSet{}; break;
        case SpaceKind::Product: s.payload_ = ProductSet{}; break;
        case SpaceKind::Compact: s.payload_ = CompactSet{}; break;
        case SpaceKind::Cyclic: s.payload_ = CyclicSet{}; break;
        case SpaceKind::Cylinder: s.payload_ = CylinderSet{}; break;
        case SpaceKind::Finite: s.payload_ = FiniteSet{}; break;
    }
    return s;
}

SymbolicSet SymbolicSet::whole(SpacePtr sp) {
    SymbolicSet s = empty(sp);
    switch (sp->kind) {
        case SpaceKind::CutLine:
            s.payload_ = LineSet{{LineInterval{{CutPoint::minus_inf(), -1}, {CutPoint::plus_inf(), +1}}}};
            break;
        case SpaceKind::Product: {
            LineInterval full{{CutPoint::minus_inf(), -1}, {CutPoint::plus_inf(), +1}};
            s.payload_ = ProductSet{{Box(sp->arity, full)}};
            break;
        }
        case SpaceKind::Compact: s.payload_ = CompactSet{true, {}, true}; break;
        case SpaceKind::Cyclic:
            s.payload_ = CyclicSet{{CycInterval{{CyclicAxis::axis_min(), -1}, {CyclicAxis::axis_max(), +1}}}};
            break;
        case SpaceKind::Cylinder: s.payload_ = CylinderSet{{""}, {}}; break;
        case SpaceKind::Finite: {
            std::vector<int> all(sp->point_names.size());
            for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
            s.payload_ = FiniteSet{std::move(all)};
            break;
        }
    }
    return s;
}

SymbolicSet SymbolicSet::point(const NamedPoint& x) {
    SymbolicSet s = empty(x.space);
    switch (x.space->kind) {
        case SpaceKind::CutLine: {
            auto iv = make_line_interval(x.cut(), true, x.cut(), true);
            s.payload_ = LineSet{{*iv}};
            break;
        }
        case SpaceKind::Product: {
            Box b;
            for (const auto& c : x.coords()) b.push_back(*make_line_interval(c, true, c, true));
            s.payload_ = ProductSet{{std::move(b)}};
            break;
        }
        case SpaceKind::Compact: {
            CompactSet c;
            if (x.compact().is_limit) c.has_limit = true;
            else c.isos = {x.compact().k};
            s.payload_ = std::move(c);
            break;
        }
        case SpaceKind::Cyclic: {
            auto iv = make_cyc_interval(x.cyclic(), true, x.cyclic(), true);
            s.payload_ = CyclicSet{{*iv}};
            break;
        }
        case SpaceKind::Cylinder:
            s.payload_ = CylinderSet{{}, {x.cylinder().normalized()}};
            break;
        case SpaceKind::Finite: s.payload_ = FiniteSet{{x.finite().idx}}; break;
    }
    return s;
}

SymbolicSet SymbolicSet::line(SpacePtr sp, std::vector<LineInterval> iv) {
    if (sp->kind != SpaceKind::CutLine) throw std::invalid_argument("line(): wrong space kind");
    SymbolicSet s;
    s.space_ = std::move(sp);
    s.payload_ = LineSet{canon_line(std::move(iv))};
    return s;
}

SymbolicSet SymbolicSet::product(SpacePtr sp, std::vector<Box> boxes) {
    if (sp->kind != SpaceKind::Product) throw std::invalid_argument("product(): wrong space kind");
    for (const auto& b : boxes)
        if (static_cast<int>(b.size()) != sp->arity)
            throw std::invalid_argument("product(): box arity mismatch");
    SymbolicSet s;
    int arity = sp->arity;
    s.space_ = std::move(sp);
    s.payload_ = ProductSet{canon_boxes(std::move(boxes), arity)};
    return s;
}

SymbolicSet SymbolicSet::compact(SpacePtr sp, CompactSet payload) {
    if (sp->kind != SpaceKind::Compact) throw std::invalid_argument("compact(): wrong space kind");
    std::sort(payload.isos.begin(), payload.isos.end());
    payload.isos.erase(std::unique(payload.isos.begin(), payload.isos.end()), payload.isos.end());
    SymbolicSet s;
    s.space_ = std::move(sp);
    s.payload_ = std::move(payload);
    return s;
}

SymbolicSet SymbolicSet::cyclic(SpacePtr sp, std::vector<CycInterval> iv) {
    if (sp->kind != SpaceKind::Cyclic) throw std::invalid_argument("cyclic(): wrong space kind");
    SymbolicSet s;
    s.space_ = std::move(sp);
    s.payload_ = CyclicSet{canon_cyc(std::move(iv))};
    return s;
}

SymbolicSet SymbolicSet::cylinder_words(SpacePtr sp, std::vector<std::string> words) {
    return cylinder(std::move(sp), CylinderSet{std::move(words), {}});
}

SymbolicSet SymbolicSet::cylinder(SpacePtr sp, CylinderSet payload) {
    if (sp->kind != SpaceKind::Cylinder) throw std::invalid_argument("cylinder(): wrong space kind");
    SymbolicSet s;
    s.space_ = std::move(sp);
    s.payload_ = canon_cylinder(std::move(payload));
    return s;
}

SymbolicSet SymbolicSet::finite(SpacePtr sp, std::vector<int> members) {
    if (sp->kind != SpaceKind::Finite) throw std::invalid_argument("finite(): wrong space kind");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (int m : members)
        if (m < 0 || m >= static_cast<int>(sp->point_names.size()))
            throw std::invalid_argument("finite(): member out of range");
    SymbolicSet s;
    s.space_ = std::move(sp);
    s.payload_ = FiniteSet{std::move(members)};
    return s;
}

SymbolicSet line_interval_set(SpacePtr sp, const CutPoint& lo, bool lo_inc,
                              const CutPoint& hi, bool hi_inc) {
    auto iv = make_line_interval(lo, lo_inc, hi, hi_inc);
    std::vector<LineInterval> v;
    if (iv) v.push_back(*iv);
    return SymbolicSet::line(std::move(sp), std::move(v));
}

bool SymbolicSet::member(const NamedPoint& x) const {
    check_space(space_, x.space, "member");
    return std::visit(
        [&](const auto& pay) -> bool {
            using T = std::decay_t<decltype(pay)>;
            if constexpr (std::is_same_v<T, LineSet>) {
                for (const auto& i : pay.iv)
                    if (LineAlg::member(x.cut(), i)) return true;
                return false;
            } else if constexpr (std::is_same_v<T, ProductSet>) {
                for (const auto& b : pay.boxes)
                    if (box_member(x.coords(), b)) return true;
                return false;
            } else if constexpr (std::is_same_v<T, CompactSet>) {
                const auto& p = x.compact();
                if (p.is_limit) return pay.has_limit;
                bool listed = std::binary_search(pay.isos.begin(), pay.isos.end(), p.k);
                return pay.cofinite ? !listed : listed;
            } else if constexpr (std::is_same_v<T, CyclicSet>) {
                for (const auto& i : pay.iv)
                    if (CycAlg::member(x.cyclic(), i)) return true;
                return false;
            } else if constexpr (std::is_same_v<T, CylinderSet>) {
                CylinderPoint p = x.cylinder().normalized();
                if (point_in_words(p, pay.cyls)) return true;
                return std::binary_search(
                    pay.pts.begin(), pay.pts.end(), p,
                    [](const CylinderPoint& a, const CylinderPoint& b) { return compare(a, b) < 0; });
            } else {
                return std::binary_search(pay.members.begin(), pay.members.end(), x.finite().idx);
            }
        },
        payload_);
}

bool SymbolicSet::is_empty() const {
    return std::visit(
        [](const auto& pay) -> bool {
            using T = std::decay_t<decltype(pay)>;
            if constexpr (std::is_same_v<T, LineSet>) return pay.iv.empty();
            else if constexpr (std::is_same_v<T, ProductSet>) return pay.boxes.empty();
            else if constexpr (std::is_same_v<T, CompactSet>)
                return !pay.cofinite && pay.isos.empty() && !pay.has_limit;
            else if constexpr (std::is_same_v<T, CyclicSet>) return pay.iv.empty();
            else if constexpr (std::is_same_v<T, CylinderSet>)
                return pay.cyls.empty() && pay.pts.empty();
            else return pay.members.empty();
        },
        payload_);
}

SymbolicSet SymbolicSet::unite(const SymbolicSet& o) const {
    check_space(space_, o.space_, "unite");
    SymbolicSet s;
    s.space_ = space_;
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            const auto& b = std::get<T>(o.payload_);
            if constexpr (std::is_same_v<T, LineSet>) {
                auto iv = a.iv;
                iv.insert(iv.end(), b.iv.begin(), b.iv.end());
                s.payload_ = LineSet{canon_line(std::move(iv))};
            } else if constexpr (std::is_same_v<T, ProductSet>) {
                auto boxes = a.boxes;
                boxes.insert(boxes.end(), b.boxes.begin(), b.boxes.end());
                s.payload_ = ProductSet{canon_boxes(std::move(boxes), space_->arity)};
            } else if constexpr (std::is_same_v<T, CompactSet>) {
                CompactSet r;
                if (a.cofinite && b.cofinite) {
                    r.cofinite = true;
                    for (long long k : a.isos)
                        if (std::binary_search(b.isos.begin(), b.isos.end(), k)) r.isos.push_back(k);
                } else if (a.cofinite || b.cofinite) {
                    const CompactSet& co = a.cofinite ? a : b;
                    const CompactSet& fi = a.cofinite ? b : a;
                    r.cofinite = true;
                    for (long long k : co.isos)
                        if (!std::binary_search(fi.isos.begin(), fi.isos.end(), k)) r.isos.push_back(k);
                } else {
                    std::set_union(a.isos.begin(), a.isos.end(), b.isos.begin(), b.isos.end(),
                                   std::back_inserter(r.isos));
                }
                r.has_limit = a.has_limit || b.has_limit;
                s.payload_ = std::move(r);
            } else if constexpr (std::is_same_v<T, CyclicSet>) {
                auto iv = a.iv;
                iv.insert(iv.end(), b.iv.begin(), b.iv.end());
                s.payload_ = CyclicSet{canon_cyc(std::move(iv))};
            } else if constexpr (std::is_same_v<T, CylinderSet>) {
                CylinderSet r = a;
                r.cyls.insert(r.cyls.end(), b.cyls.begin(), b.cyls.end());
                r.pts.insert(r.pts.end(), b.pts.begin(), b.pts.end());
                s.payload_ = canon_cylinder(std::move(r));
            } else {
                FiniteSet r;
                std::set_union(a.members.begin(), a.members.end(), b.members.begin(),
                               b.members.end(), std::back_inserter(r.members));
                s.payload_ = std::move(r);
            }
        },
        payload_);
    return s;
}

SymbolicSet SymbolicSet::intersect(const SymbolicSet& o) const {
    check_space(space_, o.space_, "intersect");
    SymbolicSet s;
    s.space_ = space_;
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            const auto& b = std::get<T>(o.payload_);
            if constexpr (std::is_same_v<T, LineSet>) {
                std::vector<LineInterval> iv;
                for (const auto& x : a.iv)
                    for (const auto& y : b.iv)
                        if (auto z = LineAlg::intersect(x, y)) iv.push_back(*z);
                s.payload_ = LineSet{canon_line(std::move(iv))};
            } else if constexpr (std::is_same_v<T, ProductSet>) {
                std::vector<Box> boxes;
                for (const auto& x : a.boxes)
                    for (const auto& y : b.boxes) {
                        Box z;
                        bool ok = true;
                        for (size_t i = 0; i < x.size(); ++i) {
                            auto w = LineAlg::intersect(x[i], y[i]);
                            if (!w) { ok = false; break; }
                            z.push_back(*w);
                        }
                        if (ok) boxes.push_back(std::move(z));
                    }
                s.payload_ = ProductSet{canon_boxes(std::move(boxes), space_->arity)};
            } else if constexpr (std::is_same_v<T, CompactSet>) {
                CompactSet r;
                if (a.cofinite && b.cofinite) {
                    r.cofinite = true;
                    std::set_union(a.isos.begin(), a.isos.end(), b.isos.begin(), b.isos.end(),
                                   std::back_inserter(r.isos));
                } else if (a.cofinite || b.cofinite) {
                    const CompactSet& co = a.cofinite ? a : b;
                    const CompactSet& fi = a.cofinite ? b : a;
                    for (long long k : fi.isos)
                        if (!std::binary_search(co.isos.begin(), co.isos.end(), k)) r.isos.push_back(k);
                } else {
                    std::set_intersection(a.isos.begin(), a.isos.end(), b.isos.begin(),
                                          b.isos.end(), std::back_inserter(r.isos));
                }
                r.has_limit = a.has_limit && b.has_limit;
                s.payload_ = std::move(r);
            } else if constexpr (std::is_same_v<T, CyclicSet>) {
                std::vector<CycInterval> iv;
                for (const auto& x : a.iv)
                    for (const auto& y : b.iv)
                        if (auto z = CycAlg::intersect(x, y)) iv.push_back(*z);
                s.payload_ = CyclicSet{canon_cyc(std::move(iv))};
            } else if constexpr (std::is_same_v<T, CylinderSet>) {
                CylinderSet r;
                for (const auto& w : a.cyls)
                    for (const auto& v : b.cyls) {
                        if (word_prefix_of(w, v)) r.cyls.push_back(v);
                        else if (word_prefix_of(v, w)) r.cyls.push_back(w);
                    }
                for (const auto& p : a.pts)
                    if (point_in_words(p, b.cyls)) r.pts.push_back(p);
                for (const auto& p : b.pts) {
                    if (point_in_words(p, a.cyls)) r.pts.push_back(p);
                    for (const auto& q : a.pts)
                        if (q == p) r.pts.push_back(p);
                }
                s.payload_ = canon_cylinder(std::move(r));
            } else {
                FiniteSet r;
                std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(),
                                      b.members.end(), std::back_inserter(r.members));
                s.payload_ = std::move(r);
            }
        },
        payload_);
    return s;
}

SymbolicSet SymbolicSet::complement() const {
    SymbolicSet s;
    s.space_ = space_;
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, LineSet>) {
                s.payload_ = LineSet{LineAlg::complement(a.iv)};
            } else if constexpr (std::is_same_v<T, ProductSet>) {
                std::vector<Box> cur = {whole(space_).as_product().boxes.front()};
                for (const auto& b : a.boxes) {
                    std::vector<Box> next;
                    auto parts = box_complement_one(b, space_->arity);
                    for (const auto& c : cur)
                        for (const auto& p : parts) {
                            Box z;
                            bool ok = true;
                            for (size_t i = 0; i < c.size(); ++i) {
                                auto w = LineAlg::intersect(c[i], p[i]);
                                if (!w) { ok = false; break; }
                                z.push_back(*w);
                            }
                            if (ok) next.push_back(std::move(z));
                        }
                    cur = std::move(next);
                }
                s.payload_ = ProductSet{canon_boxes(std::move(cur), space_->arity)};
            } else if constexpr (std::is_same_v<T, CompactSet>) {
                CompactSet r;
                r.cofinite = !a.cofinite;
                r.isos = a.isos;
                r.has_limit = !a.has_limit;
                s.payload_ = std::move(r);
            } else if constexpr (std::is_same_v<T, CyclicSet>) {
                s.payload_ = CyclicSet{CycAlg::complement(a.iv)};
            } else if constexpr (std::is_same_v<T, CylinderSet>) {
                if (!a.pts.empty())
                    throw std::invalid_argument(
                        "cylinder complement with marked points leaves the symbolic class");
                std::vector<std::string> cur = {""};
                for (const auto& w : a.cyls) {
                    std::vector<std::string> next;
                    for (const auto& c : cur) {
                        if (word_prefix_of(c, w)) {
                            auto sibs = word_minus(c, w);
                            next.insert(next.end(), sibs.begin(), sibs.end());
                        } else if (!word_prefix_of(w, c)) {
                            next.push_back(c);
                        }
                    }
                    cur = std::move(next);
                }
                s.payload_ = canon_cylinder(CylinderSet{std::move(cur), {}});
            } else {
                FiniteSet r;
                for (int i = 0; i < static_cast<int>(space_->point_names.size()); ++i)
                    if (!std::binary_search(a.members.begin(), a.members.end(), i))
                        r.members.push_back(i);
                s.payload_ = std::move(r);
            }
        },
        payload_);
    return s;
}

SymbolicSet SymbolicSet::diff(const SymbolicSet& o) const {
    check_space(space_, o.space_, "diff");
    if (space_->kind == SpaceKind::Cylinder) {
        const auto& a = as_cylinder();
        const auto& b = o.as_cylinder();
        // cylinder part minus cylinder part via the trie, then point bookkeeping
        std::vector<std::string> cyl_left;
        for (const auto& w : a.cyls) {
            std::vector<std::string> cur = {w};
            for (const auto& v : b.cyls) {
                std::vector<std::string> next;
                for (const auto& c : cur) {
                    if (word_prefix_of(v, c)) continue;           // fully removed
                    if (word_prefix_of(c, v)) {
                        auto sibs = word_minus(c, v);
                        next.insert(next.end(), sibs.begin(), sibs.end());
                    } else {
                        next.push_back(c);
                    }
                }
                cur = std::move(next);
            }
            cyl_left.insert(cyl_left.end(), cur.begin(), cur.end());
        }
        for (const auto& p : b.pts)
            if (point_in_words(p, cyl_left))
                throw std::invalid_argument(
                    "cylinder difference removing a point from a cylinder leaves the class");
        CylinderSet r{std::move(cyl_left), {}};
        for (const auto& p : a.pts) {
            bool removed = point_in_words(p, b.cyls);
            for (const auto& q : b.pts)
                if (q == p) removed = true;
            if (!removed) r.pts.push_back(p);
        }
        return cylinder(space_, std::move(r));
    }
    return intersect(o.complement());
}

SymbolicSet SymbolicSet::closure() const {
    SymbolicSet s;
    s.space_ = space_;
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, LineSet>) {
                std::vector<LineInterval> iv;
                for (const auto& i : a.iv) iv.push_back(LineAlg::closure(i));
                s.payload_ = LineSet{canon_line(std::move(iv))};
            } else if constexpr (std::is_same_v<T, ProductSet>) {
                std::vector<Box> boxes;
                for (const auto& b : a.boxes) {
                    Box z;
                    for (const auto& i : b) z.push_back(LineAlg::closure(i));
                    boxes.push_back(std::move(z));
                }
                s.payload_ = ProductSet{canon_boxes(std::move(boxes), space_->arity)};
            } else if constexpr (std::is_same_v<T, CompactSet>) {
                CompactSet r = a;
                if (r.cofinite) r.has_limit = true;
                s.payload_ = std::move(r);
            } else if constexpr (std::is_same_v<T, CyclicSet>) {
                std::vector<CycInterval> iv;
                for (const auto& i : a.iv) iv.push_back(CycAlg::closure(i));
                s.payload_ = CyclicSet{canon_cyc(std::move(iv))};
            } else {
                s.payload_ = a;  // cylinder and finite sets in the class are closed
            }
        },
        payload_);
    return s;
}

bool SymbolicSet::is_closed() const { return *this == closure(); }

bool SymbolicSet::is_clopen() const {
    if (space_->kind == SpaceKind::Cylinder) return as_cylinder().pts.empty();
    if (space_->kind == SpaceKind::Finite) return true;
    return is_closed() && complement().is_closed();
}

bool SymbolicSet::is_finite_points() const {
    return std::visit(
        [&](const auto& a) -> bool {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, LineSet>) {
                for (const auto& i : a.iv)
                    if (!LineAlg::is_point(i)) return false;
                return true;
            } else if constexpr (std::is_same_v<T, ProductSet>) {
                for (const auto& b : a.boxes)
                    for (const auto& i : b)
                        if (!LineAlg::is_point(i)) return false;
                return true;
            } else if constexpr (std::is_same_v<T, CompactSet>) {
                return !a.cofinite;
            } else if constexpr (std::is_same_v<T, CyclicSet>) {
                for (const auto& i : a.iv)
                    if (!CycAlg::is_point(i)) return false;
                return true;
            } else if constexpr (std::is_same_v<T, CylinderSet>) {
                return a.cyls.empty();
            } else {
                return true;
            }
        },
        payload_);
}

SymbolicSet SymbolicSet::remove_point(const NamedPoint& x) const {
    check_space(space_, x.space, "remove_point");
    if (!member(x)) return *this;
    if (space_->kind == SpaceKind::Cylinder) {
        const auto& a = as_cylinder();
        CylinderPoint p = x.cylinder().normalized();
        if (point_in_words(p, a.cyls))
            throw std::invalid_argument("cylinder remove_point inside a cylinder leaves the class");
        CylinderSet r = a;
        r.pts.erase(std::remove_if(r.pts.begin(), r.pts.end(),
                                   [&](const CylinderPoint& q) { return q == p; }),
                    r.pts.end());
        return cylinder(space_, std::move(r));
    }
    return diff(point(x));
}

bool SymbolicSet::operator==(const SymbolicSet& o) const {
    if (!same_space(space_, o.space_)) return false;
    return payload_ == o.payload_;
}

std::optional<NamedPoint> SymbolicSet::witness() const {
    if (is_empty()) return std::nullopt;
    return std::visit(
        [&](const auto& a) -> std::optional<NamedPoint> {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, LineSet>) {
                return cut_point(space_, LineAlg::least_point(a.iv.front()));
            } else if constexpr (std::is_same_v<T, ProductSet>) {
                std::vector<CutPoint> coords;
                for (const auto& i : a.boxes.front()) coords.push_back(LineAlg::least_point(i));
                return product_point(space_, std::move(coords));
            } else if constexpr (std::is_same_v<T, CompactSet>) {
                if (!a.cofinite) {
                    if (!a.isos.empty()) return compact_point(space_, CompactPoint::iso(a.isos.front()));
                    return compact_point(space_, CompactPoint::limit());
                }
                long long k = 0;
                while (std::binary_search(a.isos.begin(), a.isos.end(), k)) ++k;
                return compact_point(space_, CompactPoint::iso(k));
            } else if constexpr (std::is_same_v<T, CyclicSet>) {
                return cyclic_point(space_, CycAlg::least_point(a.iv.front()));
            } else if constexpr (std::is_same_v<T, CylinderSet>) {
                if (!a.cyls.empty())
                    return cylinder_point(space_, CylinderPoint{a.cyls.front(), false});
                return cylinder_point(space_, a.pts.front());
            } else {
                return finite_point(space_, a.members.front());
            }
        },
        payload_);
}

std::vector<NamedPoint> SymbolicSet::points() const {
    if (!is_finite_points()) throw std::invalid_argument("points(): set is not a finite point set");
    std::vector<NamedPoint> out;
    std::visit(
        [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, LineSet>) {
                for (const auto& i : a.iv) out.push_back(cut_point(space_, i.lo.p));
            } else if constexpr (std::is_same_v<T, ProductSet>) {
                for (const auto& b : a.boxes) {
                    std::vector<CutPoint> coords;
                    for (const auto& i : b) coords.push_back(i.lo.p);
                    out.push_back(product_point(space_, std::move(coords)));
                }
            } else if constexpr (std::is_same_v<T, CompactSet>) {
                for (long long k : a.isos) out.push_back(compact_point(space_, CompactPoint::iso(k)));
                if (a.has_limit) out.push_back(compact_point(space_, CompactPoint::limit()));
            } else if constexpr (std::is_same_v<T, CyclicSet>) {
                for (const auto& i : a.iv) out.push_back(cyclic_point(space_, i.lo.p));
            } else if constexpr (std::is_same_v<T, CylinderSet>) {
                for (const auto& p : a.pts) out.push_back(cylinder_point(space_, p));
            } else {
                for (int m : a.members) out.push_back(finite_point(space_, m));
            }
        },
        payload_);
    return out;
}

namespace {
// display normal form: inclusive named endpoints where they exist, so the
// canonical upper position "just below Plus(t)" prints as "t]" again
template <typename PT>
std::optional<PT> display_pred(const PT& p) {
    if (p.tag == decltype(p.tag)::Plus) return PT{decltype(p.tag)::Rat, p.q};
    if (p.tag == decltype(p.tag)::Rat) {
        if constexpr (std::is_same_v<PT, CyclicPoint>) {
            if (p.q == Rat(0)) return std::nullopt;  // nothing below the axis bottom
        }
        return PT{decltype(p.tag)::Minus, p.q};
    }
    return std::nullopt;
}

template <typename Alg_, typename Iv>
std::string iv_str_alg(const Iv& i) {
    if (Alg_::is_point(i)) return "{" + to_string(i.lo.p) + "}";
    std::string s = i.lo.side == -1 ? "[" + to_string(i.lo.p) : "(" + to_string(i.lo.p);
    s += ",";
    if (i.hi.side == +1) {
        s += to_string(i.hi.p) + "]";
    } else if (auto pred = display_pred(i.hi.p)) {
        s += to_string(*pred) + "]";
    } else {
        s += to_string(i.hi.p) + ")";
    }
    return s;
}

std::string iv_str_impl(const LineInterval& i) { return iv_str_alg<LineAlg>(i); }
std::string iv_str_impl(const CycInterval& i) { return iv_str_alg<CycAlg>(i); }

template <typename Iv>
std::string iv_str(const Iv& i) {
    return iv_str_impl(i);
}
}  // namespace

std::string to_string(const LineInterval& i) { return iv_str_impl(i); }
std::string to_string(const CycInterval& i) { return iv_str_impl(i); }

std::string SymbolicSet::str() const {
    if (is_empty()) return "{}";
    return std::visit(
        [&](const auto& a) -> std::string {
            using T = std::decay_t<decltype(a)>;
            std::string s;
            if constexpr (std::is_same_v<T, LineSet>) {
                for (size_t i = 0; i < a.iv.size(); ++i) {
                    if (i) s += " ∪ ";
                    s += iv_str(a.iv[i]);
                }
            } else if constexpr (std::is_same_v<T, ProductSet>) {
                for (size_t i = 0; i < a.boxes.size(); ++i) {
                    if (i) s += " ∪ ";
                    for (size_t j = 0; j < a.boxes[i].size(); ++j) {
                        if (j) s += "×";
                        s += iv_str(a.boxes[i][j]);
                    }
                }
            } else if constexpr (std::is_same_v<T, CompactSet>) {
                auto list = [&]() {
                    std::string t;
                    for (size_t i = 0; i < a.isos.size(); ++i) {
                        if (i) t += ",";
                        t += "iso:" + std::to_string(a.isos[i]);
                    }
                    return t;
                };
                if (a.cofinite) {
                    s = "cofinite(excl {" + list() + "}" + (a.has_limit ? ", limit" : ", no limit") + ")";
                } else {
                    s = "{" + list();
                    if (a.has_limit) s += (a.isos.empty() ? "" : ",") + std::string("limit");
                    s += "}";
                }
            } else if constexpr (std::is_same_v<T, CyclicSet>) {
                for (size_t i = 0; i < a.iv.size(); ++i) {
                    if (i) s += " ∪ ";
                    s += iv_str(a.iv[i]);
                }
            } else if constexpr (std::is_same_v<T, CylinderSet>) {
                bool first = true;
                for (const auto& w : a.cyls) {
                    if (!first) s += " ∪ ";
                    first = false;
                    s += "[" + (w.empty() ? "e" : w) + "]";
                }
                for (const auto& p : a.pts) {
                    if (!first) s += " ∪ ";
                    first = false;
                    s += "{" + to_string(cylinder_point(space_, p)) + "}";
                }
            } else {
                s = "{";
                for (size_t i = 0; i < a.members.size(); ++i) {
                    if (i) s += ",";
                    s += space_->point_names[a.members[i]];
                }
                s += "}";
            }
            return s;
        },
        payload_);
}

}  // namespace oscrank
