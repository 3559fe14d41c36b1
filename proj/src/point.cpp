#include "oscrank/point.hpp"

#include <stdexcept>

namespace oscrank {

namespace {
int tag_rank(CutPoint::Tag t) {
    switch (t) {
        case CutPoint::Tag::Minus: return 0;
        case CutPoint::Tag::Rat: return 1;
        case CutPoint::Tag::Plus: return 2;
        default: return -1;
    }
}
int cmp_int(long long a, long long b) { return a < b ? -1 : a > b ? 1 : 0; }
}  // namespace

int compare(const CutPoint& a, const CutPoint& b) {
    using T = CutPoint::Tag;
    if (a.tag == T::MinusInf || b.tag == T::MinusInf) {
        if (a.tag == b.tag) return 0;
        return a.tag == T::MinusInf ? -1 : 1;
    }
    if (a.tag == T::PlusInf || b.tag == T::PlusInf) {
        if (a.tag == b.tag) return 0;
        return a.tag == T::PlusInf ? 1 : -1;
    }
    if (a.q != b.q) return a.q < b.q ? -1 : 1;
    return cmp_int(tag_rank(a.tag), tag_rank(b.tag));
}

int compare(const CyclicPoint& a, const CyclicPoint& b) {
    // Representative order: key(q, tag) with Minus(0) placed at the top.
    auto key = [](const CyclicPoint& p) -> std::pair<Rat, int> {
        if (p.tag == CyclicPoint::Tag::Minus && p.q == Rat(0)) return {Rat(1), -1};
        int t = p.tag == CyclicPoint::Tag::Minus ? -1 : p.tag == CyclicPoint::Tag::Rat ? 0 : 1;
        return {p.q, t};
    };
    auto ka = key(a), kb = key(b);
    if (ka.first != kb.first) return ka.first < kb.first ? -1 : 1;
    return cmp_int(ka.second, kb.second);
}

int compare(const CompactPoint& a, const CompactPoint& b) {
    if (a.is_limit != b.is_limit) return a.is_limit ? 1 : -1;  // Limit sorts last
    return cmp_int(a.k, b.k);
}

CylinderPoint CylinderPoint::normalized() const {
    CylinderPoint p = *this;
    char t = tail_one ? '1' : '0';
    while (!p.word.empty() && p.word.back() == t) p.word.pop_back();
    return p;
}

int compare(const CylinderPoint& a, const CylinderPoint& b) {
    CylinderPoint na = a.normalized(), nb = b.normalized();
    if (na.word != nb.word) return na.word < nb.word ? -1 : 1;
    return cmp_int(na.tail_one ? 1 : 0, nb.tail_one ? 1 : 0);
}

int compare(const NamedPoint& a, const NamedPoint& b) {
    if (!same_space(a.space, b.space))
        throw std::invalid_argument("compare: points from different spaces");
    if (a.value.index() != b.value.index())
        throw std::invalid_argument("compare: mismatched point variants");
    return std::visit(
        [&](const auto& av) -> int {
            using T = std::decay_t<decltype(av)>;
            const auto& bv = std::get<T>(b.value);
            if constexpr (std::is_same_v<T, std::vector<CutPoint>>) {
                for (size_t i = 0; i < av.size(); ++i) {
                    int c = compare(av[i], bv[i]);
                    if (c != 0) return c;
                }
                return 0;
            } else {
                return compare(av, bv);
            }
        },
        a.value);
}

namespace {
void require_kind(const SpacePtr& sp, SpaceKind k, const char* what) {
    if (!sp || sp->kind != k)
        throw std::invalid_argument(std::string("point/space kind mismatch: ") + what);
}
}  // namespace

NamedPoint cut_point(SpacePtr sp, CutPoint p) {
    require_kind(sp, SpaceKind::CutLine, "cut line");
    return {std::move(sp), p};
}

NamedPoint product_point(SpacePtr sp, std::vector<CutPoint> coords) {
    require_kind(sp, SpaceKind::Product, "product");
    if (static_cast<int>(coords.size()) != sp->arity)
        throw std::invalid_argument("product point arity mismatch");
    return {std::move(sp), std::move(coords)};
}

NamedPoint compact_point(SpacePtr sp, CompactPoint p) {
    require_kind(sp, SpaceKind::Compact, "compactification");
    if (!p.is_limit && p.k < 0) throw std::invalid_argument("iso index must be >= 0");
    return {std::move(sp), p};
}

NamedPoint cyclic_point(SpacePtr sp, CyclicPoint p) {
    require_kind(sp, SpaceKind::Cyclic, "cyclic");
    if (p.q < Rat(0) || p.q >= Rat(1))
        throw std::invalid_argument("cyclic representative must lie in [0,1)");
    return {std::move(sp), p};
}

NamedPoint cylinder_point(SpacePtr sp, CylinderPoint p) {
    require_kind(sp, SpaceKind::Cylinder, "cylinder");
    for (char c : p.word)
        if (c != '0' && c != '1') throw std::invalid_argument("cylinder word must be over 0/1");
    return {std::move(sp), p.normalized()};
}

NamedPoint finite_point(SpacePtr sp, int idx) {
    require_kind(sp, SpaceKind::Finite, "finite");
    if (idx < 0 || idx >= static_cast<int>(sp->point_names.size()))
        throw std::invalid_argument("finite point index out of range");
    return {std::move(sp), FinitePoint{idx}};
}

std::string to_string(const CutPoint& p) {
    switch (p.tag) {
        case CutPoint::Tag::MinusInf: return "-inf";
        case CutPoint::Tag::PlusInf: return "+inf";
        case CutPoint::Tag::Minus: return p.q.str() + "-";
        case CutPoint::Tag::Plus: return p.q.str() + "+";
        default: return p.q.str();
    }
}

std::string to_string(const CyclicPoint& p) {
    switch (p.tag) {
        case CyclicPoint::Tag::Minus: return p.q.str() + "-";
        case CyclicPoint::Tag::Plus: return p.q.str() + "+";
        default: return p.q.str();
    }
}

std::string to_string(const NamedPoint& p) {
    return std::visit(
        [&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, CutPoint>) {
                return to_string(v);
            } else if constexpr (std::is_same_v<T, std::vector<CutPoint>>) {
                std::string s = "(";
                for (size_t i = 0; i < v.size(); ++i) {
                    if (i) s += ", ";
                    s += to_string(v[i]);
                }
                return s + ")";
            } else if constexpr (std::is_same_v<T, CompactPoint>) {
                return v.is_limit ? "limit" : "iso:" + std::to_string(v.k);
            } else if constexpr (std::is_same_v<T, CyclicPoint>) {
                return to_string(v);
            } else if constexpr (std::is_same_v<T, CylinderPoint>) {
                return (v.word.empty() ? std::string("e") : v.word) +
                       (v.tail_one ? ":1*" : ":0*");
            } else {
                return p.space->point_names[v.idx];
            }
        },
        p.value);
}

}  // namespace oscrank
