#pragma once

#include <compare>
#include <string>
#include <variant>
#include <vector>

#include "oscrank/rational.hpp"
#include "oscrank/space.hpp"

namespace oscrank {

/// A point of the cut line. Order: MinusInf < ... Minus(q) < Rat(q) < Plus(q)
/// ... < PlusInf, triples at distinct rationals ordered by their rational.
struct CutPoint {
    enum class Tag { MinusInf, Minus, Rat, Plus, PlusInf };
    Tag tag = Tag::Rat;
    Rat q;  // meaningful for Minus/Rat/Plus

    static CutPoint minus_inf() { return {Tag::MinusInf, Rat(0)}; }
    static CutPoint plus_inf() { return {Tag::PlusInf, Rat(0)}; }
    static CutPoint below(Rat v) { return {Tag::Minus, std::move(v)}; }
    static CutPoint at(Rat v) { return {Tag::Rat, std::move(v)}; }
    static CutPoint above(Rat v) { return {Tag::Plus, std::move(v)}; }

    bool is_inf() const { return tag == Tag::MinusInf || tag == Tag::PlusInf; }
    bool isolated() const { return tag == Tag::Rat; }
};

int compare(const CutPoint& a, const CutPoint& b);
inline bool operator==(const CutPoint& a, const CutPoint& b) { return compare(a, b) == 0; }
inline bool operator<(const CutPoint& a, const CutPoint& b) { return compare(a, b) < 0; }
inline bool operator<=(const CutPoint& a, const CutPoint& b) { return compare(a, b) <= 0; }

/// Cut of the rational circle; representatives live in [0,1). Minus(0) is the
/// cut just below the wrap (approached through values near 1).
struct CyclicPoint {
    enum class Tag { Minus, Rat, Plus };
    Tag tag = Tag::Rat;
    Rat q;  // in [0,1)

    bool isolated() const { return tag == Tag::Rat; }
};

/// Representative-order comparison: Rat(0) < Plus(0) < ... < Minus(0).
int compare(const CyclicPoint& a, const CyclicPoint& b);
inline bool operator==(const CyclicPoint& a, const CyclicPoint& b) { return compare(a, b) == 0; }
inline bool operator<(const CyclicPoint& a, const CyclicPoint& b) { return compare(a, b) < 0; }

struct CompactPoint {
    bool is_limit = false;
    long long k = 0;  // iso index when !is_limit

    static CompactPoint iso(long long k) { return {false, k}; }
    static CompactPoint limit() { return {true, 0}; }
};
int compare(const CompactPoint& a, const CompactPoint& b);
inline bool operator==(const CompactPoint& a, const CompactPoint& b) { return compare(a, b) == 0; }

struct CylinderPoint {
    std::string word;      // '0'/'1' prefix
    bool tail_one = false; // tail 000... or 111...

    /// Canonical form: a word never ends with its own tail bit.
    CylinderPoint normalized() const;
};
int compare(const CylinderPoint& a, const CylinderPoint& b);
inline bool operator==(const CylinderPoint& a, const CylinderPoint& b) { return compare(a, b) == 0; }

struct FinitePoint {
    int idx = 0;
};
inline int compare(const FinitePoint& a, const FinitePoint& b) {
    return a.idx < b.idx ? -1 : a.idx > b.idx ? 1 : 0;
}
inline bool operator==(const FinitePoint& a, const FinitePoint& b) { return a.idx == b.idx; }

struct NamedPoint {
    SpacePtr space;
    std::variant<CutPoint, std::vector<CutPoint>, CompactPoint, CyclicPoint,
                 CylinderPoint, FinitePoint>
        value;

    const CutPoint& cut() const { return std::get<CutPoint>(value); }
    const std::vector<CutPoint>& coords() const { return std::get<std::vector<CutPoint>>(value); }
    const CompactPoint& compact() const { return std::get<CompactPoint>(value); }
    const CyclicPoint& cyclic() const { return std::get<CyclicPoint>(value); }
    const CylinderPoint& cylinder() const { return std::get<CylinderPoint>(value); }
    const FinitePoint& finite() const { return std::get<FinitePoint>(value); }
};

/// Total order within one space (canonical, used for sorting and witnesses).
int compare(const NamedPoint& a, const NamedPoint& b);
inline bool operator==(const NamedPoint& a, const NamedPoint& b) { return compare(a, b) == 0; }
inline bool operator<(const NamedPoint& a, const NamedPoint& b) { return compare(a, b) < 0; }

NamedPoint cut_point(SpacePtr sp, CutPoint p);
NamedPoint product_point(SpacePtr sp, std::vector<CutPoint> coords);
NamedPoint compact_point(SpacePtr sp, CompactPoint p);
NamedPoint cyclic_point(SpacePtr sp, CyclicPoint p);
NamedPoint cylinder_point(SpacePtr sp, CylinderPoint p);
NamedPoint finite_point(SpacePtr sp, int idx);

std::string to_string(const CutPoint& p);
std::string to_string(const CyclicPoint& p);
std::string to_string(const NamedPoint& p);

}  // namespace oscrank
