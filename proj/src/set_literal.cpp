#include "oscrank/set_literal.hpp"

#include <stdexcept>

namespace oscrank {

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;

    void ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool eat(const std::string& tok) {
        ws();
        if (s.compare(i, tok.size(), tok) == 0) {
            i += tok.size();
            return true;
        }
        return false;
    }
    char peek() {
        ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool done() {
        ws();
        return i >= s.size();
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("bad set literal at offset " + std::to_string(i) + ": " + what);
    }
};

struct ParsedPoint {
    enum class Kind { MinusInf, PlusInf, Value } kind = Kind::Value;
    Rat q;
    int tag = 0;  // -1 lower cut, 0 realized, +1 upper cut
};

ParsedPoint parse_point(Cursor& c) {
    c.ws();
    if (c.eat("-inf")) return {ParsedPoint::Kind::MinusInf, Rat(0), 0};
    if (c.eat("+inf")) return {ParsedPoint::Kind::PlusInf, Rat(0), 0};
    size_t start = c.i;
    if (c.peek() == '-') ++c.i;
    while (c.i < c.s.size() && (isdigit(c.s[c.i]) || c.s[c.i] == '/')) ++c.i;
    if (c.i == start) c.fail("expected a point");
    ParsedPoint p;
    p.q = Rat::parse(c.s.substr(start, c.i - start));
    if (c.i < c.s.size() && (c.s[c.i] == '+' || c.s[c.i] == '-')) {
        p.tag = c.s[c.i] == '+' ? +1 : -1;
        ++c.i;
    }
    return p;
}

CutPoint to_cut(const ParsedPoint& p) {
    switch (p.kind) {
        case ParsedPoint::Kind::MinusInf: return CutPoint::minus_inf();
        case ParsedPoint::Kind::PlusInf: return CutPoint::plus_inf();
        default:
            return p.tag < 0 ? CutPoint::below(p.q)
                 : p.tag > 0 ? CutPoint::above(p.q)
                             : CutPoint::at(p.q);
    }
}

CyclicPoint to_cyclic(const ParsedPoint& p) {
    if (p.kind != ParsedPoint::Kind::Value)
        throw std::invalid_argument("infinities do not exist on the cyclic space");
    if (p.q < Rat(0) || p.q >= Rat(1))
        throw std::invalid_argument("cyclic representatives must lie in [0,1)");
    CyclicPoint::Tag t = p.tag < 0   ? CyclicPoint::Tag::Minus
                         : p.tag > 0 ? CyclicPoint::Tag::Plus
                                     : CyclicPoint::Tag::Rat;
    return CyclicPoint{t, p.q};
}

struct ParsedCell {
    ParsedPoint lo, hi;
    bool lo_inc = true, hi_inc = true;
};

ParsedCell parse_cell(Cursor& c) {
    ParsedCell cell;
    if (c.eat("{")) {
        cell.lo = cell.hi = parse_point(c);
        if (!c.eat("}")) c.fail("expected '}'");
        return cell;
    }
    if (c.eat("[")) cell.lo_inc = true;
    else if (c.eat("(")) cell.lo_inc = false;
    else c.fail("expected '{', '[' or '('");
    cell.lo = parse_point(c);
    if (!c.eat(",")) c.fail("expected ','");
    cell.hi = parse_point(c);
    if (c.eat("]")) cell.hi_inc = true;
    else if (c.eat(")")) cell.hi_inc = false;
    else c.fail("expected ']' or ')'");
    return cell;
}

bool eat_union(Cursor& c) { return c.eat("∪") || c.eat("|"); }
bool eat_times(Cursor& c) { return c.eat("×") || c.eat("x"); }

}  // namespace

SymbolicSet parse_set_literal(const SpacePtr& sp, const std::string& text) {
    Cursor c{text};
    c.ws();
    if (c.eat("{}")) {
        if (!c.done()) c.fail("trailing input after '{}'");
        return SymbolicSet::empty(sp);
    }
    std::vector<std::vector<ParsedCell>> terms;
    do {
        std::vector<ParsedCell> cells;
        do {
            cells.push_back(parse_cell(c));
        } while (eat_times(c));
        terms.push_back(std::move(cells));
    } while (eat_union(c));
    if (!c.done()) c.fail("trailing input");

    switch (sp->kind) {
        case SpaceKind::CutLine: {
            std::vector<LineInterval> iv;
            for (const auto& t : terms) {
                if (t.size() != 1)
                    throw std::invalid_argument("cut-line literals take one cell per term");
                auto i = make_line_interval(to_cut(t[0].lo), t[0].lo_inc, to_cut(t[0].hi),
                                            t[0].hi_inc);
                if (i) iv.push_back(*i);
            }
            return SymbolicSet::line(sp, std::move(iv));
        }
        case SpaceKind::Product: {
            std::vector<Box> boxes;
            for (const auto& t : terms) {
                if (static_cast<int>(t.size()) != sp->arity)
                    throw std::invalid_argument("product literal arity mismatch");
                Box b;
                bool empty = false;
                for (const auto& cell : t) {
                    auto i = make_line_interval(to_cut(cell.lo), cell.lo_inc, to_cut(cell.hi),
                                                cell.hi_inc);
                    if (!i) { empty = true; break; }
                    b.push_back(*i);
                }
                if (!empty) boxes.push_back(std::move(b));
            }
            return SymbolicSet::product(sp, std::move(boxes));
        }
        case SpaceKind::Cyclic: {
            std::vector<CycInterval> iv;
            for (const auto& t : terms) {
                if (t.size() != 1)
                    throw std::invalid_argument("cyclic literals take one cell per term");
                auto i = make_cyc_interval(to_cyclic(t[0].lo), t[0].lo_inc, to_cyclic(t[0].hi),
                                           t[0].hi_inc);
                if (i) iv.push_back(*i);
            }
            return SymbolicSet::cyclic(sp, std::move(iv));
        }
        default:
            throw std::invalid_argument("set literals are supported on cut lines, products and "
                                        "the cyclic space only");
    }
}

}  // namespace oscrank
