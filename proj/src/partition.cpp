#include "oscrank/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace oscrank {

namespace {

long long line_atoms(const Partition::LineCuts& lc) {
    return 2 * static_cast<long long>(lc.cuts.size()) + 1;
}

long long line_atom_index(const Partition::LineCuts& lc, const CutPoint& x) {
    // j = number of cuts lying strictly below x (x >= Plus(c))
    auto it = std::partition_point(lc.cuts.begin(), lc.cuts.end(), [&](const Rat& c) {
        return compare(CutPoint::above(c), x) <= 0;
    });
    long long j = it - lc.cuts.begin();
    if (j < static_cast<long long>(lc.cuts.size()) && x.tag == CutPoint::Tag::Rat &&
        x.q == lc.cuts[j])
        return 2 * j + 1;
    return 2 * j;
}

LineInterval line_atom_interval(const Partition::LineCuts& lc, long long idx) {
    long long k = static_cast<long long>(lc.cuts.size());
    if (idx % 2 == 1) {
        const Rat& c = lc.cuts[idx / 2];
        return *make_line_interval(CutPoint::at(c), true, CutPoint::at(c), true);
    }
    long long i = idx / 2;
    CutPoint lo = i == 0 ? CutPoint::minus_inf() : CutPoint::above(lc.cuts[i - 1]);
    CutPoint hi = i == k ? CutPoint::plus_inf() : CutPoint::below(lc.cuts[i]);
    return *make_line_interval(lo, true, hi, true);
}

long long cyclic_atom_index(const Partition::CyclicCutsP& cc, const CyclicPoint& x) {
    long long k = static_cast<long long>(cc.cuts.size());
    auto it = std::partition_point(cc.cuts.begin(), cc.cuts.end(), [&](const Rat& c) {
        return compare(CyclicPoint{CyclicPoint::Tag::Plus, c}, x) <= 0;
    });
    long long j = it - cc.cuts.begin();
    if (j < k && x.tag == CyclicPoint::Tag::Rat && x.q == cc.cuts[j]) return 2 * j;
    if (j == 0) return 2 * k - 1;  // below the first cut: the wrap arc
    return 2 * (j - 1) + 1;
}

std::vector<CycInterval> cyclic_atom_cells(const Partition::CyclicCutsP& cc, long long idx) {
    long long k = static_cast<long long>(cc.cuts.size());
    if (idx % 2 == 0) {
        CyclicPoint p{CyclicPoint::Tag::Rat, cc.cuts[idx / 2]};
        return {*make_cyc_interval(p, true, p, true)};
    }
    long long i = idx / 2;
    const Rat& lo = cc.cuts[i];
    CyclicPoint from{CyclicPoint::Tag::Plus, lo};
    if (i + 1 < k) {
        CyclicPoint to{CyclicPoint::Tag::Minus, cc.cuts[i + 1]};
        return {*make_cyc_interval(from, true, to, true)};
    }
    // wrap arc: up to the top, and around to just below the first cut
    CyclicPoint top{CyclicPoint::Tag::Minus, Rat(0)};
    std::vector<CycInterval> cells = {*make_cyc_interval(from, true, top, true)};
    if (cc.cuts.front() != Rat(0)) {
        CyclicPoint bot{CyclicPoint::Tag::Rat, Rat(0)};
        CyclicPoint to{CyclicPoint::Tag::Minus, cc.cuts.front()};
        cells.push_back(*make_cyc_interval(bot, true, to, true));
    }
    return cells;
}

}  // namespace

long long Partition::num_classes() const {
    return std::visit(
        [&](const auto& v) -> long long {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LineCuts>) return line_atoms(v);
            else if constexpr (std::is_same_v<T, ProductCuts>) {
                long long n = 1;
                for (const auto& f : v.factors) n *= line_atoms(f);
                return n;
            } else if constexpr (std::is_same_v<T, CompactLevel>)
                return static_cast<long long>(v.singled.size()) + 1;
            else if constexpr (std::is_same_v<T, CyclicCutsP>)
                return 2 * static_cast<long long>(v.cuts.size());
            else if constexpr (std::is_same_v<T, CylinderDepth>)
                return 1LL << v.depth;
            else
                return static_cast<long long>(v.classes.size());
        },
        impl);
}

long long Partition::atom_index(const NamedPoint& x) const {
    if (!same_space(space, x.space)) throw std::invalid_argument("atom_index: space mismatch");
    return std::visit(
        [&](const auto& v) -> long long {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LineCuts>) {
                return line_atom_index(v, x.cut());
            } else if constexpr (std::is_same_v<T, ProductCuts>) {
                long long idx = 0;
                const auto& coords = x.coords();
                for (size_t i = 0; i < v.factors.size(); ++i)
                    idx = idx * line_atoms(v.factors[i]) + line_atom_index(v.factors[i], coords[i]);
                return idx;
            } else if constexpr (std::is_same_v<T, CompactLevel>) {
                const auto& p = x.compact();
                if (p.is_limit) return static_cast<long long>(v.singled.size());
                auto it = std::lower_bound(v.singled.begin(), v.singled.end(), p.k);
                if (it != v.singled.end() && *it == p.k) return it - v.singled.begin();
                return static_cast<long long>(v.singled.size());
            } else if constexpr (std::is_same_v<T, CyclicCutsP>) {
                return cyclic_atom_index(v, x.cyclic());
            } else if constexpr (std::is_same_v<T, CylinderDepth>) {
                CylinderPoint p = x.cylinder().normalized();
                long long idx = 0;
                for (int i = 0; i < v.depth; ++i) {
                    char bit = i < static_cast<int>(p.word.size()) ? p.word[i]
                                                                   : (p.tail_one ? '1' : '0');
                    idx = idx * 2 + (bit == '1' ? 1 : 0);
                }
                return idx;
            } else {
                for (size_t i = 0; i < v.classes.size(); ++i)
                    if (v.classes[i].member(x)) return static_cast<long long>(i);
                throw std::logic_error("flat partition does not cover point " + to_string(x));
            }
        },
        impl);
}

SymbolicSet Partition::atom_set(long long idx) const {
    if (idx < 0 || idx >= num_classes()) throw std::out_of_range("atom_set: bad index");
    return std::visit(
        [&](const auto& v) -> SymbolicSet {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, LineCuts>) {
                return SymbolicSet::line(space, {line_atom_interval(v, idx)});
            } else if constexpr (std::is_same_v<T, ProductCuts>) {
                Box b;
                long long rest = idx;
                std::vector<long long> digits(v.factors.size());
                for (int i = static_cast<int>(v.factors.size()) - 1; i >= 0; --i) {
                    long long n = line_atoms(v.factors[i]);
                    digits[i] = rest % n;
                    rest /= n;
                }
                for (size_t i = 0; i < v.factors.size(); ++i)
                    b.push_back(line_atom_interval(v.factors[i], digits[i]));
                return SymbolicSet::product(space, {std::move(b)});
            } else if constexpr (std::is_same_v<T, CompactLevel>) {
                if (idx < static_cast<long long>(v.singled.size()))
                    return SymbolicSet::compact(space, CompactSet{false, {v.singled[idx]}, false});
                return SymbolicSet::compact(space, CompactSet{true, v.singled, true});
            } else if constexpr (std::is_same_v<T, CyclicCutsP>) {
                return SymbolicSet::cyclic(space, cyclic_atom_cells(v, idx));
            } else if constexpr (std::is_same_v<T, CylinderDepth>) {
                std::string w(v.depth, '0');
                for (int i = v.depth - 1; i >= 0; --i)
                    if (idx & (1LL << (v.depth - 1 - i))) w[i] = '1';
                return SymbolicSet::cylinder_words(space, {w});
            } else {
                return v.classes[idx];
            }
        },
        impl);
}

std::vector<SymbolicSet> Partition::classes() const {
    long long n = num_classes();
    if (n > 200000) throw std::length_error("partition too large to materialize");
    std::vector<SymbolicSet> out;
    out.reserve(n);
    for (long long i = 0; i < n; ++i) out.push_back(atom_set(i));
    return out;
}

namespace {
template <typename T>
bool superset(const std::vector<T>& big, const std::vector<T>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}
}  // namespace

bool Partition::refines(const Partition& coarser) const {
    if (!same_space(space, coarser.space)) throw std::invalid_argument("refines: space mismatch");
    if (auto* a = std::get_if<LineCuts>(&impl))
        if (auto* b = std::get_if<LineCuts>(&coarser.impl)) return superset(a->cuts, b->cuts);
    if (auto* a = std::get_if<ProductCuts>(&impl))
        if (auto* b = std::get_if<ProductCuts>(&coarser.impl)) {
            for (size_t i = 0; i < a->factors.size(); ++i)
                if (!superset(a->factors[i].cuts, b->factors[i].cuts)) return false;
            return true;
        }
    if (auto* a = std::get_if<CompactLevel>(&impl))
        if (auto* b = std::get_if<CompactLevel>(&coarser.impl)) return superset(a->singled, b->singled);
    if (auto* a = std::get_if<CyclicCutsP>(&impl))
        if (auto* b = std::get_if<CyclicCutsP>(&coarser.impl)) return superset(a->cuts, b->cuts);
    if (auto* a = std::get_if<CylinderDepth>(&impl))
        if (auto* b = std::get_if<CylinderDepth>(&coarser.impl)) return a->depth >= b->depth;
    // generic fallback
    for (const auto& c : classes()) {
        bool found = false;
        for (const auto& d : coarser.classes())
            if (c.subset_of(d)) { found = true; break; }
        if (!found) return false;
    }
    return true;
}

Partition canonical_partition(SpacePtr sp, int level) {
    if (level < 1) throw std::invalid_argument("canonical_partition: level must be >= 1");
    Partition p;
    p.space = sp;
    switch (sp->kind) {
        case SpaceKind::CutLine: p.impl = Partition::LineCuts{level_cut_values(level)}; break;
        case SpaceKind::Product: {
            Partition::ProductCuts pc;
            pc.factors.assign(sp->arity, Partition::LineCuts{level_cut_values(level)});
            p.impl = std::move(pc);
            break;
        }
        case SpaceKind::Compact: {
            Partition::CompactLevel cl;
            for (long long k = 0; k <= level; ++k) cl.singled.push_back(k);
            p.impl = std::move(cl);
            break;
        }
        case SpaceKind::Cyclic: {
            Partition::CyclicCutsP cc;
            for (const Rat& c : level_cut_values(level))
                if (c >= Rat(0) && c < Rat(1)) cc.cuts.push_back(c);
            p.impl = std::move(cc);
            break;
        }
        case SpaceKind::Cylinder: p.impl = Partition::CylinderDepth{level}; break;
        case SpaceKind::Finite: {
            Partition::Flat f;
            for (size_t i = 0; i < sp->point_names.size(); ++i)
                f.classes.push_back(SymbolicSet::finite(sp, {static_cast<int>(i)}));
            p.impl = std::move(f);
            break;
        }
    }
    return p;
}

Partition trivial_partition(SpacePtr sp) {
    Partition p;
    p.space = sp;
    p.impl = Partition::Flat{{SymbolicSet::whole(sp)}};
    return p;
}

Partition flat_partition(SpacePtr sp, std::vector<SymbolicSet> classes) {
    if (classes.empty()) throw std::invalid_argument("flat_partition: empty class list");
    for (const auto& c : classes)
        if (!same_space(c.space(), sp)) throw std::invalid_argument("flat_partition: space mismatch");
    Partition p;
    p.space = std::move(sp);
    p.impl = Partition::Flat{std::move(classes)};
    return p;
}

bool validate_partition(const Partition& p, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (!std::holds_alternative<Partition::Flat>(p.impl)) {
        if (auto* cy = std::get_if<Partition::CyclicCutsP>(&p.impl))
            if (cy->cuts.empty()) return fail("cyclic partition needs at least one cut");
        return true;  // structural kinds are partitions by construction
    }
    const auto& classes = std::get<Partition::Flat>(p.impl).classes;
    SymbolicSet acc = SymbolicSet::empty(p.space);
    for (size_t i = 0; i < classes.size(); ++i) {
        if (classes[i].is_empty()) return fail("empty class");
        if (!classes[i].is_clopen()) return fail("class not clopen: " + classes[i].str());
        for (size_t j = i + 1; j < classes.size(); ++j)
            if (!classes[i].intersect(classes[j]).is_empty())
                return fail("classes overlap: " + classes[i].str() + " and " + classes[j].str());
        acc = acc.unite(classes[i]);
    }
    if (acc != SymbolicSet::whole(p.space)) return fail("classes do not cover the space");
    return true;
}

}  // namespace oscrank
