#include "oscrank/catalog.hpp"

#include <fstream>
#include <json.hpp>
#include <map>
#include <set>

#include "oscrank/samples.hpp"

namespace oscrank {

std::vector<PiecewiseMap> SystemDescriptor::all_maps() const {
    std::vector<PiecewiseMap> out;
    for (const auto& e : entries) out.push_back(e.map);
    return out;
}

std::vector<PiecewiseMap> SystemDescriptor::claimed_maps() const {
    std::vector<PiecewiseMap> out;
    for (const auto& e : entries)
        if (e.map.claimed_in_ellis()) out.push_back(e.map);
    return out;
}

const CatalogEntry* SystemDescriptor::find(const std::string& name) const {
    for (const auto& e : entries)
        if (e.map.name() == name) return &e;
    return nullptr;
}

namespace {

PLAuto scale2_pl() { return PLAuto({{Rat(0), Rat(0)}, {Rat(1), Rat(2)}}); }

CatalogEntry entry(PiecewiseMap m, std::optional<RankValue> beta, std::string note,
                   std::function<GroupElement(long long)> net = nullptr) {
    return CatalogEntry{std::move(m), std::move(beta), std::move(note), std::move(net)};
}

// shift-limit: every coordinate that is not at the bottom escapes to the top;
// pieces indexed by the set of coordinates pinned at -inf.
PiecewiseMap shift_limit_map(const SpacePtr& sp) {
    int n = sp->kind == SpaceKind::Product ? sp->arity : 1;
    LineInterval minf = *make_line_interval(CutPoint::minus_inf(), true, CutPoint::minus_inf(), true);
    LineInterval rest = *make_line_interval(CutPoint::minus_inf(), false, CutPoint::plus_inf(), true);
    std::vector<Piece> pieces;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<CutPoint> corner;
        Box box;
        for (int i = 0; i < n; ++i) {
            bool at_bottom = mask & (1u << i);
            corner.push_back(at_bottom ? CutPoint::minus_inf() : CutPoint::plus_inf());
            box.push_back(at_bottom ? minf : rest);
        }
        SymbolicSet region = n == 1 ? SymbolicSet::line(sp, {box[0]})
                                    : SymbolicSet::product(sp, {box});
        NamedPoint value = n == 1 ? cut_point(sp, corner[0]) : product_point(sp, corner);
        pieces.push_back(Piece{std::move(region), Constant{std::move(value)}});
    }
    return PiecewiseMap::make(sp, std::move(pieces), "shift-limit", true,
                              "pointwise limit of the diagonal shifts x -> x + i");
}

GroupElement shift_limit_net(const SpacePtr& sp, long long i) {
    PLAuto s = PLAuto::shift(Rat(i));
    if (sp->kind == SpaceKind::CutLine) return pl_element(sp, s);
    return product_element(sp, std::vector<PLAuto>(sp->arity, s));
}

PiecewiseMap stretch_limit_map(const SpacePtr& sp) {
    // identity up to the cut just above 0, everything beyond escapes upward
    SymbolicSet low = line_interval_set(sp, CutPoint::minus_inf(), true, CutPoint::above(Rat(0)), true);
    SymbolicSet high = line_interval_set(sp, CutPoint::above(Rat(0)), false, CutPoint::plus_inf(), true);
    std::vector<Piece> pieces;
    pieces.push_back(Piece{low, ApplyElem{identity_element(sp)}});
    pieces.push_back(Piece{high, Constant{cut_point(sp, CutPoint::plus_inf())}});
    return PiecewiseMap::make(sp, std::move(pieces), "stretch-limit", true,
                              "pointwise limit of maps fixing (-inf,0] and stretching (0,1] by i");
}

GroupElement stretch_limit_net(const SpacePtr& sp, long long i) {
    if (i < 2) return identity_element(sp);
    return pl_element(sp, PLAuto({{Rat(0), Rat(0)}, {Rat(1), Rat(i)}}));
}

PiecewiseMap collapse0_map(const SpacePtr& sp) {
    SymbolicSet zero = SymbolicSet::compact(sp, CompactSet{false, {0}, false});
    SymbolicSet rest = SymbolicSet::compact(sp, CompactSet{true, {0}, true});
    std::vector<Piece> pieces;
    pieces.push_back(Piece{zero, Constant{compact_point(sp, CompactPoint::limit())}});
    pieces.push_back(Piece{rest, ApplyElem{identity_element(sp)}});
    return PiecewiseMap::make(sp, std::move(pieces), "collapse-0", true,
                              "pointwise limit of the transpositions (0 i)");
}

PiecewiseMap cyclic_collapse_map(const SpacePtr& sp) {
    CyclicPoint rat0{CyclicPoint::Tag::Rat, Rat(0)};
    CyclicPoint plus0{CyclicPoint::Tag::Plus, Rat(0)};
    CyclicPoint minus0{CyclicPoint::Tag::Minus, Rat(0)};
    SymbolicSet s_rat = SymbolicSet::point(cyclic_point(sp, rat0));
    SymbolicSet s_plus = SymbolicSet::point(cyclic_point(sp, plus0));
    SymbolicSet bulk = SymbolicSet::cyclic(sp, {*make_cyc_interval(plus0, false, minus0, true)});
    std::vector<Piece> pieces;
    pieces.push_back(Piece{s_rat, Constant{cyclic_point(sp, rat0)}});
    pieces.push_back(Piece{s_plus, Constant{cyclic_point(sp, plus0)}});
    pieces.push_back(Piece{bulk, Constant{cyclic_point(sp, minus0)}});
    return PiecewiseMap::make(sp, std::move(pieces), "cyclic-collapse", true,
                              "pointwise limit of circle maps fixing the wrap point and "
                              "contracting the bulk toward it");
}

GroupElement cyclic_collapse_net(const SpacePtr& sp, long long i) {
    long long m = i + 3;  // breakpoints need room
    Rat inv(1, m);
    CyclicPLAuto g({{Rat(0), Rat(0)},
                    {inv, Rat(1) - Rat(2, m)},
                    {Rat(1) - inv, Rat(1) - inv}});
    return cyclic_element(sp, g);
}

PiecewiseMap tail_map(const SpacePtr& sp) {
    NamedPoint zeros = cylinder_point(sp, CylinderPoint{"", false});
    NamedPoint ones = cylinder_point(sp, CylinderPoint{"", true});
    std::vector<Piece> pieces;
    pieces.push_back(Piece{SymbolicSet::whole(sp), DenseCodense{zeros, ones}});
    return PiecewiseMap::make(sp, std::move(pieces), "tail-map", false,
                              "not claimed: no approximating net inside the trivial group");
}

SystemDescriptor dlo_system() {
    SystemDescriptor sys;
    sys.spec = "dlo";
    sys.space = parse_space("cutline");
    sys.cb_oracle = "realized cuts are isolated; the rest is the perfect kernel";
    GroupElement shift1 = pl_element(sys.space, PLAuto::shift(Rat(1)));
    GroupElement scale2 = pl_element(sys.space, scale2_pl());
    sys.homeos = {shift1, scale2};
    sys.entries.push_back(entry(identity_map(sys.space), RankValue::finite(0), "group element"));
    sys.entries.push_back(entry(map_from_element(shift1, "shift-1"), RankValue::finite(0),
                                "group element"));
    sys.entries.push_back(entry(map_from_element(scale2, "scale-2"), RankValue::finite(0),
                                "group element"));
    sys.entries.push_back(entry(stretch_limit_map(sys.space), RankValue::finite(1),
                                "one oscillation point at the cut above 0",
                                [sp = sys.space](long long i) { return stretch_limit_net(sp, i); }));
    sys.expected_system_beta = RankValue::finite(1);
    return sys;
}

SystemDescriptor multiorder_system(const std::string& spec, int n) {
    SystemDescriptor sys;
    sys.spec = spec;
    sys.space = parse_space(spec);
    sys.cb_oracle = "all-realized tuples are isolated; the rest is the perfect kernel";
    auto mk = [&](const PLAuto& pl) {
        if (sys.space->kind == SpaceKind::CutLine) return pl_element(sys.space, pl);
        return product_element(sys.space, std::vector<PLAuto>(n, pl));
    };
    GroupElement shift1 = mk(PLAuto::shift(Rat(1)));
    GroupElement scale2 = mk(scale2_pl());
    sys.homeos = {shift1, scale2};
    sys.entries.push_back(entry(identity_map(sys.space), RankValue::finite(0), "group element"));
    sys.entries.push_back(entry(map_from_element(shift1, "shift-1"), RankValue::finite(0),
                                "group element"));
    sys.entries.push_back(entry(map_from_element(scale2, "scale-2"), RankValue::finite(0),
                                "group element"));
    sys.entries.push_back(entry(shift_limit_map(sys.space), RankValue::finite(n),
                                "rank counts coordinates pinned at the bottom",
                                [sp = sys.space](long long i) { return shift_limit_net(sp, i); }));
    sys.expected_system_beta = RankValue::finite(n);
    return sys;
}

SystemDescriptor acf_system() {
    SystemDescriptor sys;
    sys.spec = "acf";
    sys.space = parse_space("compactification");
    sys.cb_oracle = "isolated points have rank 0, the limit point rank 1";
    GroupElement swap01 = perm_element(sys.space, FinSuppPerm({{0, 1}}));
    GroupElement cycle012 = perm_element(sys.space, FinSuppPerm({{0, 1, 2}}));
    sys.homeos = {swap01, cycle012};
    sys.entries.push_back(entry(identity_map(sys.space), RankValue::finite(0), "group element"));
    sys.entries.push_back(entry(map_from_element(swap01, "swap-01"), RankValue::finite(0),
                                "group element"));
    sys.entries.push_back(entry(map_from_element(cycle012, "cycle-012"), RankValue::finite(0),
                                "group element"));
    sys.entries.push_back(entry(collapse0_map(sys.space), RankValue::finite(0),
                                "continuous: the moved point is isolated",
                                [sp = sys.space](long long i) {
                                    return perm_element(sp, FinSuppPerm({{0, i + 1}}));
                                }));
    sys.expected_system_beta = RankValue::finite(0);
    return sys;
}

SystemDescriptor cyclic_system() {
    SystemDescriptor sys;
    sys.spec = "cyclic";
    sys.space = parse_space("cyclic");
    sys.cb_oracle = "realized cuts are isolated; the rest is the perfect kernel";
    GroupElement rot12 = cyclic_element(sys.space, CyclicPLAuto::rotation(Rat(1, 2)));
    GroupElement rot13 = cyclic_element(sys.space, CyclicPLAuto::rotation(Rat(1, 3)));
    sys.homeos = {rot12, rot13};
    sys.entries.push_back(entry(identity_map(sys.space), RankValue::finite(0), "group element"));
    sys.entries.push_back(entry(map_from_element(rot12, "rot-1/2"), RankValue::finite(0),
                                "group element"));
    sys.entries.push_back(entry(map_from_element(rot13, "rot-1/3"), RankValue::finite(0),
                                "group element"));
    sys.entries.push_back(entry(cyclic_collapse_map(sys.space), RankValue::finite(1),
                                "one oscillation point at the cut above the wrap",
                                [sp = sys.space](long long i) { return cyclic_collapse_net(sp, i); }));
    sys.expected_system_beta = RankValue::finite(1);
    return sys;
}

SystemDescriptor cylinder_system() {
    SystemDescriptor sys;
    sys.spec = "cylinder";
    sys.space = parse_space("cylinder");
    sys.cb_oracle = "perfect space: every point has infinite rank";
    sys.entries.push_back(entry(identity_map(sys.space), RankValue::finite(0), "group element"));
    sys.entries.push_back(entry(tail_map(sys.space), RankValue::infinite(),
                                "dense/codense fibers: not fragmented"));
    sys.expected_system_beta = RankValue::finite(0);  // over the claimed (trivial) group
    return sys;
}

SystemDescriptor finite_system_from(std::vector<std::string> names,
                                    std::vector<FinitePermutation> gens,
                                    std::vector<std::pair<std::string, std::vector<int>>> tables,
                                    const std::string& spec) {
    SystemDescriptor sys;
    sys.spec = spec;
    sys.space = make_finite_space(std::move(names), spec);
    sys.cb_oracle = "discrete: every point is isolated";
    for (const auto& g : finite_ellis_closure(gens))
        sys.homeos.push_back(finite_perm_element(sys.space, g));
    sys.entries.push_back(entry(identity_map(sys.space), RankValue::finite(0), "group element"));
    for (auto& [name, table] : tables) {
        std::vector<Piece> pieces;
        for (size_t i = 0; i < table.size(); ++i)
            pieces.push_back(Piece{SymbolicSet::finite(sys.space, {static_cast<int>(i)}),
                                   Constant{finite_point(sys.space, table[i])}});
        sys.entries.push_back(entry(
            PiecewiseMap::make(sys.space, std::move(pieces), name, false, "explicit table"),
            RankValue::finite(0), "finite discrete: no oscillation anywhere"));
    }
    sys.expected_system_beta = RankValue::finite(0);
    return sys;
}

}  // namespace

std::vector<FinitePermutation> finite_ellis_closure(const std::vector<FinitePermutation>& gens) {
    std::vector<FinitePermutation> out = {FinitePermutation{}};
    std::set<std::vector<int>> seen;
    size_t n = 0;
    for (const auto& g : gens) n = std::max(n, g.table().size());
    auto key = [&](const FinitePermutation& g) {
        std::vector<int> t(n);
        for (size_t i = 0; i < n; ++i) t[i] = g.apply(static_cast<int>(i));
        return t;
    };
    seen.insert(key(out[0]));
    for (size_t i = 0; i < out.size(); ++i) {
        for (const auto& g : gens) {
            FinitePermutation next = FinitePermutation::compose(g, out[i]);
            if (seen.insert(key(next)).second) out.push_back(next);
        }
    }
    return out;
}

SystemDescriptor builtin_z4_system() {
    FinitePermutation rot({1, 2, 3, 0});
    return finite_system_from({"p0", "p1", "p2", "p3"}, {rot},
                              {{"fold", {0, 0, 2, 2}}}, "finite:z4");
}

SystemDescriptor build_system(const std::string& spec) {
    if (spec == "dlo") return dlo_system();
    if (spec == "acf") return acf_system();
    if (spec == "cyclic") return cyclic_system();
    if (spec == "cylinder") return cylinder_system();
    if (spec.rfind("multiorder:", 0) == 0) {
        int n = std::stoi(spec.substr(11));
        if (n < 1) throw std::invalid_argument("multiorder arity must be >= 1");
        return multiorder_system(spec, n);
    }
    if (spec.rfind("finite:", 0) == 0) return load_finite_system(spec.substr(7));
    throw std::invalid_argument("unknown system spec: '" + spec + "'");
}

SystemDescriptor load_finite_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open finite system file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument("malformed finite system file: " + std::string(e.what()));
    }
    if (!j.is_object()) throw std::invalid_argument("finite system file must hold an object");
    for (const auto& [k, v] : j.items())
        if (k != "points" && k != "generators" && k != "maps")
            throw std::invalid_argument("finite system file: unknown key '" + k + "'");
    if (!j.contains("points") || !j["points"].is_array() || j["points"].empty())
        throw std::invalid_argument("finite system file: 'points' must be a nonempty array");
    std::vector<std::string> names;
    std::map<std::string, int> index;
    for (const auto& p : j["points"]) {
        if (!p.is_string()) throw std::invalid_argument("finite system file: point names are strings");
        std::string s = p.get<std::string>();
        if (index.count(s)) throw std::invalid_argument("finite system file: duplicate point " + s);
        index[s] = static_cast<int>(names.size());
        names.push_back(s);
    }
    std::vector<FinitePermutation> gens;
    if (j.contains("generators")) {
        if (!j["generators"].is_array())
            throw std::invalid_argument("finite system file: 'generators' must be an array");
        for (const auto& gen : j["generators"]) {
            if (!gen.is_array())
                throw std::invalid_argument("finite system file: a generator is a list of cycles");
            std::vector<int> table(names.size());
            for (size_t i = 0; i < table.size(); ++i) table[i] = static_cast<int>(i);
            std::set<int> used;
            for (const auto& cyc : gen) {
                if (!cyc.is_array() || cyc.empty())
                    throw std::invalid_argument("finite system file: a cycle is a nonempty list");
                std::vector<int> c;
                for (const auto& nm : cyc) {
                    auto it = index.find(nm.get<std::string>());
                    if (it == index.end())
                        throw std::invalid_argument("finite system file: unknown point in cycle");
                    if (!used.insert(it->second).second)
                        throw std::invalid_argument("finite system file: cycles overlap");
                    c.push_back(it->second);
                }
                for (size_t i = 0; i < c.size(); ++i) table[c[i]] = c[(i + 1) % c.size()];
            }
            gens.emplace_back(std::move(table));  // constructor rejects non-bijections
        }
    }
    std::vector<std::pair<std::string, std::vector<int>>> tables;
    if (j.contains("maps")) {
        if (!j["maps"].is_object())
            throw std::invalid_argument("finite system file: 'maps' must be an object");
        for (const auto& [name, tbl] : j["maps"].items()) {
            if (!tbl.is_object())
                throw std::invalid_argument("finite system file: map '" + name + "' must be an object");
            std::vector<int> table(names.size(), -1);
            for (const auto& [from, to] : tbl.items()) {
                auto fi = index.find(from);
                auto ti = index.find(to.get<std::string>());
                if (fi == index.end() || ti == index.end())
                    throw std::invalid_argument("finite system file: unknown point in map '" + name + "'");
                table[fi->second] = ti->second;
            }
            for (int v : table)
                if (v < 0)
                    throw std::invalid_argument("finite system file: map '" + name + "' is not total");
            tables.emplace_back(name, std::move(table));
        }
    }
    return finite_system_from(std::move(names), std::move(gens), std::move(tables),
                              "finite:" + path);
}

namespace {

PiecewiseMap parse_plauto_map(const SystemDescriptor& sys, const std::string& body,
                              const std::string& full) {
    // (x,y)(x,y)... with rational entries
    std::vector<std::pair<Rat, Rat>> breaks;
    size_t i = 0;
    while (i < body.size()) {
        if (body[i] != '(') throw std::invalid_argument("bad plauto spec: " + full);
        size_t comma = body.find(',', i);
        size_t close = body.find(')', i);
        if (comma == std::string::npos || close == std::string::npos || comma > close)
            throw std::invalid_argument("bad plauto spec: " + full);
        breaks.emplace_back(Rat::parse(body.substr(i + 1, comma - i - 1)),
                            Rat::parse(body.substr(comma + 1, close - comma - 1)));
        i = close + 1;
    }
    PLAuto pl(std::move(breaks));
    if (sys.space->kind == SpaceKind::CutLine) return map_from_element(pl_element(sys.space, pl), full);
    if (sys.space->kind == SpaceKind::Product)
        return map_from_element(
            product_element(sys.space, std::vector<PLAuto>(sys.space->arity, pl)), full);
    throw std::invalid_argument("plauto maps need an ordered space");
}

PiecewiseMap parse_perm_map(const SystemDescriptor& sys, const std::string& body,
                            const std::string& full) {
    if (sys.space->kind != SpaceKind::Compact)
        throw std::invalid_argument("perm maps live on the compactification");
    std::vector<std::vector<long long>> cycles;
    size_t i = 0;
    while (i < body.size()) {
        if (body[i] != '(') throw std::invalid_argument("bad perm spec: " + full);
        size_t close = body.find(')', i);
        if (close == std::string::npos) throw std::invalid_argument("bad perm spec: " + full);
        std::vector<long long> cyc;
        std::string inner = body.substr(i + 1, close - i - 1);
        size_t pos = 0;
        while (pos < inner.size()) {
            size_t sp = inner.find(' ', pos);
            std::string tok = inner.substr(pos, sp == std::string::npos ? sp : sp - pos);
            if (!tok.empty()) cyc.push_back(std::stoll(tok));
            if (sp == std::string::npos) break;
            pos = sp + 1;
        }
        cycles.push_back(std::move(cyc));
        i = close + 1;
    }
    return map_from_element(perm_element(sys.space, FinSuppPerm(cycles)), full);
}

}  // namespace

PiecewiseMap parse_map(const SystemDescriptor& sys, const std::string& name) {
    if (const CatalogEntry* e = sys.find(name)) return e->map;
    if (name.rfind("plauto:", 0) == 0) return parse_plauto_map(sys, name.substr(7), name);
    if (name.rfind("perm:", 0) == 0) return parse_perm_map(sys, name.substr(5), name);
    throw std::invalid_argument("unknown map '" + name + "' for system " + sys.spec);
}

std::vector<std::string> default_grid_specs(bool full) {
    if (full)
        return {"acf", "dlo", "cyclic", "multiorder:1", "multiorder:2", "multiorder:3", "cylinder"};
    return {"acf", "dlo", "cyclic", "multiorder:2"};
}

bool verify_net_limit(const CatalogEntry& entry, int max_level, int height, long long steps,
                      std::string* why) {
    if (!entry.net) return true;  // group elements need no net check
    const PiecewiseMap& f = entry.map;
    const auto& samples = named_samples(f.space(), height);
    for (int level = 1; level <= max_level; ++level) {
        Partition p = canonical_partition(f.space(), level);
        for (const auto& x : samples) {
            long long target = p.atom_index(f.apply(x));
            for (long long i = steps / 2; i <= steps; ++i) {
                long long got = p.atom_index(entry.net(i).apply(x));
                if (got != target) {
                    if (why)
                        *why = "net for " + f.name() + " strays at " + to_string(x) + ", level " +
                               std::to_string(level) + ", stage " + std::to_string(i);
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace oscrank
