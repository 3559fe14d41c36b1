#include "oscrank/space.hpp"

#include "oscrank/point.hpp"

namespace oscrank {

SpacePtr parse_space(const std::string& spec) {
    auto mk = [&](SpaceKind k, int arity) {
        auto s = std::make_shared<Space>();
        s->kind = k;
        s->arity = arity;
        s->spec = spec;
        return SpacePtr(s);
    };
    if (spec == "cutline") return mk(SpaceKind::CutLine, 1);
    if (spec == "compactification") return mk(SpaceKind::Compact, 1);
    if (spec == "cyclic") return mk(SpaceKind::Cyclic, 1);
    if (spec == "cylinder") return mk(SpaceKind::Cylinder, 1);
    if (spec == "point") return point_space();
    const std::string prefix = "multiorder:";
    if (spec.rfind(prefix, 0) == 0) {
        int n = 0;
        try {
            n = std::stoi(spec.substr(prefix.size()));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad space spec: '" + spec + "'");
        }
        if (n < 1) throw std::invalid_argument("multiorder arity must be >= 1");
        if (n > 8) throw std::invalid_argument("multiorder arity capped at 8");
        return n == 1 ? mk(SpaceKind::CutLine, 1) : mk(SpaceKind::Product, n);
    }
    throw std::invalid_argument("unknown space spec: '" + spec + "'");
}

SpacePtr make_finite_space(std::vector<std::string> names, const std::string& spec) {
    if (names.empty()) throw std::invalid_argument("finite space needs at least one point");
    auto s = std::make_shared<Space>();
    s->kind = SpaceKind::Finite;
    s->point_names = std::move(names);
    s->spec = spec;
    return s;
}

SpacePtr point_space() {
    static SpacePtr p = make_finite_space({"pt"}, "point");
    return p;
}

}  // namespace oscrank
