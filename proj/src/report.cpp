#include "oscrank/report.hpp"

namespace oscrank {

nlohmann::json rank_json(const RankValue& r) {
    switch (r.kind) {
        case RankValue::Kind::Finite: return nlohmann::json{{"finite", r.n}};
        case RankValue::Kind::Infinite: return nlohmann::json("infinite");
        default: return nlohmann::json{{"capped", r.n}};
    }
}

std::string termination_str(Termination t) {
    switch (t) {
        case Termination::Empty: return "empty";
        case Termination::FixedPoint: return "fixed-point";
        default: return "cap-reached";
    }
}

nlohmann::json chain_json(const DerivativeChain& chain, bool with_certificates) {
    nlohmann::json j;
    j["termination"] = termination_str(chain.termination);
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& s : chain.stages) stages.push_back(s.str());
    j["stages"] = std::move(stages);
    if (with_certificates) {
        nlohmann::json certs = nlohmann::json::array();
        for (const auto& c : chain.certificates) {
            nlohmann::json jc;
            jc["point"] = to_string(c.point);
            jc["level"] = c.level;
            jc["witnessed"] = c.witnessed;
            if (c.v1) jc["v1"] = to_string(*c.v1);
            if (c.v2) jc["v2"] = to_string(*c.v2);
            certs.push_back(std::move(jc));
        }
        j["witnesses"] = std::move(certs);
    }
    return j;
}

nlohmann::json law_json(const LawResult& r) {
    nlohmann::json j;
    j["law"] = r.law;
    j["cases"] = r.cases;
    j["failures"] = r.failures;
    j["pass"] = r.ok();
    return j;
}

}  // namespace oscrank
