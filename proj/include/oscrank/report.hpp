#pragma once

#include <json.hpp>

#include "oscrank/engine.hpp"
#include "oscrank/laws.hpp"

namespace oscrank {

inline constexpr const char* kVersion = "0.1.0";

/// {"finite": n} | "infinite" | {"capped": n}
nlohmann::json rank_json(const RankValue& r);

nlohmann::json chain_json(const DerivativeChain& chain, bool with_certificates);

nlohmann::json law_json(const LawResult& r);

std::string termination_str(Termination t);

}  // namespace oscrank
