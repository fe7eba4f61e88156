#pragma once

// JSON views of the domain types (schema tag "v1").
//
// Every rational is serialized as its exact "p/q" string; nothing is ever
// converted to floating point. Optional fields serialize as null so the
// object shape is identical on every path.

#include <json.hpp>

#include "city.hpp"
#include "dynamics.hpp"
#include "equilibrium.hpp"
#include "payoff.hpp"
#include "rational.hpp"

namespace hotelling {

inline void to_json(nlohmann::json& j, const Rat& r) { j = to_string(r); }

inline void to_json(nlohmann::json& j, const Profile& p) { j = p.positions(); }

inline void to_json(nlohmann::json& j, const UnsortedLocation& loc) { j = loc.positions(); }

inline void to_json(nlohmann::json& j, const PayoffVector& f) { j = f.values(); }

inline void to_json(nlohmann::json& j, const OpenLimit& l) {
    j = nlohmann::json{
        {"lo", l.lo},
        {"hi", l.hi},
        {"approach", l.approach == OpenLimit::Approach::toward_hi ? "toward_hi" : "toward_lo"},
    };
}

inline void to_json(nlohmann::json& j, const DeviationReport& r) {
    j = nlohmann::json{
        {"vendor", r.vendor},
        {"current", r.current},
        {"sup", r.sup},
        {"attained", r.attained},
        {"witness", r.witness ? nlohmann::json(*r.witness) : nlohmann::json(nullptr)},
        {"limit", r.limit ? nlohmann::json(*r.limit) : nlohmann::json(nullptr)},
        {"profitable", r.profitable()},
    };
}

inline void to_json(nlohmann::json& j, const Finding& f) {
    j = nlohmann::json{
        {"code", f.code},
        {"vendor", f.vendor},
        {"detail", f.detail},
        {"deviation_point",
         f.deviation_point ? nlohmann::json(*f.deviation_point) : nlohmann::json(nullptr)},
        {"deviation_payoff",
         f.deviation_payoff ? nlohmann::json(*f.deviation_payoff) : nlohmann::json(nullptr)},
    };
}

inline void to_json(nlohmann::json& j, const Verdict& v) {
    j = nlohmann::json{
        {"holds", v.holds},
        {"findings", v.findings},
        {"reports", v.reports},
    };
}

inline void to_json(nlohmann::json& j, const AgreementRecord& ar) {
    j = nlohmann::json{
        {"definition", ar.definition},
        {"conditions", ar.conditions},
        {"agree", ar.agree},
    };
}

inline void to_json(nlohmann::json& j, const FloorCheck& fc) {
    j = nlohmann::json{
        {"floor_value", fc.floor_value},
        {"min_payoff", fc.min_payoff},
        {"argmin_vendor", fc.argmin_vendor},
        {"holds", fc.holds},
    };
}

inline void to_json(nlohmann::json& j, const DynamicsStep& s) {
    j = nlohmann::json{
        {"vendor", s.vendor},
        {"from", s.from},
        {"to", s.to},
        {"payoff_before", s.payoff_before},
        {"payoff_after", s.payoff_after},
    };
}

inline void to_json(nlohmann::json& j, const DynamicsTrace& tr) {
    j = nlohmann::json{
        {"outcome", to_string(tr.outcome)},
        {"steps", tr.steps},
        {"final", tr.final_state},
        {"cycle_period", tr.cycle_period},
        {"exact_equilibrium", tr.exact_equilibrium},
    };
}

namespace report {

/// Common envelope: {"schema": "v1", "command": <command>}.
inline nlohmann::json envelope(const std::string& command) {
    return nlohmann::json{{"schema", "v1"}, {"command", command}};
}

} // namespace report

} // namespace hotelling
