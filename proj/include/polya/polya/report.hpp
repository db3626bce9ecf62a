#pragma once

#include "polya.hpp"

#include <json.hpp>

namespace polya {

using Json = nlohmann::ordered_json;

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
inline Json int_json(const Int& x)
{
    if (x.fits_slong_p())
        return x.get_si();
    return x.get_str();
}

inline Json group_json(const FgAbGroup& g)
{
    Json inv = Json::array();
    for (const auto& d : g.invariants())
        inv.push_back(int_json(d));
    auto o = g.order();
    return Json{{"order", o ? int_json(*o) : Json(nullptr)}, {"invariant_factors", inv}};
}

inline Json report_json(const BrzReport& r)
{
    Json groups = Json::object();
    for (const auto& g : r.groups)
        groups[g.name] = group_json(g.group);
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back(
            Json{{"name", c.name}, {"lhs", int_json(c.lhs)}, {"rhs", int_json(c.rhs)}, {"verdict", verdict_name(c.verdict)}});
    return Json{{"field", r.field}, {"base", r.base}, {"S", r.S}, {"groups", groups}, {"checks", checks}};
}

} // namespace polya
