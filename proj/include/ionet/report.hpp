#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ionet/classify.hpp"
#include "ionet/liveness.hpp"
#include "ionet/net.hpp"
#include "ionet/slp.hpp"

namespace ionet::report {

using nlohmann::json;

inline json marking(const Net& net, const Marking& m) {
    json j = json::object();
    for (std::size_t p = 0; p < m.size(); ++p) j[net.place(p)] = m[p];
    return j;
}

inline json place_names(const Net& net, const std::vector<std::size_t>& ps) {
    json j = json::array();
    for (auto p : ps) j.push_back(net.place(p));
    return j;
}

inline json transition_names(const Net& net, const std::vector<std::size_t>& ts) {
    json j = json::array();
    for (auto t : ts) j.push_back(net.transition(t));
    return j;
}

inline json net_class(const Net& net, const NetClass& c) {
    json j{{"net", net.name()},
           {"places", net.num_places()},
           {"transitions", net.num_transitions()},
           {"w", c.max_weight},
           {"ordinary", c.ordinary},
           {"conservative", c.conservative},
           {"bimo", c.bimo},
           {"bio", c.bio},
           {"imo", c.imo},
           {"io", c.io},
           {"label", class_label(c)}};
    if (c.bimo) j["table_row"] = row_name(table_row(c));
    return j;
}

inline json bounds(const Bounds& b) { return {{"first", b.first}, {"second", b.second}, {"row", row_name(b.row)}}; }

/// Witness together with its condition verdicts.
inline json witness(const Net& net, const Witness& w, const WitnessReport& r) {
    json j{{"m_wit", marking(net, w.m_wit)},
           {"p_cruc", place_names(net, w.p_cruc)},
           {"t_dead", transition_names(net, w.t_dead)},
           {"conditions", {{"cond1", r.cond1}, {"cond2", r.cond2}, {"cond3", r.cond3}}},
           {"sound", r.sound()}};
    if (w.path) j["path"] = transition_names(net, *w.path);
    if (!r.non_imo.empty()) j["non_imo"] = transition_names(net, r.non_imo);
    if (r.revived) j["revived"] = net.transition(*r.revived);
    return j;
}

inline json capped_path(const Net& net, const std::vector<PathStep>& path) {
    json j = json::array();
    for (const auto& s : path) {
        if (s.kind == PathStep::Kind::Fire)
            j.push_back({{"fire", net.transition(s.index)}});
        else
            j.push_back({{"increment", net.place(s.index)}});
    }
    return j;
}

struct Stats {
    std::size_t configs_explored = 0;
    std::size_t candidates_tested = 0;
    double wall_ms = 0;
};

inline json stats(const Stats& s) {
    return {{"configs_explored", s.configs_explored},
            {"candidates_tested", s.candidates_tested},
            {"wall_ms", s.wall_ms}};
}

inline json verdict(const std::string& v, const Stats& s) { return {{"verdict", v}, {"stats", stats(s)}}; }

}  // namespace ionet::report
