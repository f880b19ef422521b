#pragma once

#include <json.hpp>

#include "gq/bs_groupoid.hpp"
#include "gq/convolution.hpp"
#include "gq/groupoid.hpp"
#include "gq/sheu.hpp"

namespace gq {

using nlohmann::json;

// params = {"n":2,"t":0.5,"hbar":0.6931...,"tol":1e-12}
inline json to_json(const Params& p) {
    return json{{"n", p.n}, {"t", p.t}, {"hbar", p.hbar}, {"tol", p.tol}};
}

inline Params params_from_json(const json& j) {
    Params p;
    p.n = j.at("n").get<int>();
    p.t = j.at("t").get<double>();
    p.hbar = j.at("hbar").get<double>();
    p.tol = j.value("tol", 1e-12);
    p.validate();
    return p;
}

// unit = {"coords":[{"b":"lo","m":1},{"b":"at"},{"b":"hi","m":2}]}
inline json to_json(const UnitLeaf& u) {
    json coords = json::array();
    for (const auto& bc : u.coords) {
        switch (bc.branch) {
        case Branch::Below: coords.push_back({{"b", "lo"}, {"m", bc.level}}); break;
        case Branch::At: coords.push_back({{"b", "at"}}); break;
        default: coords.push_back({{"b", "hi"}, {"m", bc.level}});
        }
    }
    return json{{"coords", coords}};
}

inline UnitLeaf unit_from_json(const json& j) {
    UnitLeaf u;
    for (const auto& c : j.at("coords")) {
        const std::string b = c.at("b").get<std::string>();
        if (b == "lo")
            u.coords.push_back(BranchCoord::below(c.at("m").get<std::int64_t>()));
        else if (b == "at")
            u.coords.push_back(BranchCoord::at());
        else if (b == "hi")
            u.coords.push_back(BranchCoord::above(c.at("m").get<std::int64_t>()));
        else
            throw std::invalid_argument("unit_from_json: unknown branch tag '" + b + "'");
    }
    return u;
}

// arrow = {"src":unit,"p":[2,-1]}
inline json to_json(const ArrowLeaf& a) {
    return json{{"src", to_json(a.source)}, {"p", a.shift}};
}

inline ArrowLeaf arrow_from_json(const json& j) {
    ArrowLeaf a;
    a.source = unit_from_json(j.at("src"));
    a.shift = j.at("p").get<std::vector<std::int64_t>>();
    return a;
}

// element = [{"arrow":..., "re":..., "im":...}, ...]
inline json to_json(const AlgebraElement<BsGroupoid>& e) {
    json out = json::array();
    for (const auto& [arrow, v] : e)
        out.push_back({{"arrow", to_json(arrow)}, {"re", v.real()}, {"im", v.imag()}});
    return out;
}

inline AlgebraElement<BsGroupoid> element_from_json(const BsGroupoid& bs, const json& j) {
    AlgebraElement<BsGroupoid> e;
    for (const auto& item : j) {
        ArrowLeaf a = arrow_from_json(item.at("arrow"));
        if (auto err = bs.arrow_error(a); !err.empty())
            throw std::invalid_argument("element_from_json: invalid arrow: " + err);
        e[a] += std::complex<double>(item.at("re").get<double>(), item.value("im", 0.0));
    }
    return e;
}

inline json to_json(const ExtInt& e) {
    if (e.is_infinite()) return json("inf");
    return json(e.finite_value());
}

// T-element = {"j":[...],"k":[int or "inf",...]}
inline json to_json(const SheuTElement& e) {
    json k = json::array();
    for (const auto& v : e.k) k.push_back(to_json(v));
    return json{{"j", e.j}, {"k", k}};
}

inline json to_json(const SheuGElement& e) {
    return json{{"j", e.j}, {"k1", to_json(e.k1)}, {"k2", to_json(e.k2)}};
}

inline json to_json(const SheuFElement& e) {
    json w = json::array();
    for (const auto& v : e.w) w.push_back(to_json(v));
    return json{{"z", e.z}, {"x", e.x}, {"w", w}};
}

inline json to_json(const CheckReport& r) {
    return json{{"name", r.name},
                {"pass", r.pass()},
                {"checks", r.checks},
                {"violations", r.violations},
                {"max_residual", r.max_residual},
                {"witnesses", r.witnesses}};
}

} // namespace gq
