#pragma once
// io.hpp -- JSON schemas for towers, groups, and codes, plus report builders
// used by the command-line tool.
//
// ring.json   {"p":3, "e":2, "d":1, "h":[1,1,1],
//              "eisenstein1":{"g1":[...],"t1":1} | null,
//              "galois":{"f":[8,4,1]} | null,
//              "eisenstein2":{"g":[-3,0,1],"t":1} | null}
//   Polynomial coefficient lists are little-endian (constant term first) and
//   entries are reduced mod p^e.  A coefficient over an extension level may
//   be a plain integer (meaning that multiple of 1) or a full coordinate
//   list.  A monic degree-1 "h" or "f" describes a trivial layer and is
//   normalized away.  "d" is optional and cross-checked against deg h.
//
// group.json  {"kind":"cyclic"|"product"|"symmetric"|"table",
//              "n":8, "orders":[8,4], "table":[[...]]}
//   "n" names the order for cyclic and the degree for symmetric; "orders"
//   lists cyclic factor orders for product; "table" is a full Cayley table.
//
// code.json   {"ring":"ring.json", "group":"group.json",
//              "generators":[[coeff, ...], ...], "closure":"left"}
//   Each generator lists one coefficient per group element, in table order.
//   "ring"/"group" are file references resolved by the caller; command-line
//   flags take precedence over them.

#include <fstream>
#include <set>

#include <json.hpp>

#include "crt.hpp"

namespace chainring {

using json = nlohmann::ordered_json;

struct InvalidJson : error {
    explicit InvalidJson(const std::string& msg) : error("InvalidJson", msg) {}
};

inline json json_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidJson("cannot open " + path);
    try {
        return json::parse(in);  // parse_error diagnostics carry positions
    } catch (const json::parse_error& e) {
        throw InvalidJson(path + ": " + e.what());
    }
}

namespace detail {

inline void io_keys(const json& j, const std::set<std::string>& allowed, const std::string& what) {
    if (!j.is_object()) throw InvalidJson(what + " must be a JSON object");
    for (const auto& kv : j.items())
        if (!allowed.count(kv.key())) throw InvalidJson(what + ": unknown key \"" + kv.key() + "\"");
}

inline i64 io_int(const json& j, const std::string& what) {
    if (!j.is_number_integer()) throw InvalidJson(what + " must be an integer");
    return j.get<i64>();
}

inline std::vector<i64> io_ints(const json& j, const std::string& what) {
    if (!j.is_array()) throw InvalidJson(what + " must be an array of integers");
    std::vector<i64> out;
    for (const auto& v : j) out.push_back(io_int(v, what + " entry"));
    return out;
}

// one coefficient over a level with `width` coordinate slots
inline Vec io_coeff(const json& j, int width, const std::string& what) {
    Vec v((size_t)width, 0);
    if (j.is_number_integer()) {
        // an integer multiple of 1; every tower level stores 1 in slot 0
        // (validated once per tower below)
        v[0] = j.get<i64>();
        return v;
    }
    if (!j.is_array()) throw InvalidJson(what + " must be an integer or a coordinate list");
    if ((int)j.size() > width)
        throw InvalidJson(what + " has " + std::to_string(j.size()) + " coordinates, level has " +
                          std::to_string(width));
    for (size_t i = 0; i < j.size(); ++i) v[i] = io_int(j[i], what + " coordinate");
    return v;
}

inline std::vector<Vec> io_coeffs(const json& j, int width, const std::string& what) {
    if (!j.is_array()) throw InvalidJson(what + " must be an array of coefficients");
    std::vector<Vec> out;
    for (size_t i = 0; i < j.size(); ++i)
        out.push_back(io_coeff(j[i], width, what + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace detail

inline TowerSpec towerspec_from_json(const json& j) {
    detail::io_keys(j, {"p", "e", "d", "h", "eisenstein1", "galois", "eisenstein2"}, "ring spec");
    TowerSpec ts;
    if (!j.contains("p") || !j.contains("e")) throw InvalidJson("ring spec needs \"p\" and \"e\"");
    ts.p = detail::io_int(j["p"], "p");
    ts.e = (int)detail::io_int(j["e"], "e");
    if (ts.p < 2 || ts.e < 1) throw InvalidJson("need p >= 2 and e >= 1");
    const i64 pe = ipow(ts.p, ts.e);

    int d = 1;
    if (j.contains("h") && !j["h"].is_null()) {
        std::vector<i64> h = detail::io_ints(j["h"], "h");
        if (h.size() < 2) throw InvalidJson("h must have degree >= 1");
        if (h.size() == 2) {
            // any monic degree-1 polynomial describes the trivial layer
            if (pmod(h[1], pe) != 1) throw InvalidJson("degree-1 h must be monic");
        } else {
            ts.h = h;
            d = (int)h.size() - 1;
        }
    }
    if (j.contains("d") && !j["d"].is_null() && detail::io_int(j["d"], "d") != d)
        throw InvalidJson("d = " + std::to_string(detail::io_int(j["d"], "d")) +
                          " does not match deg h = " + std::to_string(d));

    int k1 = 1;
    if (j.contains("eisenstein1") && !j["eisenstein1"].is_null()) {
        const json& e1 = j["eisenstein1"];
        detail::io_keys(e1, {"g1", "t1"}, "eisenstein1");
        if (!e1.contains("g1")) throw InvalidJson("eisenstein1 needs \"g1\"");
        ts.g1 = detail::io_coeffs(e1["g1"], d, "g1");
        if (ts.g1.size() < 3) throw InvalidJson("g1 must have degree >= 2");
        k1 = (int)ts.g1.size() - 1;
        ts.t1 = e1.contains("t1") ? (int)detail::io_int(e1["t1"], "t1") : 1;
    }

    int ell = 1;
    if (j.contains("galois") && !j["galois"].is_null()) {
        const json& ga = j["galois"];
        detail::io_keys(ga, {"f"}, "galois");
        if (!ga.contains("f")) throw InvalidJson("galois needs \"f\"");
        std::vector<Vec> f = detail::io_coeffs(ga["f"], d * k1, "f");
        if (f.size() < 2) throw InvalidJson("f must have degree >= 1");
        if (f.size() == 2) {
            Vec lead = f[1];
            if (pmod(lead[0], pe) != 1) throw InvalidJson("degree-1 f must be monic");
        } else {
            ts.f = f;
            ell = (int)f.size() - 1;
        }
    }

    if (j.contains("eisenstein2") && !j["eisenstein2"].is_null()) {
        const json& e2 = j["eisenstein2"];
        detail::io_keys(e2, {"g", "t"}, "eisenstein2");
        if (!e2.contains("g")) throw InvalidJson("eisenstein2 needs \"g\"");
        ts.g2 = detail::io_coeffs(e2["g"], d * k1 * ell, "g");
        if (ts.g2.size() < 3) throw InvalidJson("g must have degree >= 2");
        ts.t2 = e2.contains("t") ? (int)detail::io_int(e2["t"], "t") : 1;
    }
    return ts;
}

inline Tower tower_from_json(const json& j) {
    Tower tw = tower_build(towerspec_from_json(j));
    // the integer-shorthand rule above assumed 1 sits in slot 0 at every level
    for (const RingPtr& L : {tw.gr, tw.r, tw.ralpha, tw.s}) {
        Vec unit((size_t)L->n, 0);
        unit[0] = 1;
        if (L->one != unit) throw error("Internal", L->name + " does not store 1 in slot 0");
    }
    return tw;
}

inline json elem_json(const Elem& x) { return json(x.c); }

inline json gr_json(const GrElem& x) {
    json out = json::array();
    for (const Elem& c : x.a) out.push_back(elem_json(c));
    return out;
}

// |X| = p^exp as a JSON value: a number when it fits, else "p^exp"
inline json size_json(i64 p, int exp) {
    i64 v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > (i64)4e18 / p) return std::string(std::to_string(p) + "^" + std::to_string(exp));
        v *= p;
    }
    return v;
}

inline json ring_info_json(const Tower& tw) {
    const i64 p = tw.zpe->p;
    std::set<const Ring*> levels{tw.zpe.get(), tw.gr.get(), tw.r.get(), tw.ralpha.get(),
                                 tw.s.get()};
    int size_exp = 0;
    for (i64 m : tw.s->mod)
        for (i64 v = m; v > 1; v /= p) ++size_exp;

    json out;
    out["ring"] = tw.s->name;
    out["p"] = p;
    out["e"] = tw.zpe->e;
    out["d"] = tw.d;
    out["k"] = tw.k2;
    out["t"] = tw.t2;
    out["s1"] = tw.s1;
    out["s2"] = tw.s2;
    out["q"] = ipow(p, tw.d);
    out["levels"] = (i64)levels.size();
    out["ell"] = tw.ell;
    out["k1"] = tw.k1;
    out["t1"] = tw.t1;
    // the compact invariant tuple (p, e, ell, k, t) of the top extension
    out["invariants"] = json::array({p, (i64)tw.zpe->e, (i64)tw.ell, (i64)tw.k2, (i64)tw.t2});
    out["moduli"] = json(tw.s->mod);
    out["size_exp"] = size_exp;
    out["size"] = size_json(p, size_exp);
    return out;
}

inline GroupPtr group_from_json(const json& j) {
    detail::io_keys(j, {"kind", "n", "orders", "table"}, "group spec");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw InvalidJson("group spec needs a string \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "cyclic") {
        if (!j.contains("n")) throw InvalidJson("cyclic group needs \"n\"");
        return group_cyclic((int)detail::io_int(j["n"], "n"));
    }
    if (kind == "product") {
        if (!j.contains("orders")) throw InvalidJson("product group needs \"orders\"");
        std::vector<int> orders;
        for (i64 v : detail::io_ints(j["orders"], "orders")) orders.push_back((int)v);
        return group_product(orders);
    }
    if (kind == "symmetric") {
        if (!j.contains("n")) throw InvalidJson("symmetric group needs \"n\" (the degree)");
        return group_symmetric((int)detail::io_int(j["n"], "n"));
    }
    if (kind == "table") {
        if (!j.contains("table") || !j["table"].is_array())
            throw InvalidJson("table group needs \"table\"");
        std::vector<std::vector<int>> mul;
        for (const auto& row : j["table"]) {
            mul.emplace_back();
            for (i64 v : detail::io_ints(row, "table row")) mul.back().push_back((int)v);
        }
        return group_from_table(mul);
    }
    throw InvalidJson("unknown group kind \"" + kind + "\"");
}

inline json group_info_json(const Group& G) {
    json out;
    out["group"] = G.name;
    out["n"] = G.n;
    out["abelian"] = G.abelian;
    out["orders"] = json(G.orders);
    json eo = json::array();
    for (int g = 0; g < G.n; ++g) eo.push_back(group_elem_order(G, g));
    out["element_orders"] = eo;
    return out;
}

inline AdditiveCode code_from_json(const json& j, const Tower& tw, const Group& G) {
    detail::io_keys(j, {"ring", "group", "generators", "closure"}, "code spec");
    Closure cl = Closure::left;
    if (j.contains("closure")) {
        const std::string c = j["closure"].is_string() ? j["closure"].get<std::string>() : "";
        if (c == "left")
            cl = Closure::left;
        else if (c == "right")
            cl = Closure::right;
        else if (c == "two_sided")
            cl = Closure::two_sided;
        else
            throw InvalidJson("closure must be \"left\", \"right\" or \"two_sided\"");
    }
    if (!j.contains("generators") || !j["generators"].is_array())
        throw InvalidJson("code spec needs a \"generators\" array");
    std::vector<GrElem> gens;
    for (size_t i = 0; i < j["generators"].size(); ++i) {
        const json& gj = j["generators"][i];
        const std::string what = "generator " + std::to_string(i);
        if (!gj.is_array() || (int)gj.size() != G.n)
            throw InvalidJson(what + " must list exactly " + std::to_string(G.n) +
                              " coefficients (one per group element)");
        GrElem x = gr_zero(*tw.s, G);
        for (int g = 0; g < G.n; ++g)
            x.a[(size_t)g] = elem_reduce(*tw.s, detail::io_coeff(gj[(size_t)g], tw.s->n, what));
        gens.push_back(std::move(x));
    }
    if (gens.empty()) gens.push_back(gr_zero(*tw.s, G));
    return code_from_generators(tw, G, gens, cl);
}

inline json code_report_json(const AdditiveCode& C) {
    json out;
    out["size_exp"] = C.size_exp;
    out["size"] = size_json(C.tw->s->p, C.size_exp);
    out["left_closed"] = C.left_closed;
    out["right_closed"] = C.right_closed;
    out["module_type"] = json(module_type(C));
    out["weakly_free"] = is_weakly_free(C);
    json gens = json::array();
    for (const Vec& row : lat_natural_rows(C.lat))
        gens.push_back(gr_json(gr_unflatten(*C.tw->s, *C.G, row)));
    out["generators"] = gens;
    return out;
}

}  // namespace chainring
