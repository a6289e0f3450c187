#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dfh/certify.hpp"
#include "dfh/cyclotomic.hpp"
#include "dfh/dseries.hpp"
#include "dfh/lrs.hpp"
#include "dfh/mpoly.hpp"
#include "dfh/rational.hpp"
#include "dfh/upoly.hpp"

namespace dfh {

using nlohmann::json;

// schema violations carry the first offending field in what()
struct schema_error : std::runtime_error {
    schema_error(const std::string& field, const std::string& why)
        : std::runtime_error(field + ": " + why) {}
};

// ------------------------------ scalars ------------------------------------

inline json rat_json(const Rat& r) { return to_string(r); }

inline Rat rat_from(const json& j, const std::string& field) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (!j.is_string()) throw schema_error(field, "expected a rational as \"p/q\" string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
        throw schema_error(field, e.what());
    }
}

inline json cyclo_json(const Cyclo& c) {
    if (c.is_rational()) return rat_json(c.rational_value());
    json coords = json::array();
    for (const auto& x : c.coords()) coords.push_back(rat_json(x));
    return json{{"order", c.order()}, {"coords", coords}};
}

// accepts either a rational scalar or {"order": N, "coords": [...]}
inline Cyclo cyclo_from(const json& j, const std::string& field) {
    if (j.is_string() || j.is_number_integer()) return Cyclo(rat_from(j, field));
    if (!j.is_object() || !j.contains("order") || !j.contains("coords"))
        throw schema_error(field, "expected a scalar or {order, coords}");
    unsigned long order = j["order"].get<unsigned long>();
    std::vector<Rat> coords;
    for (std::size_t i = 0; i < j["coords"].size(); ++i)
        coords.push_back(rat_from(j["coords"][i], field + ".coords[" + std::to_string(i) + "]"));
    try {
        return Cyclo(order, std::move(coords));
    } catch (const std::exception& e) {
        throw schema_error(field, e.what());
    }
}

// ------------------------- univariate polynomials --------------------------

template <typename K>
json upoly_json(const UPoly<K>& p) {
    json a = json::array();
    for (long i = 0; i <= p.degree(); ++i) {
        if constexpr (std::is_same_v<K, Rat>)
            a.push_back(rat_json(p.coeff(static_cast<std::size_t>(i))));
        else
            a.push_back(cyclo_json(p.coeff(static_cast<std::size_t>(i))));
    }
    return a;
}

inline QPoly qpoly_from(const json& j, const std::string& field) {
    if (!j.is_array()) throw schema_error(field, "expected a coefficient array");
    std::vector<Rat> c;
    for (std::size_t i = 0; i < j.size(); ++i)
        c.push_back(rat_from(j[i], field + "[" + std::to_string(i) + "]"));
    return QPoly(std::move(c));
}

// ------------------------ multivariate polynomials -------------------------

template <typename K>
json mpoly_json(const MPoly<K>& p) {
    json terms = json::array();
    for (const auto& [idx, c] : p.terms()) {
        json e{{"idx", idx}};
        if constexpr (std::is_same_v<K, Rat>)
            e["val"] = rat_json(c);
        else
            e["val"] = cyclo_json(c);
        terms.push_back(std::move(e));
    }
    return terms;
}

inline MPoly<Rat> mpoly_rat_from(const json& j, unsigned m, const std::string& field) {
    if (!j.is_array()) throw schema_error(field, "expected a term array");
    MPoly<Rat> p(m);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& t = j[i];
        std::string f = field + "[" + std::to_string(i) + "]";
        if (!t.is_object() || !t.contains("idx") || !t.contains("val"))
            throw schema_error(f, "expected {idx, val}");
        MultiIndex idx = t["idx"].get<MultiIndex>();
        if (idx.size() != m) throw schema_error(f + ".idx", "index length must equal m");
        p.add_term(idx, rat_from(t["val"], f + ".val"));
    }
    return p;
}

inline MPoly<Cyclo> mpoly_cyclo_from(const json& j, unsigned m, const std::string& field) {
    if (!j.is_array()) throw schema_error(field, "expected a term array");
    MPoly<Cyclo> p(m);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& t = j[i];
        std::string f = field + "[" + std::to_string(i) + "]";
        if (!t.is_object() || !t.contains("idx") || !t.contains("val"))
            throw schema_error(f, "expected {idx, val}");
        MultiIndex idx = t["idx"].get<MultiIndex>();
        if (idx.size() != m) throw schema_error(f + ".idx", "index length must equal m");
        p.add_term(idx, cyclo_from(t["val"], f + ".val"));
    }
    return p;
}

// ------------------------------ series -------------------------------------

template <typename K>
json series_json(const TruncatedSeries<K>& s) {
    return json{{"m", s.m}, {"T", s.T}, {"coeffs", mpoly_json(s.coeffs)}};
}

inline TruncatedSeries<Rat> series_from(const json& j, const std::string& field) {
    if (!j.is_object() || !j.contains("m") || !j.contains("T") || !j.contains("coeffs"))
        throw schema_error(field, "expected {m, T, coeffs}");
    unsigned m = j["m"].get<unsigned>(), T = j["T"].get<unsigned>();
    TruncatedSeries<Rat> s(m, T);
    auto p = mpoly_rat_from(j["coeffs"], m, field + ".coeffs");
    for (const auto& [idx, c] : p.terms()) {
        if (total_degree(idx) > T)
            throw schema_error(field + ".coeffs", "index beyond truncation");
        s.set(idx, c);
    }
    return s;
}

// ------------------------------ systems ------------------------------------

inline json system_json(const DFiniteSystem<Rat>& sys) {
    json eqs = json::array();
    for (const auto& eq : sys.equations) {
        json row = json::array();
        for (const auto& p : eq) row.push_back(mpoly_json(p));
        eqs.push_back(std::move(row));
    }
    return json{{"m", sys.m}, {"equations", eqs}};
}

inline DFiniteSystem<Rat> system_from(const json& j, const std::string& field) {
    if (!j.is_object() || !j.contains("m") || !j.contains("equations"))
        throw schema_error(field, "expected {m, equations}");
    unsigned m = j["m"].get<unsigned>();
    DFiniteSystem<Rat> sys;
    sys.m = m;
    const json& eqs = j["equations"];
    if (!eqs.is_array()) throw schema_error(field + ".equations", "expected an array");
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        std::vector<MPoly<Rat>> row;
        std::string f = field + ".equations[" + std::to_string(i) + "]";
        if (!eqs[i].is_array()) throw schema_error(f, "expected an array of polynomials");
        for (std::size_t k = 0; k < eqs[i].size(); ++k)
            row.push_back(mpoly_rat_from(eqs[i][k], m, f + "[" + std::to_string(k) + "]"));
        sys.equations.push_back(std::move(row));
    }
    try {
        sys.validate();
    } catch (const std::exception& e) {
        throw schema_error(field + ".equations", e.what());
    }
    return sys;
}

// ------------------------- recurrences and seeds ---------------------------

inline json precurrence_json(const PRecurrence& rec) {
    json rs = json::array();
    for (const auto& p : rec.R) rs.push_back(upoly_json(p));
    return json{{"M", rec.M}, {"R", rs}, {"offset", rec.offset}};
}

inline PRecurrence precurrence_from(const json& j, const std::string& field) {
    if (!j.is_object() || !j.contains("M") || !j.contains("R") || !j.contains("offset"))
        throw schema_error(field, "expected {M, R, offset}");
    PRecurrence rec;
    rec.M = j["M"].get<unsigned>();
    rec.offset = j["offset"].get<long>();
    for (std::size_t i = 0; i < j["R"].size(); ++i)
        rec.R.push_back(qpoly_from(j["R"][i], field + ".R[" + std::to_string(i) + "]"));
    try {
        rec.validate();
    } catch (const std::exception& e) {
        throw schema_error(field, e.what());
    }
    return rec;
}

inline json const_recurrence_json(const ConstRecurrence<Rat>& rec) {
    json init = json::array();
    for (const auto& v : rec.initial) init.push_back(rat_json(v));
    return json{{"char_poly", upoly_json(rec.char_poly)}, {"initial", init},
                {"offset", rec.offset}};
}

inline ConstRecurrence<Rat> const_recurrence_from(const json& j, const std::string& field) {
    if (!j.is_object() || !j.contains("char_poly") || !j.contains("initial"))
        throw schema_error(field, "expected {char_poly, initial, offset}");
    ConstRecurrence<Rat> rec;
    rec.char_poly = qpoly_from(j["char_poly"], field + ".char_poly");
    for (std::size_t i = 0; i < j["initial"].size(); ++i)
        rec.initial.push_back(rat_from(j["initial"][i], field + ".initial[" + std::to_string(i) + "]"));
    rec.offset = j.value("offset", 0L);
    try {
        rec.validate();
    } catch (const std::exception& e) {
        throw schema_error(field, e.what());
    }
    return rec;
}

inline std::map<long, Rat> seeds_from(const json& j, const std::string& field) {
    std::map<long, Rat> seeds;
    if (j.is_null()) return seeds;
    if (!j.is_object()) throw schema_error(field, "expected an index -> value object");
    for (const auto& [k, v] : j.items()) {
        long idx;
        try {
            idx = std::stol(k);
        } catch (const std::exception&) {
            throw schema_error(field + "." + k, "seed key must be an integer index");
        }
        seeds[idx] = rat_from(v, field + "." + k);
    }
    return seeds;
}

// ------------------------------ closed forms -------------------------------

inline json closed_form_json(const ClosedForm& cf) {
    json terms = json::array();
    for (const auto& t : cf.terms)
        terms.push_back(json{{"root", cyclo_json(t.root)}, {"poly", upoly_json(t.poly)}});
    return json{{"terms", terms}};
}

// ------------------------------ witnesses ----------------------------------

inline Theorem2Witness witness_from(const json& j, const std::string& field) {
    if (!j.is_object() || !j.contains("d") || !j.contains("k") || !j.contains("alphas") ||
        !j.contains("c"))
        throw schema_error(field, "expected {d, k, alphas, c}");
    Theorem2Witness w;
    w.d = j["d"].get<unsigned>();
    w.k = j["k"].get<unsigned>();
    for (std::size_t i = 0; i < j["alphas"].size(); ++i)
        w.alphas.push_back(cyclo_from(j["alphas"][i], field + ".alphas[" + std::to_string(i) + "]"));
    const json& c = j["c"];
    if (!c.is_array()) throw schema_error(field + ".c", "expected an array of {n, s, t, val}");
    for (std::size_t i = 0; i < c.size(); ++i) {
        const json& e = c[i];
        std::string f = field + ".c[" + std::to_string(i) + "]";
        if (!e.is_object() || !e.contains("n") || !e.contains("s") || !e.contains("t") ||
            !e.contains("val"))
            throw schema_error(f, "expected {n, s, t, val}");
        w.c[{e["n"].get<long>(), e["s"].get<unsigned>(), e["t"].get<unsigned>()}] =
            rat_from(e["val"], f + ".val");
    }
    return w;
}

}  // namespace dfh
