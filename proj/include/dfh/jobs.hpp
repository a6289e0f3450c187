#pragma once

// Shared job dispatch used by both the CLI and the python bindings: one
// recognized command plus a parsed JSON input produce a JSON report.

#include <sstream>
#include <string>
#include <vector>

#include "dfh/certify.hpp"
#include "dfh/dseries.hpp"
#include "dfh/json_io.hpp"
#include "dfh/lrs.hpp"

namespace dfh {

struct JobParams {
    long T = -1;
    long num_deg = -1;
    long den_deg = -1;
    long modulus = -1;
    long residue = -1;
    std::string u;  // comma-separated substitution exponents
};

namespace detail {

inline PRecurrence recurrence_from_job(const json& j) {
    if (j.contains("recurrence")) return precurrence_from(j["recurrence"], "recurrence");
    if (!j.contains("system")) throw schema_error("system", "missing");
    return p_recurrence_from_ode(system_from(j["system"], "system"));
}

inline json terms_json(const std::vector<Rat>& terms) {
    json a = json::array();
    for (const auto& t : terms) a.push_back(rat_json(t));
    return a;
}

inline unsigned long require_T(long T) {
    if (T <= 0) throw schema_error("T", "a positive --T is required for this command");
    return static_cast<unsigned long>(T);
}

}  // namespace detail

inline json run_command(const std::string& command, const json& in, const JobParams& p) {
    json rep{{"command", command}};

    if (command == "recur-from-ode") {
        auto rec = p_recurrence_from_ode(system_from(in, "system"));
        rep["recurrence"] = precurrence_json(rec);
    } else if (command == "generate") {
        auto rec = detail::recurrence_from_job(in);
        auto seeds = seeds_from(in.value("seeds", json()), "seeds");
        rep["terms"] = detail::terms_json(generate_terms(rec, seeds, detail::require_T(p.T)));
    } else if (command == "height-profile") {
        auto rec = detail::recurrence_from_job(in);
        auto seeds = seeds_from(in.value("seeds", json()), "seeds");
        auto prof = height_profile(rec, seeds, detail::require_T(p.T));
        rep["verdict"] = prof.verdict == PropertyPVerdict::Holds ? "property-P-holds"
                                                                 : "property-P-violated";
        rep["cumulative"] = prof.cumulative;
        rep["ratio_log"] = prof.ratio_log;
        rep["ratio_linear"] = prof.ratio_linear;
        rep["ratio_nlogn"] = prof.ratio_nlogn;
        rep["increment_bound_ok"] = prof.increment_bound_ok;
        rep["increment_violation_index"] = prof.increment_violation_index;
    } else if (command == "certify-rational") {
        if (!in.contains("system")) throw schema_error("system", "missing");
        auto sys = system_from(in["system"], "system");
        auto seeds = seeds_from(in.value("seeds", json()), "seeds");
        long N = in.value("N", 0L);
        auto r = certify_rational(sys, seeds, N, detail::require_T(p.T));
        rep["verdict"] = r.verdict;
        rep["delta"] = r.delta;
        rep["eta"] = r.eta;
        rep["degree_budget"] = r.degree_budget;
        rep["conditional"] = r.conditional;
        rep["violation_index"] = r.violation_index;
        json wit = json::array();
        if (r.function) {
            wit.push_back(upoly_json(r.function->first));
            wit.push_back(upoly_json(r.function->second));
        }
        rep["witnesses"] = wit;
    } else if (command == "classify-lrs") {
        auto rec = const_recurrence_from(in, "recurrence");
        if (p.modulus > 0)
            rec = arithmetic_progression_section(rec, static_cast<unsigned long>(p.modulus),
                                                 p.residue < 0 ? 0 : p.residue);
        auto cert = all_roots_of_unity(rec);
        json orders = json::array();
        for (const auto& [n, mult] : cert.orders)
            orders.push_back(json{{"order", n}, {"multiplicity", mult}});
        rep["all_roots_of_unity"] = json{{"all", cert.all}, {"orders", orders}};
        if (cert.witness) rep["all_roots_of_unity"]["witness"] = upoly_json(*cert.witness);
        try {
            rep["closed_form"] = closed_form_json(closed_form_cyclotomic(rec));
        } catch (const std::domain_error&) {
            rep["closed_form"] = nullptr;  // roots outside (rational) x (root of unity)
        }
        std::size_t count = p.T > 0 ? static_cast<std::size_t>(p.T) : 4 * rec.order() + 4;
        auto terms = generate_terms(rec, count);
        auto fs = finite_set_check(terms);
        rep["finite_set"] =
            json{{"distinct_count", fs.distinct_count}, {"values", detail::terms_json(fs.values)}};
        auto per = detect_periodicity(terms);
        rep["periodicity"] =
            per ? json{{"preperiod", per->first}, {"period", per->second}} : json(nullptr);
    } else if (command == "denominator-check") {
        if (!in.contains("m") || !in.contains("poly"))
            throw schema_error("poly", "expected {m, poly}");
        unsigned m = in["m"].get<unsigned>();
        auto G = mpoly_cyclo_from(in["poly"], m, "poly");
        auto r = denominator_form_check(G);
        rep["verdict"] = r.is_cyclotomic_form ? "cyclotomic-form" : "not-cyclotomic-form";
        rep["is_cyclotomic_form"] = r.is_cyclotomic_form;
        rep["multiplicity_ok"] = r.multiplicity_ok;
        rep["scalar"] = cyclo_json(r.scalar);
        json fs = json::array();
        for (const auto& f : r.factors)
            fs.push_back(
                json{{"zeta", cyclo_json(f.zeta)}, {"v", f.v}, {"multiplicity", f.multiplicity}});
        rep["factors"] = fs;
        if (r.remainder) rep["remainder"] = mpoly_json(*r.remainder);
    } else if (command == "theorem2-check") {
        if (!in.contains("system")) throw schema_error("system", "missing");
        if (!in.contains("witness")) throw schema_error("witness", "missing");
        auto sys = system_from(in["system"], "system");
        auto w = witness_from(in["witness"], "witness");
        auto r = theorem2_pipeline(w, sys, detail::require_T(p.T));
        rep["beta_identity_ok"] = r.beta_identity_ok;
        rep["classes"] = r.classes;
        json layers = json::array();
        for (const auto& l : r.layers) {
            if (l)
                layers.push_back(
                    json{{"num", upoly_json(l->first)}, {"den", upoly_json(l->second)}});
            else
                layers.push_back(nullptr);
        }
        rep["layers"] = layers;
    } else if (command == "substitute") {
        if (!in.contains("m") || !in.contains("num") || !in.contains("den"))
            throw schema_error("num", "expected {m, num, den}");
        unsigned m = in["m"].get<unsigned>();
        auto num = mpoly_rat_from(in["num"], m, "num");
        auto den = mpoly_rat_from(in["den"], m, "den");
        std::vector<unsigned> u;
        std::stringstream ss(p.u);
        std::string part;
        while (std::getline(ss, part, ',')) {
            try {
                u.push_back(static_cast<unsigned>(std::stoul(part)));
            } catch (const std::exception&) {
                throw schema_error("u", "expected a comma-separated list of nonnegative integers");
            }
        }
        if (u.size() != m) throw schema_error("u", "substitution vector length must equal m");
        auto [un, ud] = substitute_monomials(num, den, u);
        rep["num"] = upoly_json(un);
        rep["den"] = upoly_json(ud);
        rep["den_nonzero"] = nonzero_substitution_check(den, u);
    } else {
        throw schema_error("command", "unknown command " + command);
    }
    return rep;
}

}  // namespace dfh
