#pragma once

#include <chrono>
#include <string>

#include <json.hpp>

#include "residuum/bm.hpp"
#include "residuum/hefer.hpp"
#include "residuum/netto.hpp"
#include "residuum/parse.hpp"
#include "residuum/projective.hpp"
#include "residuum/verify.hpp"
#include "residuum/version.hpp"

namespace residuum {

using nlohmann::json;

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Batch job: one task per invocation, fully reproducible from the file.
struct Job {
    std::string task;
    std::vector<std::string> vars;
    std::vector<std::string> polys;
    std::optional<std::string> h;
    Weights weights;
    bool has_weights = false;
    QuadratureConfig quad;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::string mode;  // degree task: hypersurface | cycle | multiplicity
    std::size_t codim = 1;
    std::string order = "grevlex";
    std::size_t budget = kDefaultStepBudget;
};

namespace jobio_detail {

inline mpq_class parse_mpq(const std::string& text) {
    try {
        mpq_class q(text);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw SchemaError("bad rational literal '" + text + "'");
    }
}

inline RhoSpec parse_rho(const json& j) {
    if (j.is_string()) return RhoSpec::constant_of(parse_mpq(j.get<std::string>()));
    if (j.is_number()) return RhoSpec::constant_of(mpq_class(j.get<long>()));
    if (j.is_object()) {
        if (j.contains("constant"))
            return RhoSpec::constant_of(parse_mpq(j["constant"].get<std::string>()));
        if (j.contains("affine_power"))
            return RhoSpec::affine_power(parse_mpq(j["affine_power"].get<std::string>()));
    }
    throw SchemaError("rho entries must be rational strings or {constant|affine_power}");
}

inline json rho_to_json(const RhoSpec& r) {
    if (r.kind == RhoSpec::Kind::Constant) return json{{"constant", r.constant.get_str()}};
    return json{{"affine_power", r.exponent.get_str()}};
}

// FNV-1a over the canonical dump; nlohmann objects iterate in sorted key order
inline std::string input_hash(const json& j) {
    std::string dump = j.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace jobio_detail

inline Job parse_job(const json& j) {
    Job job;
    if (!j.is_object() || !j.contains("task")) throw SchemaError("job must carry a task");
    job.task = j.at("task").get<std::string>();

    if (j.contains("vars"))
        for (const auto& v : j.at("vars")) job.vars.push_back(v.get<std::string>());
    if (j.contains("polys"))
        for (const auto& p : j.at("polys")) job.polys.push_back(p.get<std::string>());
    if (job.vars.empty() || job.polys.empty())
        throw SchemaError("job needs nonempty vars and polys");
    if (j.contains("h")) job.h = j.at("h").get<std::string>();
    if (j.contains("seed")) {
        job.seed = j.at("seed").get<std::uint64_t>();
        job.has_seed = true;
    }
    if (j.contains("mode")) job.mode = j.at("mode").get<std::string>();
    if (j.contains("codim")) job.codim = j.at("codim").get<std::size_t>();
    if (j.contains("budget")) job.budget = j.at("budget").get<std::size_t>();
    if (j.contains("order")) {
        job.order = j.at("order").get<std::string>();
        if (job.order != "grevlex" && job.order != "lex")
            throw SchemaError("order must be grevlex or lex");
    }

    if (j.contains("weights")) {
        const auto& w = j.at("weights");
        if (w.contains("q"))
            for (const auto& q : w.at("q")) job.weights.q.push_back(q.get<unsigned>());
        if (w.contains("rho"))
            for (const auto& r : w.at("rho"))
                job.weights.rho.push_back(jobio_detail::parse_rho(r));
        job.has_weights = true;
    }

    if (j.contains("quad")) {
        const auto& q = j.at("quad");
        if (q.contains("scheme")) {
            std::string s = q.at("scheme").get<std::string>();
            if (s == "tensor-grid")
                job.quad.scheme = Scheme::TensorGrid;
            else if (s == "monte-carlo")
                job.quad.scheme = Scheme::MonteCarlo;
            else
                throw SchemaError("scheme must be tensor-grid or monte-carlo");
        }
        if (q.contains("samples")) job.quad.samples = q.at("samples").get<std::size_t>();
        if (q.contains("radius")) job.quad.radius = q.at("radius").get<double>();
        if (q.contains("tol")) job.quad.target_tolerance = q.at("tol").get<double>();
        if (q.contains("tau_ladder")) {
            job.quad.tau_ladder.clear();
            for (const auto& t : q.at("tau_ladder"))
                job.quad.tau_ladder.push_back(t.get<double>());
        }
        if (q.contains("threads")) job.quad.threads = q.at("threads").get<unsigned>();
    }
    job.quad.seed = job.seed;
    return job;
}

namespace jobio_detail {

inline PolySystem job_system(const Job& job) {
    std::vector<Polynomial> ps;
    for (const auto& text : job.polys) ps.push_back(parse_polynomial(text, job.vars));
    return PolySystem(job.vars.size(), std::move(ps));
}

inline json complex_json(Complex c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

inline json estimate_json(const Estimate& e) {
    json ladder = json::array();
    for (const auto& v : e.ladder_values) ladder.push_back(complex_json(v));
    return json{{"value", complex_json(e.value)},
                {"error_bar", e.error_bar},
                {"converged", e.converged},
                {"ladder", ladder}};
}

inline json membership_json(const MembershipCertificate& cert,
                            const std::vector<std::string>& vars) {
    json cof = json::array();
    for (const auto& c : cert.cofactors) cof.push_back(to_string(c, vars));
    return json{{"target", to_string(cert.target, vars)},
                {"cofactors", cof},
                {"remainder", to_string(cert.remainder, vars)}};
}

inline void require_seed(const Job& job) {
    if (!job.has_seed) throw SchemaError("stochastic tasks require a seed");
}

inline Weights job_weights(const Job& job, std::size_t m) {
    if (!job.has_weights) return Weights::trivial(m);
    Weights w = job.weights;
    w.validate(m);
    return w;
}

} // namespace jobio_detail

/// Dispatch one job and assemble the machine-checkable result. Certificates
/// are re-verified through the expansion-only code path before they are
/// emitted; a failure there is an internal error, never a silent result.
inline json run_job(const Job& job, const json& raw) {
    using namespace jobio_detail;
    auto t0 = std::chrono::steady_clock::now();

    json out;
    out["task"] = job.task;
    out["toolkit_version"] = kToolkitVersion;
    out["input_hash"] = input_hash(raw);

    PolySystem sys = job_system(job);

    if (job.task == "residue-sym") {
        if (!job.h) throw SchemaError("residue-sym requires h");
        Polynomial h = parse_polynomial(*job.h, job.vars);
        TransformationData t = transform_to_monomial(sys);
        GaussianRational value = local_residue(LocalResidueProblem{sys, h}, t);
        json rows = json::array();
        for (std::size_t i = 0; i < t.m.size(); ++i) {
            Polynomial target = Polynomial::variable(sys.nvars, i, t.m[i]);
            if (!verify_cofactor_row(target, t.a[i], sys))
                throw std::logic_error("transformation certificate failed re-verification");
            json row = json::array();
            for (const auto& a : t.a[i]) row.push_back(to_string(a, job.vars));
            rows.push_back(json{{"power", t.m[i]}, {"cofactors", row}});
        }
        out["value"] = value.str();
        out["certificate"] = json{{"monomial_powers", t.m}, {"rows", rows}};
    } else if (job.task == "residue-num") {
        if (!job.h) throw SchemaError("residue-num requires h");
        require_seed(job);
        Polynomial h = parse_polynomial(*job.h, job.vars);
        Weights w = job_weights(job, sys.size());
        Estimate e = bm_residue(sys, h, w, job.quad);
        out["value"] = complex_json(e.value);
        out["error_bar"] = e.error_bar;
        out["diagnostics"] = estimate_json(e);
    } else if (job.task == "netto") {
        NettoReport rep = netto_prove(sys, job.budget);
        if (!verify_membership(rep.membership, sys))
            throw std::logic_error("membership certificate failed re-verification");
        const char* verdict = rep.verdict == NettoVerdict::TheoremVerified
                                  ? "theorem-verified"
                                  : rep.verdict == NettoVerdict::Anomaly
                                        ? "ANOMALY"
                                        : "hypothesis-not-detected";
        out["verdict"] = verdict;
        if (rep.nu) out["nu"] = *rep.nu;
        out["n_bound"] = rep.n_bound;
        out["jacobian"] = to_string(rep.jacobian, job.vars);
        out["certificate"] = membership_json(rep.membership, job.vars);
        json rads = json::array();
        for (const auto& rc : rep.radical_certs) {
            json r{{"generator", rc.j}, {"member", rc.member}};
            if (rc.power) r["power"] = *rc.power;
            rads.push_back(r);
        }
        out["radical_certificates"] = rads;
    } else if (job.task == "duality") {
        DualityReport rep = duality_check(sys);
        out["dim"] = rep.dim;
        out["residue_of_jacobian"] = rep.res_jacobian.str();
        out["agree"] = rep.agree;
    } else if (job.task == "groebner") {
        MonomialOrder order = job.order == "lex" ? MonomialOrder::lex(sys.nvars)
                                                 : MonomialOrder::grevlex(sys.nvars);
        GroebnerBasis gb(sys, order, job.budget);
        if (!verify_groebner_representation(gb))
            throw std::logic_error("basis representation failed re-verification");
        json basis = json::array(), cof = json::array();
        for (std::size_t i = 0; i < gb.size(); ++i) {
            basis.push_back(to_string(gb[i], job.vars));
            json row = json::array();
            for (const auto& c : gb.cofactor_row(i)) row.push_back(to_string(c, job.vars));
            cof.push_back(row);
        }
        out["basis"] = basis;
        out["cofactors"] = cof;
        out["order"] = job.order;
        if (job.h) {
            MembershipCertificate cert =
                gb.normal_form(parse_polynomial(*job.h, job.vars));
            if (!verify_membership(cert, sys))
                throw std::logic_error("membership certificate failed re-verification");
            out["certificate"] = membership_json(cert, job.vars);
        }
        out["diagnostics"] = json{{"basis_size", gb.size()}};
    } else if (job.task == "hefer") {
        HeferMatrix hm = hefer_matrix(sys);
        if (!verify_hefer(sys, hm)) throw std::logic_error("Hefer identity failed");
        std::vector<std::string> both = job.vars;
        for (const auto& v : job.vars) {
            std::string zeta = "zeta_" + v;
            for (const auto& existing : job.vars)
                if (existing == zeta) throw SchemaError("variable name collides with " + zeta);
            both.push_back(zeta);
        }
        json rows = json::array();
        for (const auto& row : hm.entries) {
            json r = json::array();
            for (const auto& g : row) r.push_back(to_string(g, both));
            rows.push_back(r);
        }
        out["matrix"] = rows;
        out["vars"] = both;
    } else if (job.task == "degree") {
        require_seed(job);
        std::string mode = job.mode;
        if (mode.empty()) mode = job.polys.size() == 1 ? "hypersurface" : "cycle";
        if (mode == "multiplicity") {
            Estimate e = point_multiplicity_numeric(sys, job.quad, job.seed);
            out["value"] = complex_json(e.value);
            out["error_bar"] = e.error_bar;
            out["diagnostics"] = estimate_json(e);
        } else {
            DegreeEstimate d;
            if (mode == "hypersurface") {
                if (sys.size() != 1) throw SchemaError("hypersurface mode expects one poly");
                d = hypersurface_degree_numeric(sys[0], job.quad);
            } else if (mode == "cycle") {
                ProjectiveCycleProblem prob{sys, job.codim, job.seed};
                d = cycle_degree_numeric(prob, job.quad);
            } else {
                throw SchemaError("mode must be hypersurface, cycle or multiplicity");
            }
            out["value"] = d.value;
            out["error_bar"] = d.error_bar;
            if (d.snapped) out["snapped"] = *d.snapped;
            json ladder = json::array();
            for (const auto& v : d.ladder_values) ladder.push_back(complex_json(v));
            json diag{{"ladder", ladder}, {"converged", d.converged}, {"chart", d.chart}};
            json wq = json::array(), wr = json::array();
            for (auto q : d.weights_used.q) wq.push_back(q);
            for (const auto& r : d.weights_used.rho) wr.push_back(rho_to_json(r));
            diag["weights"] = json{{"q", wq}, {"rho", wr}};
            if (d.sections_used) {
                json qs = json::array();
                for (const auto& qq : d.sections_used->q.polys)
                    qs.push_back(to_string(qq, job.vars));
                diag["sections"] =
                    json{{"lambda", to_string(d.sections_used->lambda, job.vars)},
                         {"q", qs},
                         {"beta", d.sections_used->beta},
                         {"beta0", d.sections_used->beta0}};
            }
            out["diagnostics"] = diag;
        }
    } else {
        throw SchemaError("unknown task '" + job.task + "'");
    }

    auto t1 = std::chrono::steady_clock::now();
    out["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return out;
}

} // namespace residuum
