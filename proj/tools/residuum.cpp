// residuum: batch front door for the residue-calculus toolkit.
//
//   residuum <task> --input job.json [--seed N] [--samples N] [--tol X] [--out result.json]
//   residuum selftest
//
// Exit codes: 0 success, 2 mathematical anomaly, 3 resource-budget
// inconclusive, 64 usage or schema error.

#include <cmath>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "residuum/jobio.hpp"

namespace {

using namespace residuum;

int selftest() {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };

    std::vector<std::string> zv = {"z"};
    PolySystem fz(1, {parse_polynomial("z", zv)});
    QuadratureConfig grid;
    grid.scheme = Scheme::TensorGrid;
    grid.samples = 30'000;

    // Cauchy normalization: n = 1, f = z, h = 1 has the closed form R^2/(R^2+tau)
    Complex cal = bm_residue_smoothed(fz, parse_polynomial("1", zv), Weights::trivial(1), 0.1,
                                      grid);
    check("cauchy calibration R^2/(R^2+tau)", std::abs(cal - Complex(1.0 / 1.1)) < 1e-6);

    // closed-form tau integral of the degree representation at tau = 1
    {
        std::vector<std::string> pv = {"x0", "x1"};
        Weights w;
        w.q = {0};
        w.rho = {RhoSpec::affine_power(1)};
        PolySystem qa(1, {parse_polynomial("x0", pv).dehomogenize(1)});
        auto ladder = projective_mass_ladder(qa, w, 1, 0, {1.0}, 1, grid);
        check("degree closed form 1 - log 2",
              std::abs(ladder[0].real() - (1.0 - std::log(2.0))) < 1e-3);
    }

    // duality corpus: colength equals the residue of the Jacobian, exactly
    {
        std::vector<std::string> z2 = {"z1", "z2"};
        struct Case {
            std::vector<std::string> gens;
            std::size_t dim;
        };
        for (const auto& c :
             {Case{{"z1", "z2"}, 1}, Case{{"z1^2", "z2^3"}, 6}, Case{{"z1^2 - z2", "z2^2"}, 4}}) {
            std::vector<Polynomial> ps;
            for (const auto& t : c.gens) ps.push_back(parse_polynomial(t, z2));
            DualityReport rep = duality_check(PolySystem(2, std::move(ps)));
            check("duality " + c.gens[0] + ", " + c.gens[1], rep.agree && rep.dim == c.dim);
        }
    }

    // seeded determinism of the Monte Carlo path
    {
        std::vector<std::string> z2 = {"z1", "z2"};
        PolySystem f(2, {parse_polynomial("z1", z2), parse_polynomial("z2", z2)});
        QuadratureConfig mc;
        mc.scheme = Scheme::MonteCarlo;
        mc.samples = 20'000;
        mc.seed = 7;
        Estimate a = bm_residue(f, parse_polynomial("1", z2), Weights::trivial(2), mc);
        Estimate b = bm_residue(f, parse_polynomial("1", z2), Weights::trivial(2), mc);
        check("monte carlo determinism", a.value == b.value);
    }

    std::cout << (failures == 0 ? "selftest: all calibrations pass\n" : "selftest: FAILURES\n");
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"residuum: Grothendieck residues, weighted residue currents, "
                 "Netto certificates and projective cycle degrees"};
    app.require_subcommand(1);

    std::string input_path, out_path;
    std::uint64_t seed_override = 0;
    bool seed_set = false;
    std::size_t samples_override = 0;
    double tol_override = 0.0;

    const std::vector<std::string> tasks = {"residue-sym", "residue-num", "netto", "degree",
                                            "hefer",       "groebner",    "duality"};
    std::vector<CLI::App*> subs;
    for (const auto& t : tasks) {
        CLI::App* sub = app.add_subcommand(t);
        sub->add_option("--input", input_path, "job JSON file")->required();
        sub->add_option("--out", out_path, "write the result JSON here (default stdout)");
        sub->add_option_function<std::uint64_t>(
            "--seed",
            [&](std::uint64_t s) {
                seed_override = s;
                seed_set = true;
            },
            "override the job seed");
        sub->add_option("--samples", samples_override, "override the sample count");
        sub->add_option("--tol", tol_override, "override the target tolerance");
        subs.push_back(sub);
    }
    CLI::App* self = app.add_subcommand("selftest", "run the calibration suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 64;
    }

    if (self->parsed()) return selftest();

    try {
        std::ifstream in(input_path);
        if (!in) {
            std::cerr << "cannot open " << input_path << "\n";
            return 64;
        }
        residuum::json raw = residuum::json::parse(in);
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            if (subs[i]->parsed()) {
                raw["task"] = tasks[i];
                break;
            }
        }
        if (seed_set) raw["seed"] = seed_override;
        if (samples_override) raw["quad"]["samples"] = samples_override;
        if (tol_override > 0.0) raw["quad"]["tol"] = tol_override;

        residuum::Job job = residuum::parse_job(raw);
        residuum::json result = residuum::run_job(job, raw);

        std::string text = result.dump(2);
        if (out_path.empty()) {
            std::cout << text << "\n";
        } else {
            std::ofstream out(out_path);
            out << text << "\n";
        }
        if (result.contains("verdict") && result["verdict"] == "ANOMALY") return 2;
        return 0;
    } catch (const residuum::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 64;
    } catch (const residuum::ParseError& e) {
        std::cerr << "polynomial syntax error: " << e.what() << "\n";
        return 64;
    } catch (const residuum::ResourceLimitError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return 3;
    } catch (const residuum::VarietyNotPointError& e) {
        std::cerr << "input outside oracle scope: " << e.what() << "\n";
        return 64;
    } catch (const residuum::json::exception& e) {
        std::cerr << "bad job file: " << e.what() << "\n";
        return 64;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 64;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
