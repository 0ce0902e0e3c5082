// descff command line: evaluate J functions and form factors, run the
// verification suites, and solve reflection maps. Machine-readable JSON out.
//
// exit codes: 0 success, 1 identity failure, 2 usage/parse error,
//             3 numeric non-convergence

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <descff/descff.hpp>
#include <descff/extended.hpp>
#include <descff/json_io.hpp>

using namespace descff;

namespace {

std::vector<Cplx> parse_complex_list(const std::string& text) {
    std::vector<Cplx> out;
    if (text.empty()) return out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        // forms: "1.5", "0.8+0.2i", "0.8-0.2i"
        double re = 0, im = 0;
        size_t used = 0;
        re = std::stod(tok, &used);
        while (used < tok.size() && std::isspace((unsigned char)tok[used])) ++used;
        if (used < tok.size()) {
            if (tok[used] == 'i') {
                im = re;
                re = 0;
            } else {
                size_t u2 = 0;
                im = std::stod(tok.substr(used), &u2);
                used += u2;
                if (used >= tok.size() || tok[used] != 'i')
                    throw domain_error("expected 'i' in complex literal: " + tok);
            }
        }
        out.emplace_back(re, im);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

void emit(const Json& j, const std::string& path) {
    Json out = j;
    out["schema"] = "descff/1";
    if (path.empty()) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::ofstream f(path);
        f << out.dump(2) << "\n";
    }
}

struct CommonOpts {
    double p = 0.3;
    double a = 0.1;
    std::string element = "1";
    int n = -1;
    std::string xlist, thetalist;
    uint64_t seed = 1;
    double tol = 1e-9;
    std::string precision = "double";
    std::string json_out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--p", o.p, "coupling parameter p");
    cmd->add_option("--a", o.a, "operator parameter a");
    cmd->add_option("--element", o.element, "element, e.g. \"c-1^2*c-2 + (0.5+0i)*cbar-3\"");
    cmd->add_option("--n", o.n, "number of random evaluation points");
    cmd->add_option("--x", o.xlist, "comma list of points, e.g. 0.8+0.2i,1.3-0.4i");
    cmd->add_option("--theta", o.thetalist, "comma list of rapidities (full form factor)");
    cmd->add_option("--seed", o.seed, "seed for all random sampling");
    cmd->add_option("--tol", o.tol, "tolerance for verification suites");
    cmd->add_option("--precision", o.precision, "double | extended")
        ->check(CLI::IsMember({"double", "extended"}));
    cmd->add_option("--json-out", o.json_out, "write the JSON report to this path");
}

int cmd_eval(const CommonOpts& o, bool symbolic) {
    ModelParams params;
    params.p = Cplx(o.p, 0);
    // inline syntax, or the JSON term-list form when it starts with '['
    Element g = (!o.element.empty() && o.element.front() == '[')
                    ? element_from_json(Json::parse(o.element))
                    : parse_element(o.element);
    Cplx a(o.a, 0);
    Json j;
    if (!o.thetalist.empty()) {
        QuadratureSpec spec;
        auto thetas = parse_complex_list(o.thetalist);
        Cplx value = assemble_form_factor(g, a, thetas, params, spec);
        j["N"] = thetas.size();
        j["form_factor"] = to_json(value);
        j["element"] = o.element;
        j["a"] = to_json(a);
        j["p"] = to_json(params.p);
    } else {
        std::vector<Cplx> xs;
        if (!o.xlist.empty()) {
            xs = parse_complex_list(o.xlist);
        } else if (o.n >= 0) {
            std::mt19937_64 rng(o.seed);
            xs = sample_annulus(rng, o.n, params);
        }
        if (symbolic) {
            auto res = j_rho(g, xs, params);
            j = to_json(res, a, params, o.element);
        } else if (o.precision == "extended") {
            auto res = j_direct_extended(g, a, xs, params);
            j["N"] = xs.size();
            j["value"] = to_json(res);
            j["element"] = o.element;
            j["a"] = to_json(a);
            j["p"] = to_json(params.p);
            j["precision"] = "extended(50)";
        } else {
            auto res = j_direct(g, a, xs, params);
            j = to_json(res, a, params, o.element);
        }
        Json pts = Json::array();
        for (auto& x : xs) pts.push_back(to_json(x));
        j["points"] = pts;
    }
    emit(j, o.json_out);
    return 0;
}

int cmd_verify(const CommonOpts& o, const std::string& suite) {
    ModelParams params;
    params.p = Cplx(o.p, 0);
    std::mt19937_64 rng(o.seed);
    Json checks = Json::array();
    bool all_pass = true;
    auto record = [&](const std::string& name, double deviation, double tol) {
        bool pass = deviation <= tol;
        all_pass = all_pass && pass;
        checks.push_back(Json{{"check", name}, {"deviation", deviation}, {"tol", tol},
                              {"pass", pass}});
    };
    auto rel = [](Cplx x, Cplx y) {
        return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-30});
    };
    Cplx a(o.a, 0);

    if (suite == "oracle" || suite == "all") {
        for (int n = 0; n <= 6; ++n) {
            auto xs = sample_annulus(rng, n, params);
            record("oracle N=" + std::to_string(n),
                   rel(t_vacuum_expectation(xs, a, params),
                       j_direct(Element::one(), a, xs, params).value),
                   o.tol);
        }
    }
    if (suite == "residues" || suite == "all") {
        for (int n : {4, 6}) {
            auto xs = sample_annulus(rng, n - 1, params);
            Cplx sum(0);
            double scale = 1e-300;
            for (size_t i = 0; i < xs.size(); ++i) {
                std::vector<Cplx> rest;
                for (size_t k = 0; k < xs.size(); ++k)
                    if (k != i) rest.push_back(xs[k]);
                Cplx ri = residue_kinematic(Element::one(), a, rest, xs[i], params);
                sum += ri;
                scale += std::abs(ri);
            }
            record("residue sum rule N=" + std::to_string(n), std::abs(sum) / scale, o.tol);
        }
    }
    if (suite == "reflection" || suite == "all") {
        for (int lvl = 0; lvl <= 3; ++lvl) {
            auto sol = solve_reflection(lvl, a, params, lvl + 4, 4, o.seed);
            record("reflection residual level " + std::to_string(lvl), sol.residual, o.tol);
        }
    }
    if (suite == "eom" || suite == "all") {
        for (int n : {1, 3, 5}) {
            auto xs = sample_annulus(rng, n, params);
            record("eom N=" + std::to_string(n), check_eom(xs, params, o.tol).deviation, o.tol);
        }
    }
    if (suite == "em" || suite == "all") {
        for (int n : {0, 2, 4}) {
            auto xs = sample_annulus(rng, n, params);
            record("em N=" + std::to_string(n),
                   check_em_conservation(xs, params, o.tol).deviation, o.tol);
        }
    }
    if (suite == "kink" || suite == "all") {
        for (int it = 0; it < 10; ++it) {
            std::uniform_real_distribution<double> coef(-1, 1);
            Element h;
            for (auto& lam : enumerate_partitions(3))
                h += Element::monomial(lam, Partition{}, Cplx(coef(rng), coef(rng)));
            auto xs = sample_annulus(rng, 2, params);
            auto zs = sample_annulus(rng, 1, params);
            std::mt19937_64 r2(o.seed + it);
            Cplx x = std::polar(1.1, 0.3 + 0.1 * it);
            record("kink chain #" + std::to_string(it),
                   std::abs(chain_defect(h, xs, zs, x, params)), o.tol);
            auto r = pq_consistency(h, xs, zs, params, o.tol);
            record("PQrel #" + std::to_string(it), r.deviation, o.tol);
        }
    }
    Json j;
    j["suite"] = suite;
    j["seed"] = o.seed;
    j["tol"] = o.tol;
    j["checks"] = checks;
    j["pass"] = all_pass;
    emit(j, o.json_out);
    return all_pass ? 0 : 1;
}

// export the model constants and pair functions as {name, re, im, err_estimate}
int cmd_constants(const CommonOpts& o) {
    ModelParams params;
    params.p = Cplx(o.p, 0);
    QuadratureSpec spec;
    Cplx a(o.a, 0);
    Json list = Json::array();
    auto put = [&](const std::string& name, Cplx v, double err) {
        list.push_back(Json{{"name", name}, {"re", v.real()}, {"im", v.imag()},
                            {"err_estimate", err}});
    };
    double qerr = spec.abs_target;
    put("lambda_prime", lambda_prime(params, spec), qerr);
    put("vev_g", vev_g(a, params, spec), qerr);
    put("reflection_const", reflection_const(a, params), 1e-13);
    if (!o.thetalist.empty()) {
        for (Cplx th : parse_complex_list(o.thetalist)) {
            put("minimal_r", minimal_r(th, params, spec), qerr);
            put("kink_g", kink_g(th, params, spec), qerr);
        }
    }
    Json j;
    j["p"] = to_json(params.p);
    j["a"] = to_json(a);
    j["constants"] = list;
    emit(j, o.json_out);
    return 0;
}

int cmd_reflect(const CommonOpts& o, int level) {
    ModelParams params;
    params.p = Cplx(o.p, 0);
    Cplx a(o.a, 0);
    double dist = degeneracy_distance(a, params.p);
    if (dist < params.degeneracy_margin) {
        std::cerr << "error: a = " << o.a << " lies on the degeneracy lattice "
                  << "a = +-p/2, +-(1+p)/2 (mod 1) (distance " << dist << ")\n";
        return 2;
    }
    auto sol = solve_reflection(level, a, params, level + 4, 4, o.seed);
    emit(to_json(sol), o.json_out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"descff: multi-breather form factors of descendant operators"};
    app.require_subcommand(1);

    CommonOpts oe, ov, orf;
    bool symbolic = false;
    auto* eval = app.add_subcommand("eval", "evaluate a J function or a full form factor");
    add_common(eval, oe);
    eval->add_flag("--symbolic", symbolic, "return the Laurent polynomial in rho");

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "run an identity suite");
    add_common(verify, ov);
    verify->add_option("--suite", suite, "oracle|residues|reflection|eom|em|kink|all")
        ->check(CLI::IsMember({"oracle", "residues", "reflection", "eom", "em", "kink", "all"}));

    int level = 2;
    auto* reflect = app.add_subcommand("reflect", "solve the reflection matrix at a level");
    add_common(reflect, orf);
    reflect->add_option("--level", level, "descendant level");

    CommonOpts oc;
    auto* constants = app.add_subcommand("constants", "export model constants as JSON");
    add_common(constants, oc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) return cmd_eval(oe, symbolic);
        if (verify->parsed()) return cmd_verify(ov, suite);
        if (reflect->parsed()) return cmd_reflect(orf, level);
        if (constants->parsed()) return cmd_constants(oc);
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << " (achieved " << e.achieved << ")\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
