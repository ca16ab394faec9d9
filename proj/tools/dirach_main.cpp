// dirach: command-line front end.  Subcommands:
//   clifford   print a Clifford representation and its relation report
//   norm       evaluate a norm of a stored field
//   hartree    Hartree potential of a stored spinor field
//   propagate  apply the free propagator U(t)
//   evolve     Picard / split-step evolution from a key=value config
//   verify     run the inequality verification suites
//
// Exit codes: 0 success, 1 usage error, 2 numerical failure
// (non-convergence, rejected tuple, corrupt input).

#include <iostream>

#include <CLI11.hpp>

#include "dirach/io.hpp"

using namespace dirach;

namespace {

double unsign_zero(double v) { return v == 0.0 ? 0.0 : v; }

void print_matrix(std::ostream& os, const std::string& name, const Matrix& m) {
    os << name << " =\n";
    for (int r = 0; r < m.rows(); ++r) {
        os << "  ";
        for (int c = 0; c < m.cols(); ++c) {
            const double re = unsign_zero(m(r, c).real());
            const double im = unsign_zero(m(r, c).imag());
            os << "(" << re << (im < 0 ? "" : "+") << im << "i)";
            if (c + 1 < m.cols()) os << " ";
        }
        os << "\n";
    }
}

ordered_json matrix_to_json(const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < m.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < m.cols(); ++c)
            row.push_back({unsign_zero(m(r, c).real()), unsign_zero(m(r, c).imag())});
        rows.push_back(row);
    }
    return rows;
}

int cmd_clifford(int dim, bool json) {
    const CliffordRep rep = build_clifford(dim);
    const RelationReport rel = check_relations(rep);
    if (json) {
        ordered_json j;
        j["d"] = rep.d;
        j["n"] = rep.n;
        j["max_violation"] = rel.max_violation();
        for (int k = 0; k < rep.d; ++k)
            j["alpha"].push_back(matrix_to_json(rep.alphas[k]));
        j["beta"] = matrix_to_json(rep.beta);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "d = " << rep.d << ", spinor components n = " << rep.n
                  << ", max relation violation = " << rel.max_violation() << "\n";
        for (int k = 0; k < rep.d; ++k)
            print_matrix(std::cout, "alpha_" + std::to_string(k + 1), rep.alphas[k]);
        print_matrix(std::cout, "beta", rep.beta);
    }
    return 0;
}

NormSpec parse_norm_spec(const std::string& kind, double p, double q, double s,
                         double window_width, int x_stride, int xi_stride) {
    NormSpec spec;
    if (kind == "mod")
        spec = NormSpec::modulation(p, q, s);
    else if (kind == "fl")
        spec = NormSpec::fourier_lebesgue(p);
    else if (kind == "sobolev")
        spec = NormSpec::sobolev(s, p);
    else if (kind == "lp")
        spec = NormSpec::lebesgue(p);
    else
        throw std::runtime_error("norm: unknown kind '" + kind + "'");
    spec.window_width = window_width;
    spec.x_stride = x_stride;
    spec.xi_stride = xi_stride;
    return spec;
}

int cmd_evolve(const std::string& config_path, const std::string& out_prefix) {
    RunConfig cfg(std::set<std::string>{"gamma", "lambda", "mass", "dim", "N", "L", "T", "nt",
                                        "quad", "tol", "norm.p", "norm.q", "norm.s", "solver",
                                        "input", "width", "l2"});
    cfg.load_file(config_path);

    const int dim = cfg.get_int("dim", 1);
    EvolutionConfig ec;
    ec.hartree.gamma = cfg.get_double("gamma", 0.5);
    ec.hartree.lambda = cfg.get_double("lambda", 1.0);
    ec.hartree.rep = build_clifford(dim);
    ec.mass = cfg.get_double("mass", 1.0);
    ec.T = cfg.get_double("T", 0.1);
    ec.n_t = cfg.get_int("nt", 17);
    ec.picard_tol = cfg.get_double("tol", 1e-10);
    const std::string quad = cfg.get_string("quad", "simpson");
    if (quad == "simpson")
        ec.quad = Quadrature::simpson;
    else if (quad == "trapezoid")
        ec.quad = Quadrature::trapezoid;
    else
        throw std::runtime_error("config: quad must be simpson or trapezoid");
    const NormSpec fallback = default_monitor(dim, ec.hartree.gamma);
    ec.monitor = NormSpec::modulation(cfg.get_double("norm.p", fallback.p),
                                      cfg.get_double("norm.q", fallback.q),
                                      cfg.get_double("norm.s", fallback.s));
    ec.validate();

    SpinorField psi0 = [&] {
        if (cfg.has("input")) return read_field(cfg.get_string("input", ""));
        SpectralGrid grid(dim, cfg.get_int("N", 256), cfg.get_double("L", 16.0));
        FieldDescriptor desc;
        FieldDescriptor::Term term;
        term.width = cfg.get_double("width", 1.0);
        term.weights.assign(ec.hartree.rep.n, cplx(0, 0));
        term.weights[0] = cplx(1, 0);
        desc.terms.push_back(term);
        SpinorField f = sample(desc, grid, ec.hartree.rep.n);
        f *= cplx(cfg.get_double("l2", 0.1) / l2_norm(f), 0);
        return f;
    }();

    const std::string solver = cfg.get_string("solver", "picard");
    if (solver != "picard" && solver != "split" && solver != "both")
        throw std::runtime_error("config: solver must be picard, split or both");

    ordered_json report;
    report["config"] = cfg.echo();
    Trajectory final_traj;
    bool failed = false;

    if (solver == "picard" || solver == "both") {
        auto [traj, conv] = picard_solve(psi0, ec);
        report["picard"]["converged"] = conv.converged;
        report["picard"]["iterations"] = conv.iterations;
        report["picard"]["factors"] = conv.factors;
        report["picard"]["residual"] = conv.residual;
        failed = !conv.converged;
        final_traj = std::move(traj);
    }
    if (solver == "split" || solver == "both") {
        Trajectory traj = split_step_evolve(psi0, ec);
        if (solver == "both") {
            const double diff = l2_norm(traj.fields.back() - final_traj.fields.back()) /
                                l2_norm(final_traj.fields.back());
            report["cross_check"]["rel_l2_at_T"] = diff;
        } else {
            final_traj = std::move(traj);
        }
    }

    blowup_monitor(final_traj, ec.monitor);
    report["monitored_norms"] = final_traj.norms;

    write_text(out_prefix + "_norms.csv", trajectory_norms_csv(final_traj));
    write_field(out_prefix + "_final.bin", final_traj.fields.back());
    report["final_field"] = field_metadata(final_traj.fields.back());
    write_text(out_prefix + "_report.json", report.dump(2) + "\n");
    std::cout << report.dump(2) << "\n";
    return failed ? 2 : 0;
}

int cmd_verify(const std::string& suite, unsigned long long seed, const std::string& profile,
               const std::string& json_path, const std::string& csv_path) {
    VerifyOptions opt;
    opt.seed = seed;
    if (profile == "full")
        opt.full = true;
    else if (profile != "quick")
        throw std::runtime_error("verify: profile must be quick or full");

    const auto reports = run_suite(suite, opt);
    const ordered_json j = reports_to_json(reports, opt, suite);
    if (!json_path.empty()) write_text(json_path, j.dump(2) + "\n");
    if (!csv_path.empty()) write_text(csv_path, reports_to_csv(reports));
    std::cout << j.dump(2) << "\n";
    return j["all_pass"].get<bool>() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral toolkit for the Dirac equation with Hartree nonlinearity"};
    app.require_subcommand(1);

    // clifford
    auto* sc_clifford = app.add_subcommand("clifford", "print a Clifford representation");
    int dim = 3;
    bool clifford_json = false;
    sc_clifford->add_option("--dim", dim, "spatial dimension (1..16)");
    sc_clifford->add_flag("--json", clifford_json, "JSON output");

    // norm
    auto* sc_norm = app.add_subcommand("norm", "evaluate a norm of a stored field");
    std::string norm_input, norm_kind = "mod";
    double norm_p = 2, norm_q = 2, norm_s = 0, norm_width = 1.0;
    int norm_xs = 1, norm_xis = 1;
    sc_norm->add_option("--input", norm_input, "field file")->required();
    sc_norm->add_option("--kind", norm_kind, "mod | fl | sobolev | lp");
    sc_norm->add_option("--p", norm_p);
    sc_norm->add_option("--q", norm_q);
    sc_norm->add_option("--s", norm_s);
    sc_norm->add_option("--window-width", norm_width);
    sc_norm->add_option("--x-stride", norm_xs);
    sc_norm->add_option("--xi-stride", norm_xis);

    // hartree
    auto* sc_hartree = app.add_subcommand("hartree", "Hartree potential of a spinor field");
    std::string hartree_input, hartree_out;
    double hartree_gamma = 0.5, hartree_lambda = 1.0;
    sc_hartree->add_option("--input", hartree_input, "spinor field file")->required();
    sc_hartree->add_option("--out", hartree_out, "output potential field")->required();
    sc_hartree->add_option("--gamma", hartree_gamma);
    sc_hartree->add_option("--lambda", hartree_lambda);

    // propagate
    auto* sc_prop = app.add_subcommand("propagate", "apply the free propagator U(t)");
    std::string prop_input, prop_out;
    double prop_t = 1.0, prop_mass = 1.0;
    sc_prop->add_option("--input", prop_input, "field file")->required();
    sc_prop->add_option("--out", prop_out, "output field")->required();
    sc_prop->add_option("--t", prop_t, "evolution time");
    sc_prop->add_option("--mass", prop_mass, "mass m >= 0");

    // evolve
    auto* sc_evolve = app.add_subcommand("evolve", "nonlinear evolution from a config file");
    std::string evolve_config, evolve_prefix = "run";
    sc_evolve->add_option("--config", evolve_config, "key=value config file")->required();
    sc_evolve->add_option("--out-prefix", evolve_prefix, "output file prefix");

    // verify
    auto* sc_verify = app.add_subcommand("verify", "run the inequality verification suites");
    std::string verify_suite = "all", verify_profile = "quick";
    std::string verify_json, verify_csv;
    unsigned long long verify_seed = 1;
    sc_verify->add_option("--suite", verify_suite,
                          "embedding | product | hls | hlsmod | fixedtime | trilinear | all");
    sc_verify->add_option("--seed", verify_seed);
    sc_verify->add_option("--profile", verify_profile, "quick | full");
    sc_verify->add_option("--json", verify_json, "write JSON report to file");
    sc_verify->add_option("--csv", verify_csv, "write CSV ratio table to file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and friends exit 0; genuine usage errors exit 1.
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (sc_clifford->parsed()) return cmd_clifford(dim, clifford_json);
        if (sc_norm->parsed()) {
            const SpinorField f = read_field(norm_input);
            const NormSpec spec = parse_norm_spec(norm_kind, norm_p, norm_q, norm_s,
                                                  norm_width, norm_xs, norm_xis);
            const NormEvaluator norm(spec);
            ordered_json j;
            j["input"] = norm_input;
            j["kind"] = norm_kind;
            j["p"] = norm_p;
            j["q"] = norm_q;
            j["s"] = norm_s;
            j["value"] = norm(f);
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (sc_hartree->parsed()) {
            const SpinorField psi = read_field(hartree_input);
            HartreeParams params;
            params.gamma = hartree_gamma;
            params.lambda = hartree_lambda;
            params.rep = build_clifford(psi.grid.d);
            const SpinorField v = hartree_potential(psi, psi, params);
            write_field(hartree_out, v);
            std::cout << field_metadata(v).dump(2) << "\n";
            return 0;
        }
        if (sc_prop->parsed()) {
            const SpinorField psi = read_field(prop_input);
            PropagatorParams params{prop_mass, build_clifford(psi.grid.d)};
            const SpinorField out = apply_propagator(psi, prop_t, params);
            write_field(prop_out, out);
            std::cout << field_metadata(out).dump(2) << "\n";
            return 0;
        }
        if (sc_evolve->parsed()) return cmd_evolve(evolve_config, evolve_prefix);
        if (sc_verify->parsed())
            return cmd_verify(verify_suite, verify_seed, verify_profile, verify_json,
                              verify_csv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
