#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "skirent/binsearch.hpp"
#include "skirent/io.hpp"
#include "skirent/lp.hpp"
#include "skirent/ratio.hpp"
#include "skirent/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitSolverError = 3;

struct CommonFlags {
    double a = 0.0, gamma = 0.0, delta = 1.0, tau = 1e-3, epsilon = 1e-6;

    void attach(CLI::App* cmd) {
        cmd->add_option("--a", a, "slope of the second option, in (0,1)")->required();
        cmd->add_option("--gamma", gamma, "ratio threshold of the tail bound")->required();
        cmd->add_option("--delta", delta, "probability budget of the tail bound");
        cmd->add_option("--tau", tau, "grid step");
        cmd->add_option("--epsilon", epsilon, "bisection accuracy");
    }

    skirent::ProblemConfig config() const {
        skirent::ProblemConfig cfg;
        cfg.a = a;
        cfg.gamma = gamma;
        cfg.delta = delta;
        cfg.tau = tau;
        cfg.epsilon = epsilon;
        if (const char* xm = std::getenv("SKIRENT_X_MAX")) {
            cfg.x_max = std::stod(xm);
        }
        cfg.validate();
        return cfg;
    }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw skirent::ConfigError("cannot open output file: " + path);
    out << text;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw skirent::ConfigError("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void print_summary(const skirent::SolveResult& r, const std::string& solver) {
    std::cout << solver << ": opt=" << std::setprecision(12) << r.opt
              << " world=" << (r.world == skirent::World::World1 ? 1 : 2)
              << " iterations=" << r.iterations << " mass_inf=" << r.f.mass_inf << "\n";
}

int cmd_solve(const CommonFlags& flags, const std::string& solver, const std::string& out) {
    skirent::ProblemConfig cfg = flags.config();
    if (solver == "binsearch" || solver == "both") {
        skirent::SolveResult r = skirent::binary_search(cfg);
        print_summary(r, "binsearch");
        if (!out.empty()) {
            std::string path = solver == "both" ? out + ".binsearch.json" : out;
            write_text(path, skirent::solution_to_json(skirent::make_solution_file(cfg, r, "binsearch")));
        }
    }
    if (solver == "lp" || solver == "both") {
        skirent::SolveResult r = skirent::solve_lp(skirent::build_lp(cfg));
        print_summary(r, "lp");
        if (!out.empty()) {
            std::string path = solver == "both" ? out + ".lp.json" : out;
            write_text(path, skirent::solution_to_json(skirent::make_solution_file(cfg, r, "lp")));
        }
    }
    if (solver == "both") {
        skirent::SolverGap gap = skirent::compare_solvers(cfg);
        std::cout << "gap: objective=" << gap.objective_gap
                  << " prefix_sup_norm=" << gap.prefix_sup_norm
                  << " beyond_one_sup_norm=" << gap.beyond_one_sup_norm << "\n";
    }
    return kExitOk;
}

int cmd_export(const CommonFlags& flags, const std::string& solver, const std::string& format,
               const std::string& out) {
    skirent::ProblemConfig cfg = flags.config();
    std::string text;
    if (format == "csv") {
        skirent::SolveResult r = solver == "lp" ? skirent::solve_lp(skirent::build_lp(cfg))
                                                : skirent::binary_search(cfg);
        text = skirent::export_csv(r.f, cfg);
    } else if (format == "lp") {
        text = skirent::to_lp_format(skirent::build_lp(cfg));
    } else {
        throw skirent::ConfigError("unknown export format: " + format);
    }
    if (out.empty()) {
        std::cout << text;
    } else {
        write_text(out, text);
    }
    return kExitOk;
}

int cmd_sweep(const CommonFlags& flags, double from, double to, std::size_t steps,
              const std::string& out) {
    if (steps < 2) throw skirent::ConfigError("sweep needs at least 2 steps");
    std::ostringstream os;
    os << std::setprecision(17) << "delta,opt,world,suffix_mass\n";
    for (std::size_t i = 0; i < steps; ++i) {
        CommonFlags step = flags;
        step.delta = from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
        skirent::ProblemConfig cfg = step.config();
        skirent::SolveResult r = skirent::binary_search(cfg);
        skirent::StructureReport rep = skirent::structure_report(r.f, cfg, r.opt);
        os << step.delta << "," << r.opt << "," << (r.world == skirent::World::World1 ? 1 : 2)
           << "," << rep.suffix_mass << "\n";
    }
    if (out.empty()) {
        std::cout << os.str();
    } else {
        write_text(out, os.str());
    }
    return kExitOk;
}

int cmd_verify(const std::string& solution_path) {
    skirent::SolutionFile sol = skirent::solution_from_json(read_text(solution_path));
    nlohmann::json report;
    bool pass = true;

    double total = sol.f.mass_inf;
    for (double m : sol.f.masses) total += m;
    if (std::abs(total - 1.0) > skirent::kMassTol) {
        report["normalization_error"] = total - 1.0;
        pass = false;
    }
    skirent::Violation feas = skirent::verify_feasibility(sol.f, sol.config);
    skirent::Violation cr = skirent::verify_cr(sol.f, sol.config, sol.opt);
    report["feasibility"] = {{"pass", feas.pass},
                             {"max_excess", feas.max_excess},
                             {"worst_x", feas.worst_x}};
    report["cr"] = {{"pass", cr.pass}, {"max_excess", cr.max_excess}, {"worst_x", cr.worst_x}};
    pass = pass && feas.pass && cr.pass;
    if (pass) {
        skirent::StructureReport rep = skirent::structure_report(sol.f, sol.config, sol.opt);
        report["structure"] = nlohmann::json::parse(rep.to_json());
    }
    report["pass"] = pass;
    std::cout << report.dump(2) << "\n";
    return pass ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal purchase distributions for two-slope ski rental under a tail-risk bound"};
    app.require_subcommand(1);

    CommonFlags solve_flags, export_flags, sweep_flags;
    std::string solver = "binsearch", out, format = "csv", solution_path;
    double sweep_from = 0.01, sweep_to = 0.99;
    std::size_t sweep_steps = 50;

    CLI::App* solve = app.add_subcommand("solve", "solve one configuration");
    solve_flags.attach(solve);
    solve->add_option("--solver", solver, "binsearch | lp | both")
        ->check(CLI::IsMember({"binsearch", "lp", "both"}));
    solve->add_option("--out", out, "output path (suffixed per solver with 'both')");

    CLI::App* exp = app.add_subcommand("export", "export plot data or the LP instance");
    export_flags.attach(exp);
    exp->add_option("--solver", solver, "binsearch | lp")
        ->check(CLI::IsMember({"binsearch", "lp"}));
    exp->add_option("--format", format, "csv | lp")->check(CLI::IsMember({"csv", "lp"}));
    exp->add_option("--out", out, "output path (stdout if omitted)");

    CLI::App* sweep = app.add_subcommand("sweep", "sweep delta and report the phase transition");
    sweep_flags.attach(sweep);
    sweep->get_option("--delta")->description("ignored; the sweep sets delta");
    sweep->add_option("--from", sweep_from, "first delta");
    sweep->add_option("--to", sweep_to, "last delta");
    sweep->add_option("--steps", sweep_steps, "number of sweep points");
    sweep->add_option("--out", out, "output path (stdout if omitted)");

    CLI::App* verify = app.add_subcommand("verify", "check a solution file");
    verify->add_option("--solution", solution_path, "solution JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(solve_flags, solver, out);
        if (exp->parsed()) return cmd_export(export_flags, solver, format, out);
        if (sweep->parsed()) return cmd_sweep(sweep_flags, sweep_from, sweep_to, sweep_steps, out);
        if (verify->parsed()) return cmd_verify(solution_path);
    } catch (const skirent::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const skirent::SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolverError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitOk;
}
