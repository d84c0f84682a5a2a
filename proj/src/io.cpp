#include "skirent/io.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "skirent/badinterval.hpp"
#include "skirent/ratio.hpp"

namespace skirent {

SolutionFile make_solution_file(const ProblemConfig& config, const SolveResult& result,
                                const std::string& solver) {
    SolutionFile sol;
    sol.config = config;
    sol.f = result.f;
    sol.opt = result.opt;
    sol.world = result.world;
    sol.solver = solver;
    sol.iterations = result.iterations;
    sol.clamp_warnings = result.clamp_warnings;
    return sol;
}

std::string solution_to_json(const SolutionFile& sol) {
    nlohmann::json j;
    j["config"] = {{"a", sol.config.a},         {"gamma", sol.config.gamma},
                   {"delta", sol.config.delta}, {"tau", sol.config.tau},
                   {"epsilon", sol.config.epsilon}, {"x_max", sol.config.x_max}};
    j["grid"] = {{"tau", sol.f.grid.tau}, {"count", sol.f.grid.count}};
    j["masses"] = sol.f.masses;
    j["mass_inf"] = sol.f.mass_inf;
    j["opt"] = sol.opt;
    j["world"] = sol.world == World::World1 ? 1 : 2;
    j["diagnostics"] = {{"solver", sol.solver},
                        {"iterations", sol.iterations},
                        {"clamp_warnings", sol.clamp_warnings}};
    return j.dump(2);
}

SolutionFile solution_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SolutionFile sol;
    const auto& c = j.at("config");
    sol.config.a = c.at("a").get<double>();
    sol.config.gamma = c.at("gamma").get<double>();
    sol.config.delta = c.at("delta").get<double>();
    sol.config.tau = c.at("tau").get<double>();
    sol.config.epsilon = c.at("epsilon").get<double>();
    sol.config.x_max = c.at("x_max").get<double>();
    sol.f.grid.tau = j.at("grid").at("tau").get<double>();
    sol.f.grid.count = j.at("grid").at("count").get<std::size_t>();
    sol.f.masses = j.at("masses").get<std::vector<double>>();
    if (sol.f.masses.size() != sol.f.grid.count) {
        throw ConfigError("solution file: masses length does not match grid count");
    }
    sol.f.mass_inf = j.at("mass_inf").get<double>();
    sol.opt = j.at("opt").get<double>();
    sol.world = j.at("world").get<int>() == 1 ? World::World1 : World::World2;
    const auto& d = j.at("diagnostics");
    sol.solver = d.at("solver").get<std::string>();
    sol.iterations = d.at("iterations").get<std::size_t>();
    sol.clamp_warnings = d.at("clamp_warnings").get<std::size_t>();
    return sol;
}

std::string export_csv(const PurchaseDistribution& f, const ProblemConfig& config) {
    PrefixSums ps(f);
    std::ostringstream os;
    os << std::setprecision(17);
    os << "t,f,cr,badmass\n";
    for (std::size_t k = 1; k <= f.grid.count; ++k) {
        double t = f.grid.time_of(k);
        os << t << "," << f.masses[k - 1] << "," << expected_cr(ps, f.grid, t, config.a) << ","
           << mass_in(ps, f.grid, bad_interval(t, config.a, config.gamma)) << "\n";
    }
    os << "inf," << f.mass_inf << "," << expected_cr(ps, f.grid, kInfinity, config.a) << ","
       << ps.mass_inf() << "\n";
    return os.str();
}

}  // namespace skirent
