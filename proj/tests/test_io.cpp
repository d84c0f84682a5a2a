#include <sstream>
#include <string>

#include "doctest.h"

#include "skirent/binsearch.hpp"
#include "skirent/io.hpp"
#include "skirent/lp.hpp"

using namespace skirent;

namespace {

ProblemConfig make_config(double a, double gamma, double delta, double tau) {
    ProblemConfig cfg;
    cfg.a = a;
    cfg.gamma = gamma;
    cfg.delta = delta;
    cfg.tau = tau;
    cfg.epsilon = 1e-6;
    cfg.validate();
    return cfg;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("solution JSON: lossless round trip") {
    ProblemConfig cfg = make_config(0.8, 1.2, 0.05, 0.01);
    SolveResult r = binary_search(cfg);
    SolutionFile sol = make_solution_file(cfg, r, "binsearch");

    std::string text = solution_to_json(sol);
    SolutionFile back = solution_from_json(text);

    CHECK(back.config.a == cfg.a);
    CHECK(back.config.tau == cfg.tau);
    CHECK(back.opt == r.opt);  // exact double round trip
    CHECK(back.world == r.world);
    CHECK(back.solver == "binsearch");
    CHECK(back.f.mass_inf == r.f.mass_inf);
    REQUIRE(back.f.masses.size() == r.f.masses.size());
    for (std::size_t i = 0; i < r.f.masses.size(); ++i) {
        CHECK(back.f.masses[i] == r.f.masses[i]);
    }
    // Serializing the parsed file reproduces the bytes.
    CHECK(solution_to_json(back) == text);

    // Length mismatch between masses and grid count is rejected.
    std::string broken = text;
    std::size_t pos = broken.find("\"count\"");
    REQUIRE(pos != std::string::npos);
    broken.replace(pos, std::string("\"count\"").size(), "\"count\": 7, \"unused\"");
    CHECK_THROWS_AS(solution_from_json(broken), ConfigError);
}

TEST_CASE("export_csv: schema, infinity row, and determinism") {
    ProblemConfig cfg = make_config(0.8, 1.2, 0.05, 0.01);
    SolveResult r = binary_search(cfg);
    std::string csv = export_csv(r.f, cfg);
    std::vector<std::string> lines = split_lines(csv);

    REQUIRE(lines.size() == r.f.grid.count + 2);  // header + grid + infinity
    CHECK(lines[0] == "t,f,cr,badmass");
    CHECK(lines.back().rfind("inf,", 0) == 0);

    // badmass never exceeds delta; cr never exceeds the optimum.
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream is(lines[i]);
        std::string t, fs, crs, bads;
        std::getline(is, t, ',');
        std::getline(is, fs, ',');
        std::getline(is, crs, ',');
        std::getline(is, bads, ',');
        CHECK(std::stod(bads) <= cfg.delta + 1e-9);
        CHECK(std::stod(crs) <= r.opt + 1e-7);
    }

    CHECK(export_csv(r.f, cfg) == csv);  // byte-identical on repeat
}
