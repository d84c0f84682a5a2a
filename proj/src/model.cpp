#include "skirent/model.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace skirent {

RegimeBoundaries boundaries(double a, double gamma) {
    if (!(a > 0.0 && a < 1.0)) {
        throw ConfigError("boundaries: slope a must lie in (0,1), got " + std::to_string(a));
    }
    if (!(gamma >= 2.0 - a && gamma < 1.0 / a)) {
        std::ostringstream os;
        os << "boundaries: gamma=" << gamma << " outside solver regime [" << (2.0 - a) << ", "
           << (1.0 / a) << ")";
        throw ConfigError(os.str());
    }
    RegimeBoundaries rb;
    rb.b1 = (1.0 - a) / (gamma - a);
    rb.l3 = (1.0 - a) / (gamma - 1.0);
    rb.i3 = (gamma - 1.0) * (1.0 - a) / (1.0 - a * gamma);
    rb.lb = (gamma - 1.0) / (1.0 - a * gamma);
    rb.l5 = gamma * (1.0 - a) / (1.0 - a * gamma);
    return rb;
}

double regime_threshold(double a, double opt) {
    if (a <= 0.0) {
        throw ConfigError("regime_threshold: undefined for a = 0 (pure-buy degenerate case)");
    }
    return (opt - 1.0) / (1.0 / a - 1.0);
}

bool aligned(double b, double tau) {
    double q = b / tau;
    return std::abs(q - std::round(q)) <= 1e-9;
}

namespace {

void require_aligned(double b, double tau, const char* name) {
    if (!aligned(b, tau)) {
        std::ostringstream os;
        os << "grid misalignment: " << name << "/tau = " << b / tau
           << " is not within 1e-9 of an integer (" << name << " = " << b << ", tau = " << tau
           << ")";
        throw ConfigError(os.str());
    }
}

}  // namespace

void ProblemConfig::validate() {
    if (!(a >= 0.0 && a < 1.0)) throw ConfigError("config: a must lie in [0,1)");
    if (a == 0.0) throw ConfigError("config: a = 0 (pure-buy case) is not supported");
    if (!(delta >= 0.0 && delta <= 1.0)) throw ConfigError("config: delta must lie in [0,1]");
    if (!(tau > 0.0)) throw ConfigError("config: tau must be positive");
    if (!(epsilon > 0.0)) throw ConfigError("config: epsilon must be positive");

    RegimeBoundaries rb = boundaries(a, gamma);  // throws on regime violation

    // With delta = 1 the mass constraints are vacuous, so off-grid
    // bad-interval endpoints cannot shift any solution; alignment is
    // only enforced when the tail budget is active.
    if (delta < 1.0) {
        require_aligned(rb.b1, tau, "b1");
        require_aligned(rb.l3, tau, "l3");
        require_aligned(rb.i3, tau, "i3");
        require_aligned(rb.lb, tau, "lb");
        require_aligned(rb.l5, tau, "l5");
    }
    require_aligned(1.0, tau, "1");

    if (x_max == 0.0) {
        x_max = std::ceil((rb.l5 + 2.0) / tau - 1e-9) * tau;
    }
    if (x_max < rb.lb) throw ConfigError("config: x_max must reach lb");
}

ProblemConfig config_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    ProblemConfig c;
    try {
        c.a = j.at("a").get<double>();
        c.gamma = j.at("gamma").get<double>();
        c.delta = j.at("delta").get<double>();
        c.tau = j.at("tau").get<double>();
        if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<double>();
        if (j.contains("x_max")) c.x_max = j.at("x_max").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: missing or malformed field: ") + e.what());
    }
    c.validate();
    return c;
}

std::size_t TimeGrid::index_of(double t) const {
    double q = t / tau;
    double r = std::round(q);
    if (std::abs(q - r) > 1e-9 || r < 0.0) {
        throw ConfigError("index_of: time " + std::to_string(t) + " is not on the grid");
    }
    return static_cast<std::size_t>(r);
}

std::size_t TimeGrid::floor_index(double t, double tol) const {
    double q = (t + tol) / tau;
    if (q < 1.0) return 0;
    double f = std::floor(q);
    std::size_t k = static_cast<std::size_t>(f);
    return k > count ? count : k;
}

TimeGrid build_grid(const ProblemConfig& config, double support_end) {
    RegimeBoundaries rb = config.bounds();
    if (support_end < rb.lb - 1e-12) {
        throw ConfigError("build_grid: support_end must reach lb");
    }
    double q = support_end / config.tau;
    if (std::abs(q - std::round(q)) > 1e-9) {
        throw ConfigError("build_grid: support_end/tau is not integral");
    }
    TimeGrid g;
    g.tau = config.tau;
    g.count = static_cast<std::size_t>(std::round(q));
    return g;
}

}  // namespace skirent
