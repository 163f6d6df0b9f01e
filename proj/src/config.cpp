#include "o2rc/config.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "o2rc/errors.hpp"

namespace o2rc {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + key + ": '" + v + "'");
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        long long d = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for " + key + ": '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("bad boolean value for " + key + ": '" + v + "'");
}

} // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    ExperimentConfig c;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));

        if (key == "model") c.model = val;
        else if (key == "dim") c.dim = static_cast<int>(parse_int(key, val));
        else if (key == "side") c.side = static_cast<int>(parse_int(key, val));
        else if (key == "bc") c.bc = val;
        else if (key == "t_grid") {
            c.t_grid.clear();
            std::istringstream vs(val);
            std::string tok;
            while (std::getline(vs, tok, ',')) {
                tok = trim(tok);
                if (!tok.empty()) c.t_grid.push_back(parse_double(key, tok));
            }
        }
        else if (key == "beta") c.beta = parse_double(key, val);
        else if (key == "dynamics") c.dynamics = val;
        else if (key == "interleave") c.interleave = parse_bool(key, val);
        else if (key == "burn_in") c.burn_in = static_cast<int>(parse_int(key, val));
        else if (key == "measurements") c.measurements = static_cast<int>(parse_int(key, val));
        else if (key == "sweeps_between") c.sweeps_between = static_cast<int>(parse_int(key, val));
        else if (key == "chains") c.chains = static_cast<int>(parse_int(key, val));
        else if (key == "workers") c.workers = static_cast<int>(parse_int(key, val));
        else if (key == "seed") c.seed = static_cast<std::uint64_t>(parse_int(key, val));
        else if (key == "site") c.site = val;
        else if (key == "villain_table") c.villain_table = parse_bool(key, val);
        else if (key == "metropolis_width") c.metropolis_width = parse_double(key, val);
        else if (key == "dp_q") c.dp_q = static_cast<int>(parse_int(key, val));
        else if (key == "dp_lambda") c.dp_lambda = parse_double(key, val);
        else if (key == "dp_u") c.dp_u = parse_double(key, val);
        else throw ConfigError("unknown key '" + key + "'");
    }
    c.validate();
    return c;
}

std::string ExperimentConfig::serialize() const {
    std::ostringstream os;
    os << "model = " << model << '\n';
    os << "dim = " << dim << '\n';
    os << "side = " << side << '\n';
    os << "bc = " << bc << '\n';
    os << "t_grid = ";
    for (size_t i = 0; i < t_grid.size(); ++i)
        os << (i ? "," : "") << fmt_double(t_grid[i]);
    os << '\n';
    os << "beta = " << fmt_double(beta) << '\n';
    os << "dynamics = " << dynamics << '\n';
    os << "interleave = " << (interleave ? "true" : "false") << '\n';
    os << "burn_in = " << burn_in << '\n';
    os << "measurements = " << measurements << '\n';
    os << "sweeps_between = " << sweeps_between << '\n';
    os << "chains = " << chains << '\n';
    os << "workers = " << workers << '\n';
    os << "seed = " << seed << '\n';
    os << "site = " << site << '\n';
    os << "villain_table = " << (villain_table ? "true" : "false") << '\n';
    os << "metropolis_width = " << fmt_double(metropolis_width) << '\n';
    os << "dp_q = " << dp_q << '\n';
    os << "dp_lambda = " << fmt_double(dp_lambda) << '\n';
    os << "dp_u = " << fmt_double(dp_u) << '\n';
    return os.str();
}

void ExperimentConfig::validate() const {
    if (model != "villain" && model != "xy" && model != "rho" && model != "dilute_potts")
        throw ConfigError("unknown model '" + model + "'");
    if (dim < 1 || dim > 3) throw ConfigError("dim must be in {1,2,3}");
    if (side < 2) throw ConfigError("side must be >= 2");
    if (bc != "wired" && bc != "free" && bc != "torus")
        throw ConfigError("bc must be wired, free or torus");
    if (t_grid.empty()) throw ConfigError("t_grid must not be empty");
    for (double t : t_grid)
        if (!(t > 0.0)) throw ConfigError("t values must be positive");
    if (!(beta > 0.0)) throw ConfigError("beta must be positive");
    if (dynamics != "metropolis" && dynamics != "heat_bath" && dynamics != "cluster" &&
        dynamics != "wolff")
        throw ConfigError("unknown dynamics '" + dynamics + "'");
    if (burn_in < 0) throw ConfigError("burn_in must be >= 0");
    if (measurements <= 0) throw ConfigError("measurements must be positive");
    if (static_cast<long long>(measurements) * chains < 32)
        throw ConfigError("need at least 32 samples overall for batch-means errors");
    if (sweeps_between <= 0) throw ConfigError("sweeps_between must be positive");
    if (chains <= 0) throw ConfigError("chains must be positive");
    if (workers < 0) throw ConfigError("workers must be >= 0");
    if (dp_q < 1) throw ConfigError("dp_q must be >= 1");
    if (!(dp_lambda > 0.0) || !(dp_u > 0.0)) throw ConfigError("dp_lambda, dp_u must be positive");
    if (site != "center") {
        try {
            (void)parse_int("site", site);
        } catch (const ConfigError&) {
            throw ConfigError("site must be 'center' or a vertex index");
        }
    }
    if (!(metropolis_width > 0.0)) throw ConfigError("metropolis_width must be positive");
}

Graph ExperimentConfig::make_graph(double t) const {
    BoundaryKind k = bc == "wired" ? BoundaryKind::wired
                   : bc == "free" ? BoundaryKind::free : BoundaryKind::torus;
    return Graph::box(dim, side, TimeParam(t), k);
}

WeightFunction ExperimentConfig::make_weight(double t) const {
    if (model == "villain")
        return villain_table ? WeightFunction::villain_tabulated(TimeParam(t))
                             : WeightFunction::villain(TimeParam(t));
    if (model == "xy") return WeightFunction::xy_exp(beta);
    if (model == "rho") {
        double b = beta;
        return WeightFunction::rho_cos([b](double s) { return std::exp(b * s); }, true);
    }
    throw ConfigError("no circle weight for model '" + model + "'");
}

Scheme ExperimentConfig::scheme() const {
    if (dynamics == "metropolis") return Scheme::metropolis;
    if (dynamics == "heat_bath") return Scheme::heat_bath;
    if (dynamics == "cluster") return Scheme::cluster_swapping;
    return Scheme::wolff;
}

int ExperimentConfig::resolve_site(const Graph& g) const {
    if (site == "center") {
        if (g.box_side() > 0) {
            // center coordinates of the box
            int c = g.box_side() / 2;
            int idx = 0;
            for (int d = 0; d < g.box_dim(); ++d) idx = idx * g.box_side() + c;
            return idx;
        }
        return g.vertex_count() / 2;
    }
    long long v = std::stoll(site);
    if (v < 0 || v >= g.vertex_count()) throw ConfigError("site index out of range");
    return static_cast<int>(v);
}

} // namespace o2rc
