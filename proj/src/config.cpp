#include "fourfactor/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace ff {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v)
{
    const std::string t = trim(v);
    char* end = nullptr;
    const double x = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size())
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    return x;
}

long long to_integer(const std::string& key, const std::string& v)
{
    const std::string t = trim(v);
    char* end = nullptr;
    const long long x = std::strtoll(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size())
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    return x;
}

int to_int(const std::string& key, const std::string& v)
{
    const long long x = to_integer(key, v);
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw ConfigError(key + ": out of range");
    return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v)
{
    std::string t = trim(v);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "true" || t == "1" || t == "yes" || t == "on")
        return true;
    if (t == "false" || t == "0" || t == "no" || t == "off")
        return false;
    throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v)
{
    std::string t = v;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream is(t);
    std::vector<double> out;
    std::string tok;
    while (is >> tok)
        out.push_back(to_double(key, tok));
    return out;
}

// "a b c d; a b c d" -> points of `arity` coordinates.
std::vector<std::vector<double>> to_points(const std::string& key, const std::string& v,
                                           std::size_t arity)
{
    std::vector<std::vector<double>> out;
    std::istringstream is(v);
    std::string part;
    while (std::getline(is, part, ';')) {
        if (trim(part).empty())
            continue;
        auto pt = to_list(key, part);
        if (pt.size() != arity)
            throw ConfigError(key + ": each point needs " + std::to_string(arity) + " coordinates");
        out.push_back(std::move(pt));
    }
    if (out.empty())
        throw ConfigError(key + ": at least one point required");
    return out;
}

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::string fmt_list(const std::vector<double>& xs)
{
    std::string s;
    for (std::size_t k = 0; k < xs.size(); ++k)
        s += (k ? " " : "") + fmt(xs[k]);
    return s;
}

std::string fmt_points(const std::vector<std::vector<double>>& pts)
{
    std::string s;
    for (std::size_t k = 0; k < pts.size(); ++k)
        s += (k ? "; " : "") + fmt_list(pts[k]);
    return s;
}

int parse_axis(const std::string& key, const std::string& v)
{
    const std::string t = trim(v);
    for (int a = 0; a < 4; ++a)
        if (t == axis_name(a))
            return a;
    throw ConfigError(key + ": unknown axis '" + v + "' (s, v, x, r)");
}

Scheme parse_scheme(const std::string& key, const std::string& v, double& theta)
{
    const std::string t = trim(v);
    if (t == "fe") {
        theta = 0.0;
        return Scheme::ForwardEuler;
    }
    if (t == "be") {
        theta = 1.0;
        return Scheme::BackwardEuler;
    }
    if (t == "cn") {
        theta = 0.5;
        return Scheme::Splitting;
    }
    if (t == "theta")
        return Scheme::Splitting;
    throw ConfigError(key + ": unknown scheme '" + v + "' (fe, be, cn, theta)");
}

const char* scheme_key(const SchemeConfig& s)
{
    switch (s.scheme) {
    case Scheme::ForwardEuler: return "fe";
    case Scheme::BackwardEuler: return "be";
    case Scheme::Splitting: return s.theta == 0.5 ? "cn" : "theta";
    }
    return "cn";
}

struct Key {
    std::string name;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

Key real(const std::string& name, double RunConfig::*field)
{
    return {name, [=](RunConfig& c, const std::string& v) { c.*field = to_double(name, v); },
            [=](const RunConfig& c) { return fmt(c.*field); }};
}

Key model_real(const std::string& name, double ModelParams::*field)
{
    return {name, [=](RunConfig& c, const std::string& v) { c.model.*field = to_double(name, v); },
            [=](const RunConfig& c) { return fmt(c.model.*field); }};
}

Key grid_real(const std::string& name, double GridKeys::*field)
{
    return {name, [=](RunConfig& c, const std::string& v) { c.grid.*field = to_double(name, v); },
            [=](const RunConfig& c) { return fmt(c.grid.*field); }};
}

Key grid_count(const std::string& name, int GridKeys::*field)
{
    return {name, [=](RunConfig& c, const std::string& v) { c.grid.*field = to_int(name, v); },
            [=](const RunConfig& c) { return std::to_string(c.grid.*field); }};
}

Key grid_pin(const std::string& name, int axis)
{
    return {name, [=](RunConfig& c, const std::string& v) { c.grid.pin[axis] = to_double(name, v); },
            [=](const RunConfig& c) { return fmt(c.grid.pin[axis]); }};
}

std::vector<Key> build_keys()
{
    std::vector<Key> k;
    k.push_back(model_real("model.mu", &ModelParams::mu));
    k.push_back(model_real("model.kappa_x", &ModelParams::kappa_x));
    k.push_back(model_real("model.sigma_x", &ModelParams::sigma_x));
    k.push_back(model_real("model.kappa_s", &ModelParams::kappa_s));
    k.push_back(model_real("model.sigma_bar", &ModelParams::sigma_bar));
    k.push_back(model_real("model.eta", &ModelParams::eta));
    k.push_back(model_real("model.kappa_r", &ModelParams::kappa_r));
    k.push_back(model_real("model.r_bar", &ModelParams::r_bar));
    k.push_back(model_real("model.sigma_r", &ModelParams::sigma_r));
    k.push_back(model_real("model.rho_x", &ModelParams::rho_x));
    k.push_back(model_real("model.rho_s", &ModelParams::rho_s));
    k.push_back(model_real("model.rho_r", &ModelParams::rho_r));

    k.push_back({"maturity",
                 [](RunConfig& c, const std::string& v) { c.scheme.maturity = to_double("maturity", v); },
                 [](const RunConfig& c) { return fmt(c.scheme.maturity); }});

    k.push_back(grid_real("grid.s_max", &GridKeys::s_max));
    k.push_back(grid_real("grid.v_max", &GridKeys::v_max));
    k.push_back(grid_real("grid.x_max", &GridKeys::x_max));
    k.push_back(grid_real("grid.r_max", &GridKeys::r_max));
    k.push_back(grid_count("grid.n_s", &GridKeys::n_s));
    k.push_back(grid_count("grid.n_v", &GridKeys::n_v));
    k.push_back(grid_count("grid.n_x", &GridKeys::n_x));
    k.push_back(grid_count("grid.n_r", &GridKeys::n_r));
    k.push_back(grid_pin("grid.s_pin", kS));
    k.push_back(grid_pin("grid.v_pin", kV));
    k.push_back(grid_pin("grid.x_pin", kX));
    k.push_back(grid_pin("grid.r_pin", kR));

    k.push_back({"payoff.kind",
                 [](RunConfig& c, const std::string& v) {
                     const std::string t = trim(v);
                     if (t == "european")
                         c.payoff.kind = PayoffSpec::Kind::EuropeanCall;
                     else if (t == "up-and-out")
                         c.payoff.kind = PayoffSpec::Kind::UpAndOutCall;
                     else if (t == "asian")
                         c.payoff.kind = PayoffSpec::Kind::FixedStrikeAsianCall;
                     else
                         throw ConfigError("payoff.kind: unknown payoff '" + v +
                                           "' (european, up-and-out, asian)");
                 },
                 [](const RunConfig& c) -> std::string {
                     switch (c.payoff.kind) {
                     case PayoffSpec::Kind::UpAndOutCall: return "up-and-out";
                     case PayoffSpec::Kind::FixedStrikeAsianCall: return "asian";
                     default: return "european";
                     }
                 }});
    k.push_back({"payoff.strike",
                 [](RunConfig& c, const std::string& v) { c.payoff.strike = to_double("payoff.strike", v); },
                 [](const RunConfig& c) { return fmt(c.payoff.strike); }});
    k.push_back({"payoff.barrier",
                 [](RunConfig& c, const std::string& v) { c.payoff.barrier = to_double("payoff.barrier", v); },
                 [](const RunConfig& c) { return fmt(c.payoff.barrier); }});

    k.push_back({"scheme.name",
                 [](RunConfig& c, const std::string& v) {
                     c.scheme.scheme = parse_scheme("scheme.name", v, c.scheme.theta);
                 },
                 [](const RunConfig& c) { return std::string(scheme_key(c.scheme)); }});
    k.push_back({"scheme.theta",
                 [](RunConfig& c, const std::string& v) { c.scheme.theta = to_double("scheme.theta", v); },
                 [](const RunConfig& c) { return fmt(c.scheme.theta); }});
    k.push_back({"scheme.steps",
                 [](RunConfig& c, const std::string& v) { c.scheme.n_t = to_int("scheme.steps", v); },
                 [](const RunConfig& c) { return std::to_string(c.scheme.n_t); }});

    k.push_back({"scheme.advection",
                 [](RunConfig& c, const std::string& v) {
                     const std::string t = trim(v);
                     if (t == "central")
                         c.scheme.advection = Advection::Central;
                     else if (t == "hybrid")
                         c.scheme.advection = Advection::Hybrid;
                     else
                         throw ConfigError("scheme.advection: expected central or hybrid, got '" + v + "'");
                 },
                 [](const RunConfig& c) {
                     return std::string(c.scheme.advection == Advection::Hybrid ? "hybrid" : "central");
                 }});

    k.push_back({"probes",
                 [](RunConfig& c, const std::string& v) { c.probes = to_points("probes", v, 4); },
                 [](const RunConfig& c) { return fmt_points(c.probes); }});
    k.push_back({"convergence.probe",
                 [](RunConfig& c, const std::string& v) {
                     c.convergence_probe = to_points("convergence.probe", v, 4).front();
                 },
                 [](const RunConfig& c) { return fmt_list(c.convergence_probe); }});
    k.push_back({"convergence.steps",
                 [](RunConfig& c, const std::string& v) {
                     c.convergence_steps.clear();
                     for (double x : to_list("convergence.steps", v)) {
                         if (x != std::floor(x))
                             throw ConfigError("convergence.steps: step counts must be integers");
                         c.convergence_steps.push_back(static_cast<int>(x));
                     }
                 },
                 [](const RunConfig& c) {
                     std::string s;
                     for (std::size_t i = 0; i < c.convergence_steps.size(); ++i)
                         s += (i ? " " : "") + std::to_string(c.convergence_steps[i]);
                     return s;
                 }});

    k.push_back({"mc.paths",
                 [](RunConfig& c, const std::string& v) {
                     const long long n = to_integer("mc.paths", v);
                     if (n < 0)
                         throw ConfigError("mc.paths: must be positive");
                     c.mc.n_paths = static_cast<std::size_t>(n);
                 },
                 [](const RunConfig& c) { return std::to_string(c.mc.n_paths); }});
    k.push_back(real("mc.steps_per_year", &RunConfig::mc_steps_per_year));
    k.push_back({"mc.seed",
                 [](RunConfig& c, const std::string& v) {
                     c.mc.seed = static_cast<std::uint64_t>(to_integer("mc.seed", v));
                 },
                 [](const RunConfig& c) { return std::to_string(c.mc.seed); }});
    k.push_back({"mc.antithetic",
                 [](RunConfig& c, const std::string& v) { c.mc.antithetic = to_bool("mc.antithetic", v); },
                 [](const RunConfig& c) { return std::string(c.mc.antithetic ? "true" : "false"); }});
    k.push_back({"mc.r_clamp",
                 [](RunConfig& c, const std::string& v) { c.mc.r_clamp = to_double("mc.r_clamp", v); },
                 [](const RunConfig& c) { return fmt(c.mc.r_clamp); }});

    k.push_back(real("asian.i_max", &RunConfig::i_max));
    k.push_back({"asian.n_i",
                 [](RunConfig& c, const std::string& v) { c.n_i = to_int("asian.n_i", v); },
                 [](const RunConfig& c) { return std::to_string(c.n_i); }});
    k.push_back(real("asian.t0", &RunConfig::asian_t0));
    k.push_back({"asian.node_cap",
                 [](RunConfig& c, const std::string& v) {
                     const long long n = to_integer("asian.node_cap", v);
                     if (n <= 0)
                         throw ConfigError("asian.node_cap: must be positive");
                     c.node_cap = static_cast<std::size_t>(n);
                 },
                 [](const RunConfig& c) { return std::to_string(c.node_cap); }});
    k.push_back({"asian.probes",
                 [](RunConfig& c, const std::string& v) { c.asian_probes = to_points("asian.probes", v, 5); },
                 [](const RunConfig& c) { return fmt_points(c.asian_probes); }});

    k.push_back({"slice.axes",
                 [](RunConfig& c, const std::string& v) {
                     std::string t = v;
                     std::replace(t.begin(), t.end(), ',', ' ');
                     std::istringstream is(t);
                     std::string a, b, extra;
                     if (!(is >> a >> b) || (is >> extra))
                         throw ConfigError("slice.axes: expected two axis names");
                     c.slice_axes = {parse_axis("slice.axes", a), parse_axis("slice.axes", b)};
                 },
                 [](const RunConfig& c) {
                     return std::string(axis_name(c.slice_axes[0])) + " " + axis_name(c.slice_axes[1]);
                 }});
    k.push_back({"slice.at",
                 [](RunConfig& c, const std::string& v) {
                     const auto xs = to_list("slice.at", v);
                     if (xs.size() != 4)
                         throw ConfigError("slice.at: expected s v x r");
                     std::copy(xs.begin(), xs.end(), c.slice_at.begin());
                 },
                 [](const RunConfig& c) {
                     return fmt_list({c.slice_at.begin(), c.slice_at.end()});
                 }});

    k.push_back({"output.path", [](RunConfig& c, const std::string& v) { c.out = trim(v); },
                 [](const RunConfig& c) { return c.out; }});
    return k;
}

const std::vector<Key>& keys()
{
    static const std::vector<Key> k = build_keys();
    return k;
}

const Key* find_key(const std::string& name)
{
    for (const auto& k : keys())
        if (k.name == name)
            return &k;
    return nullptr;
}

void check_inside(const Grid& g, const std::vector<double>& pt, const std::string& what)
{
    for (int a = 0; a < g.rank(); ++a) {
        const auto& sp = g.spec(a);
        const double tol = 1e-12 * std::max(1.0, std::abs(sp.hi - sp.lo));
        if (!(pt[a] >= sp.lo - tol && pt[a] <= sp.hi + tol))
            throw ConfigError(what + ": coordinate " + axis_name(a) + " = " + fmt(pt[a]) +
                              " is outside [" + fmt(sp.lo) + ", " + fmt(sp.hi) + "]");
    }
}

} // namespace

GridSpec GridKeys::spec() const
{
    const std::array<double, 4> lo{0.0, 0.0, -x_max, -r_max};
    const std::array<double, 4> hi{s_max, v_max, x_max, r_max};
    const std::array<int, 4> n{n_s, n_v, n_x, n_r};
    GridSpec g;
    for (int a = 0; a < 4; ++a) {
        if (n[a] == 1) {
            if (!std::isfinite(pin[a]))
                throw ConfigError(std::string("grid.") + axis_name(a) + "_pin is required when n_" +
                                  axis_name(a) + " = 1");
            g[a] = AxisSpec::pinned(pin[a]);
        } else {
            g[a] = AxisSpec::uniform(lo[a], hi[a], n[a]);
        }
    }
    return g;
}

AsianOptions RunConfig::asian_options() const
{
    AsianOptions o;
    o.t0 = asian_t0;
    o.node_cap = node_cap;
    return o;
}

McConfig RunConfig::mc_config() const
{
    McConfig m = mc;
    const double horizon = payoff.kind == PayoffSpec::Kind::FixedStrikeAsianCall
                               ? scheme.maturity - asian_t0
                               : scheme.maturity;
    m.n_steps = std::max(1, static_cast<int>(std::lround(mc_steps_per_year * horizon)));
    // Unset clamp: the truncated r domain of the grid.
    if (!std::isfinite(m.r_clamp) && grid.n_r > 1)
        m.r_clamp = grid.r_max;
    return m;
}

void RunConfig::validate() const
{
    try {
        model.validate();
        const GridSpec gs = grid.spec();
        gs.validate();
        scheme.validate();
        payoff.validate();
        mc.validate();
        if (!(mc_steps_per_year > 0.0))
            throw ConfigError("mc.steps_per_year must be > 0");
        const Grid g = build_grid(gs);
        for (const auto& pt : probes)
            check_inside(g, pt, "probes");
        check_inside(g, convergence_probe, "convergence.probe");
        for (int n : convergence_steps)
            if (n < 1)
                throw ConfigError("convergence.steps: step counts must be >= 1");
        if (convergence_steps.empty())
            throw ConfigError("convergence.steps: at least one step count required");
        if (slice_axes[0] == slice_axes[1])
            throw ConfigError("slice.axes: the two axes must differ");
        if (payoff.kind == PayoffSpec::Kind::FixedStrikeAsianCall) {
            if (!(scheme.maturity > asian_t0))
                throw ConfigError("asian.t0 must be below maturity");
            const AsianGridSpec as = asian_spec();
            as.validate(scheme.maturity - asian_t0);
            const Grid ag = build_asian_grid(as);
            for (const auto& pt : asian_probes)
                check_inside(ag, pt, "asian.probes");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& k : keys())
            v.push_back(k.name);
        return v;
    }();
    return names;
}

void set_key(RunConfig& cfg, const std::string& key, const std::string& value)
{
    const Key* k = find_key(key);
    if (!k)
        throw ConfigError("unknown key '" + key + "'");
    k->set(cfg, value);
}

RunConfig parse_config(std::istream& in, const std::string& origin)
{
    RunConfig cfg;
    std::map<std::string, int> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::string where = origin + ":" + std::to_string(lineno) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (auto [it, fresh] = seen.emplace(key, lineno); !fresh)
            throw ConfigError(where + "'" + key + "' already set on line " + std::to_string(it->second));
        try {
            set_key(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config '" + path + "'");
    return parse_config(in, path);
}

std::string env_name(const std::string& key)
{
    std::string s = kEnvPrefix;
    for (char c : key)
        s += c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

void apply_env_overrides(RunConfig& cfg)
{
    for (const auto& k : keys()) {
        const std::string name = env_name(k.name);
        if (const char* v = std::getenv(name.c_str())) {
            try {
                k.set(cfg, v);
            } catch (const ConfigError& e) {
                throw ConfigError(name + ": " + e.what());
            }
        }
    }
}

void describe(std::ostream& os, const RunConfig& cfg)
{
    for (const auto& k : keys()) {
        const std::string v = k.get(cfg);
        if (!v.empty())
            os << k.name << " = " << v << '\n';
    }
}

} // namespace ff
