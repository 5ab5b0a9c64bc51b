#include "fourfactor/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "fourfactor/asian.hpp"
#include "fourfactor/mc.hpp"

namespace ff {

namespace {

bool is_asian(const RunConfig& cfg)
{
    return cfg.payoff.kind == PayoffSpec::Kind::FixedStrikeAsianCall;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream f(path);
    if (!f)
        throw IoError("cannot write '" + path + "'");
    f << std::setprecision(17);
    return f;
}

void close_out(std::ofstream& f, const std::string& path)
{
    f.close();
    if (!f)
        throw IoError("error writing '" + path + "'");
}

// Writes `text` to stdout and, if requested, to cfg.out.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text)
{
    out << text;
    if (!cfg.out.empty()) {
        auto f = open_out(cfg.out);
        f << text;
        close_out(f, cfg.out);
    }
}

// Shortest text that reads back to the same double.
std::string shortest(double x)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_coords(std::ostream& os, const std::vector<double>& pt)
{
    for (double c : pt)
        os << shortest(c) << ',';
}

std::string coord_header(const RunConfig& cfg)
{
    return is_asian(cfg) ? "s,v,x,r,i" : "s,v,x,r";
}

const char* short_name(const SchemeConfig& s)
{
    switch (s.scheme) {
    case Scheme::ForwardEuler: return "fe";
    case Scheme::BackwardEuler: return "be";
    case Scheme::Splitting: return s.theta == 0.5 ? "cn" : "theta";
    }
    return "?";
}

} // namespace

Solution solve(const RunConfig& cfg, const SchemeConfig& scheme)
{
    if (is_asian(cfg))
        return price_asian(cfg.model, cfg.asian_spec(), scheme, cfg.payoff.strike, cfg.asian_options());
    return price(cfg.model, build_grid(cfg.grid_spec()), scheme, cfg.payoff);
}

const std::vector<std::vector<double>>& active_probes(const RunConfig& cfg)
{
    return is_asian(cfg) ? cfg.asian_probes : cfg.probes;
}

void cmd_price(const RunConfig& cfg, std::ostream& out)
{
    const Solution sol = solve(cfg, cfg.scheme);
    out << std::setprecision(17) << coord_header(cfg) << ",price\n";
    for (const auto& pt : active_probes(cfg)) {
        write_coords(out, pt);
        out << interpolate(sol.field, sol.grid, pt) << '\n';
    }
    if (!cfg.out.empty()) {
        auto f = open_out(cfg.out);
        write_field_csv(f, sol.grid, sol.field);
        close_out(f, cfg.out);
    }
}

void cmd_asian_price(const RunConfig& cfg, std::ostream& out)
{
    if (!is_asian(cfg))
        throw ConfigError("asian-price needs payoff.kind = asian");
    cmd_price(cfg, out);
}

void cmd_compare(const RunConfig& cfg, const std::vector<SchemeConfig>& schemes, std::ostream& out)
{
    std::vector<Solution> sols;
    for (const auto& s : schemes)
        sols.push_back(solve(cfg, s));
    std::ostringstream os;
    os << std::setprecision(17) << coord_header(cfg);
    for (const auto& s : schemes)
        os << ',' << short_name(s);
    os << '\n';
    for (const auto& pt : active_probes(cfg)) {
        write_coords(os, pt);
        for (std::size_t k = 0; k < sols.size(); ++k)
            os << (k ? "," : "") << interpolate(sols[k].field, sols[k].grid, pt);
        os << '\n';
    }
    emit(cfg, out, os.str());
}

void cmd_convergence(const RunConfig& cfg, const std::vector<SchemeConfig>& schemes, std::ostream& out)
{
    std::vector<double> probe = cfg.convergence_probe;
    if (is_asian(cfg))
        probe = cfg.asian_probes.front();
    std::ostringstream os;
    os << std::setprecision(17) << "scheme,steps,price,gap,status\n";
    std::string first_fault;
    for (const auto& base : schemes) {
        double prev = std::numeric_limits<double>::quiet_NaN();
        for (int n : cfg.convergence_steps) {
            SchemeConfig s = base;
            s.n_t = n;
            os << short_name(s) << ',' << n << ',';
            try {
                const Solution sol = solve(cfg, s);
                const double v = interpolate(sol.field, sol.grid, probe);
                os << v << ',';
                if (std::isfinite(prev))
                    os << std::abs(v - prev);
                os << ",ok\n";
                prev = v;
            } catch (const InstabilityFault& e) {
                // Keep going so the table shows where the scheme becomes stable.
                os << ",,fault at step " << e.step() << '\n';
                prev = std::numeric_limits<double>::quiet_NaN();
                if (first_fault.empty())
                    first_fault = e.what();
            }
        }
    }
    emit(cfg, out, os.str());
    if (!first_fault.empty())
        throw InstabilityFault(0, first_fault);
}

void cmd_mc_check(const RunConfig& cfg, std::ostream& out)
{
    const Solution sol = solve(cfg, cfg.scheme);
    const McConfig mc = cfg.mc_config();
    const double horizon = is_asian(cfg) ? cfg.scheme.maturity - cfg.asian_t0 : cfg.scheme.maturity;
    std::ostringstream os;
    os << std::setprecision(17) << coord_header(cfg) << ",pde,mc,std_error,z,clamp_fraction\n";
    for (const auto& pt : active_probes(cfg)) {
        const State s0{pt[kS], pt[kV], pt[kX], pt[kR]};
        McPayoffTerms terms;
        if (is_asian(cfg)) {
            terms.i0 = pt[kI];
            terms.period = horizon;
        }
        const McEstimate e = mc_price(cfg.model, s0, cfg.payoff, mc, horizon, terms);
        const double pde = interpolate(sol.field, sol.grid, pt);
        write_coords(os, pt);
        os << pde << ',' << e.price << ',' << e.std_error << ','
           << (e.std_error > 0.0 ? (pde - e.price) / e.std_error : 0.0) << ',' << e.clamp_fraction
           << '\n';
    }
    emit(cfg, out, os.str());
}

void cmd_slice(const RunConfig& cfg, std::ostream& out)
{
    if (is_asian(cfg))
        throw ConfigError("slice supports european and up-and-out payoffs");
    const Solution sol = solve(cfg, cfg.scheme);
    const Grid& g = sol.grid;
    const auto [a, b] = cfg.slice_axes;
    std::ostringstream os;
    os << std::setprecision(17) << axis_name(a) << ',' << axis_name(b) << ",value\n";
    std::array<double, 4> pt = cfg.slice_at;
    for (int ib = 0; ib < g.count(b); ++ib)
        for (int ia = 0; ia < g.count(a); ++ia) {
            pt[a] = g.coord(a, ia);
            pt[b] = g.coord(b, ib);
            os << shortest(pt[a]) << ',' << shortest(pt[b]) << ',' << interpolate(sol.field, g, pt) << '\n';
        }
    emit(cfg, out, os.str());
}

int report_failure(std::ostream& err)
{
    try {
        throw;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InstabilityFault& e) {
        err << "solver fault: " << e.what() << '\n';
        return kExitSolver;
    } catch (const SolverFault& e) {
        err << "solver fault: " << e.what() << '\n';
        return kExitSolver;
    } catch (const NodeCapExceeded& e) {
        err << "solver fault: " << e.what() << '\n';
        return kExitSolver;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::out_of_range& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "solver fault: " << e.what() << '\n';
        return kExitSolver;
    }
}

} // namespace ff
