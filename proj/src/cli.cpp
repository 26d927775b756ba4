#include "smoothcircle/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "smoothcircle/arith.hpp"
#include "smoothcircle/config.hpp"
#include "smoothcircle/errors.hpp"
#include "smoothcircle/estimators.hpp"
#include "smoothcircle/euler.hpp"
#include "smoothcircle/prime_sums.hpp"
#include "smoothcircle/primes.hpp"
#include "smoothcircle/report.hpp"
#include "smoothcircle/saddle.hpp"
#include "smoothcircle/special.hpp"

namespace smoothcircle {

namespace {

struct Flags {
    std::string config_path;
    std::string format;
    std::optional<std::string> x;
    std::optional<double> u;
    std::optional<std::uint64_t> y;
    double sigma = 1.0;
    double t = 0.0;
    double T = 50.0;
    double z = 10.0;
    std::string grid_x;
    std::string grid_y;
    bool with_exact = false;
    bool twist = false;
    std::string method = "auto";
    std::optional<unsigned> threads;
    std::optional<std::uint64_t> node_budget;
};

bool all_digits(const std::string& s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

double parse_number(const std::string& s, const char* what) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || !std::isfinite(v)) throw DomainError(std::string("cannot parse ") + what + ": " + s);
    return v;
}

std::uint64_t require_y(const Flags& f) {
    if (!f.y) throw DomainError("--y is required");
    if (*f.y < 2) throw DomainError("y must be >= 2");
    return *f.y;
}

// x from --x, or y^u from --u.
double x_as_double(const Flags& f, std::uint64_t y) {
    if (f.x && f.u) throw DomainError("give either --x or --u, not both");
    if (f.u) return std::pow(static_cast<double>(y), *f.u);
    if (!f.x) throw DomainError("--x or --u is required");
    return parse_number(*f.x, "--x");
}

// Exact integer threshold floor(x); integral u gives y^u exactly.
BigInt x_as_integer(const Flags& f, std::uint64_t y) {
    if (f.x && f.u) throw DomainError("give either --x or --u, not both");
    if (f.u) {
        const double u = *f.u;
        if (u >= 0 && u == std::floor(u) && u < 4096) return boost::multiprecision::pow(BigInt(y), static_cast<unsigned>(u));
        return BigInt(std::floor(std::pow(static_cast<double>(y), u)));
    }
    if (!f.x) throw DomainError("--x or --u is required");
    if (all_digits(*f.x)) return BigInt(*f.x);
    const double v = parse_number(*f.x, "--x");
    if (!(v >= 1.0)) throw DomainError("x must be >= 1");
    return BigInt(std::floor(v));
}

template <class T>
std::vector<T> parse_list(const std::string& s, const char* what) {
    std::vector<T> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const double v = parse_number(item, what);
        if constexpr (std::is_integral_v<T>) {
            if (v < 0 || v != std::floor(v)) throw DomainError(std::string(what) + " entries must be integers");
        }
        out.push_back(static_cast<T>(v));
    }
    if (out.empty()) throw DomainError(std::string(what) + " must be a nonempty comma list");
    return out;
}

std::string to_digits(const BigInt& v) { return v.str(); }

Cell log_value_cell(const LogValue& v, bool ok) {
    if (!ok) return {};
    if (v.overflows()) return Cell("log:" + format_double(v.log));
    return Cell(v.value());
}

Cell opt_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

std::string join_flags(const std::vector<std::string>& flags) {
    std::string s;
    for (const auto& f : flags) s += (s.empty() ? "" : ";") + f;
    return s;
}

Report comparison_report(const std::vector<ComparisonRow>& rows) {
    Report r;
    r.columns = {"x",      "y",     "u",       "alpha",      "residual",   "exact",         "thm1",
                 "thm2",   "goswami", "rankin", "ratio_thm1", "ratio_thm2", "ratio_goswami", "flags"};
    for (const auto& c : rows) {
        r.rows.push_back({Cell(c.x), Cell::integer(std::to_string(c.y)), c.ok ? Cell(c.u) : Cell(),
                          c.ok ? Cell(c.alpha) : Cell(), c.ok ? Cell(c.residual) : Cell(),
                          c.exact ? Cell::integer(to_digits(*c.exact)) : Cell(), log_value_cell(c.thm1, c.ok),
                          log_value_cell(c.thm2, c.ok), log_value_cell(c.goswami, c.ok),
                          log_value_cell(c.rankin, c.ok), opt_cell(c.ratio_thm1), opt_cell(c.ratio_thm2),
                          opt_cell(c.ratio_goswami), Cell(join_flags(c.flags))});
    }
    return r;
}

ExactOptions exact_options(const Config& c, const Flags& f) {
    ExactOptions o;
    o.segment_size = c.sieve_segment_size;
    o.node_budget = c.node_budget;
    o.threads = c.threads;
    o.method = parse_exact_method(f.method);
    return o;
}

CompareOptions compare_options(const Config& c, const Flags& f) {
    CompareOptions o;
    o.with_exact = f.with_exact;
    o.epsilon0 = c.epsilon0;
    o.saddle.residual_tol = c.residual_tol;
    o.exact = exact_options(c, f);
    o.threads = c.threads;
    return o;
}

Report cmd_exact(const Config& c, const Flags& f) {
    const auto y = require_y(f);
    const auto res = exact_psi_g(x_as_integer(f, y), y, exact_options(c, f));
    Report r;
    r.columns = {"x", "y", "value", "terms", "method"};
    r.rows.push_back({Cell::integer(to_digits(res.x)), Cell::integer(std::to_string(res.y)),
                      Cell::integer(to_digits(res.value)), Cell::integer(std::to_string(res.terms)),
                      Cell(std::string(to_string(res.method)))});
    return r;
}

Report cmd_alpha(const Config& c, const Flags& f) {
    const auto y = require_y(f);
    const PrimeTable table(y);
    SaddleOptions so;
    so.residual_tol = c.residual_tol;
    const auto s = solve_alpha(table, x_as_double(f, y), y, so);
    Report r;
    r.columns = {"x", "y", "u", "alpha", "residual", "iters", "bracket_lo", "bracket_hi"};
    r.rows.push_back({Cell(s.x), Cell::integer(std::to_string(s.y)), Cell(s.u), Cell(s.alpha), Cell(s.residual),
                      Cell::integer(std::to_string(s.iters)), Cell(s.bracket.first), Cell(s.bracket.second)});
    return r;
}

Report cmd_hval(const Config&, const Flags& f) {
    const auto y = require_y(f);
    const PrimeTable table(y);
    const auto h = h_value(table, {f.sigma, f.t}, y);
    const auto pd = phi_derivatives(table, f.sigma, y, 4);
    Report r;
    r.columns = {"sigma", "t", "y", "re", "im", "phi", "phi1", "phi2", "phi3", "phi4"};
    r.rows.push_back({Cell(f.sigma), Cell(f.t), Cell::integer(std::to_string(y)), Cell(h.real()), Cell(h.imag()),
                      Cell(pd.phi), Cell(pd.d[0]), Cell(pd.d[1]), Cell(pd.d[2]), Cell(pd.d[3])});
    return r;
}

Report cmd_estimate(const Config& c, const Flags& f) {
    const auto y = require_y(f);
    const PrimeTable table(y);
    std::vector<ComparisonRow> rows{compare_cell(table, x_as_double(f, y), y, compare_options(c, f))};
    return comparison_report(rows);
}

Report cmd_compare(const Config& c, const Flags& f) {
    const auto xs = parse_list<double>(f.grid_x, "--grid-x");
    const auto ys = parse_list<std::uint64_t>(f.grid_y, "--grid-y");
    std::uint64_t ymax = 2;
    for (auto y : ys) {
        if (y < 2) throw DomainError("--grid-y entries must be >= 2");
        ymax = std::max(ymax, y);
    }
    const PrimeTable table(ymax);
    return comparison_report(compare_grid(table, xs, ys, compare_options(c, f)));
}

Report cmd_perron(const Config& c, const Flags& f) {
    const auto y = require_y(f);
    const PrimeTable table(y);
    const auto p = perron_verify(table, x_as_double(f, y), y, f.T, exact_options(c, f));
    Report r;
    r.columns = {"x", "y", "T", "alpha", "integral", "exact", "error"};
    r.rows.push_back({Cell(p.x), Cell::integer(std::to_string(p.y)), Cell(p.T), Cell(p.alpha), Cell(p.integral),
                      Cell::integer(to_digits(p.exact)), Cell(p.error)});
    return r;
}

Report cmd_xi(const Config&, const Flags& f) {
    if (!f.u) throw DomainError("--u is required");
    Report r;
    r.columns = {"u", "value"};
    r.rows.push_back({Cell(*f.u), Cell(xi(*f.u))});
    return r;
}

Report cmd_rho(const Config&, const Flags& f) {
    if (!f.u) throw DomainError("--u is required");
    Report r;
    r.columns = {"u", "value"};
    r.rows.push_back({Cell(*f.u), Cell(rho(*f.u))});
    return r;
}

Report cmd_primesums(const Config&, const Flags& f) {
    if (!f.x) throw DomainError("--x is required");
    const double xv = parse_number(*f.x, "--x");
    if (!(xv >= 2.0) || xv > 1e10) throw DomainError("primesums needs 2 <= x <= 1e10");
    const auto x = static_cast<std::uint64_t>(xv);
    const PrimeTable table(x);
    const auto rep = weighted_prime_sum(table, x, f.sigma, f.twist);
    Report r;
    r.columns = {"x", "sigma", "twist", "value", "main_term", "deviation"};
    r.rows.push_back({Cell::integer(std::to_string(x)), Cell(f.sigma), Cell(f.twist), Cell(rep.value),
                      Cell(rep.main_term), Cell(rep.deviation)});
    return r;
}

Report cmd_diffcheck(const Config& c, const Flags& f) {
    const auto y = require_y(f);
    const BigInt xb = x_as_integer(f, y);
    if (xb > BigInt(std::numeric_limits<std::uint64_t>::max())) throw DomainError("diffcheck needs x < 2^64");
    const PrimeTable table(y);
    const auto d = difference_check(table, static_cast<std::uint64_t>(xb), y, f.z, c.lambda, exact_options(c, f));
    Report r;
    r.columns = {"x", "y", "z", "alpha", "lhs", "scale", "ratio"};
    r.rows.push_back({Cell::integer(std::to_string(d.x)), Cell::integer(std::to_string(d.y)), Cell(d.z),
                      Cell(d.alpha), Cell::integer(to_digits(d.lhs)), Cell(d.scale), Cell(d.ratio)});
    return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Smooth-weighted Gauss circle sums: exact oracle, saddle-point estimates, diagnostics"};
    app.name(args.empty() ? "smoothcircle" : args.front());
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;
    app.add_option("--config", f.config_path, "key=value config file (default: $SMOOTHCIRCLE_CONFIG)");
    app.add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", f.threads, "worker threads (default: all cores)");
    app.add_option("--node-budget", f.node_budget, "recursion node budget for the exact oracle");

    auto add_xy = [&](CLI::App* sub) {
        auto* ox = sub->add_option("--x", f.x, "threshold x");
        sub->add_option("--u", f.u, "x = y^u")->excludes(ox);
        sub->add_option("--y", f.y, "smoothness bound y");
    };
    auto add_method = [&](CLI::App* sub) {
        sub->add_option("--method", f.method, "exact oracle: sieve, recursive or auto")
            ->check(CLI::IsMember({"sieve", "recursive", "auto"}));
    };

    using Handler = Report (*)(const Config&, const Flags&);
    std::vector<std::pair<CLI::App*, Handler>> commands;

    auto* exact = app.add_subcommand("exact", "exact Psi_G(x, y)");
    add_xy(exact);
    add_method(exact);
    commands.emplace_back(exact, &cmd_exact);

    auto* alpha = app.add_subcommand("alpha", "saddle point alpha_G(x, y)");
    add_xy(alpha);
    commands.emplace_back(alpha, &cmd_alpha);

    auto* hval = app.add_subcommand("hval", "H(sigma + it, G; y) and phi_1..phi_4 at sigma");
    hval->add_option("--sigma", f.sigma, "real part");
    hval->add_option("--t", f.t, "imaginary part");
    hval->add_option("--y", f.y, "smoothness bound y");
    commands.emplace_back(hval, &cmd_hval);

    auto* estimate = app.add_subcommand("estimate", "all estimates for one (x, y)");
    add_xy(estimate);
    add_method(estimate);
    estimate->add_flag("--with-exact", f.with_exact, "also run the exact oracle");
    commands.emplace_back(estimate, &cmd_estimate);

    auto* compare = app.add_subcommand("compare", "estimates over a grid of (x, y)");
    compare->add_option("--grid-x", f.grid_x, "comma list of x")->required();
    compare->add_option("--grid-y", f.grid_y, "comma list of y")->required();
    compare->add_flag("--with-exact", f.with_exact, "also run the exact oracle");
    add_method(compare);
    commands.emplace_back(compare, &cmd_compare);

    auto* perron = app.add_subcommand("perron", "truncated Perron integral against the exact sum");
    add_xy(perron);
    add_method(perron);
    perron->add_option("--T", f.T, "truncation height");
    commands.emplace_back(perron, &cmd_perron);

    auto* xi_cmd = app.add_subcommand("xi", "xi(u)");
    xi_cmd->add_option("--u", f.u, "u >= 1")->required();
    commands.emplace_back(xi_cmd, &cmd_xi);

    auto* rho_cmd = app.add_subcommand("rho", "Dickman rho(u)");
    rho_cmd->add_option("--u", f.u, "u >= 0")->required();
    commands.emplace_back(rho_cmd, &cmd_rho);

    auto* ps = app.add_subcommand("primesums", "weighted prime sum against its main term");
    ps->add_option("--x", f.x, "x >= 2")->required();
    ps->add_option("--sigma", f.sigma, "exponent sigma");
    ps->add_flag("--twist", f.twist, "weight by chi_4(p)");
    commands.emplace_back(ps, &cmd_primesums);

    auto* diff = app.add_subcommand("diffcheck", "Psi_G(x + x/z, y) - Psi_G(x, y) against x^alpha H(alpha)/z");
    add_xy(diff);
    add_method(diff);
    diff->add_option("--z", f.z, "1 <= z <= exp((log y)^(3/2 - lambda))");
    commands.emplace_back(diff, &cmd_diffcheck);

    std::vector<const char*> argv;
    argv.push_back(args.empty() ? "smoothcircle" : args.front().c_str());
    for (std::size_t i = 1; i < args.size(); ++i) argv.push_back(args[i].c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitInput;
    }

    try {
        Config config;
        std::string path = f.config_path;
        if (path.empty())
            if (const char* env = std::getenv("SMOOTHCIRCLE_CONFIG")) path = env;
        if (!path.empty()) config = Config::load(path);
        if (!f.format.empty()) config.output_format = parse_output_format(f.format);
        if (f.threads) config.set("threads", std::to_string(*f.threads));
        if (f.node_budget) config.set("node_budget", std::to_string(*f.node_budget));
        config.validate();

        for (const auto& [sub, handler] : commands) {
            if (!sub->parsed()) continue;
            const Report r = handler(config, f);
            write_report(out, r, config.output_format, config.hash());
            return kExitOk;
        }
        err << "error: no subcommand\n";
        return kExitInput;
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const OverflowError& e) {
        err << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
}

}  // namespace smoothcircle
