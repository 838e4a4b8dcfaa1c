#include "cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "zerotherm/errors.hpp"
#include "zerotherm/green.hpp"
#include "zerotherm/model.hpp"
#include "zerotherm/oracle.hpp"
#include "zerotherm/quadrature.hpp"
#include "zerotherm/thermo.hpp"
#include "zerotherm/zeromode.hpp"

namespace zerotherm {
namespace {

constexpr const char* kVersion = "0.1.0";

constexpr std::array<double, 8> kDefaultCouplings = {0.008, 0.04, 0.4, 1.2,
                                                     2.0,   4.0,  8.0, 200.0};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

unsigned worker_count() {
    if (const char* s = std::getenv("ZEROTHERM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(s, &end, 10);
        if (end != s && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Work items claimed by atomic index; results land in caller-indexed slots so
// output order never depends on completion order. First exception wins.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto drain = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

// ---------------------------------------------------------------------------
// Run configuration

struct RunConfig {
    PotentialSpec spec;
    double tmin = 0.2;
    double tmax = 10.0;
    int tcount = 50;
    std::string tscale = "log";
    std::vector<std::string> methods = {"classical", "quadratic", "improved", "oneloop",
                                        "exact"};
    std::string out;  // empty = stdout
    std::string format = "csv";
    QuadratureConfig quad;
};

std::vector<std::string> split_methods(const std::string& csv) {
    std::vector<std::string> names;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) names.push_back(item);
    return names;
}

double require_number(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) throw std::invalid_argument("config key '" + key + "' must be a number");
    return v.get<double>();
}

void apply_quadrature_config(const nlohmann::json& obj, QuadratureConfig& q) {
    for (const auto& [key, value] : obj.items()) {
        if (key == "nodes_per_panel")
            q.nodes_per_panel = static_cast<int>(require_number(value, key));
        else if (key == "panel_growth")
            q.panel_growth = require_number(value, key);
        else if (key == "tail_cutoff")
            q.tail_cutoff = require_number(value, key);
        else if (key == "abs_tol")
            q.abs_tol = require_number(value, key);
        else if (key == "rel_tol")
            q.rel_tol = require_number(value, key);
        else if (key == "max_panels")
            q.max_panels = static_cast<int>(require_number(value, key));
        else
            throw std::invalid_argument("unknown quadrature config key '" + key + "'");
    }
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config parse error: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw std::invalid_argument("config root must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "mass")
            cfg.spec.m = require_number(value, key);
        else if (key == "omega")
            cfg.spec.omega = require_number(value, key);
        else if (key == "lambda")
            cfg.spec.lambda = require_number(value, key);
        else if (key == "tmin")
            cfg.tmin = require_number(value, key);
        else if (key == "tmax")
            cfg.tmax = require_number(value, key);
        else if (key == "tcount")
            cfg.tcount = static_cast<int>(require_number(value, key));
        else if (key == "tscale")
            cfg.tscale = value.get<std::string>();
        else if (key == "methods") {
            if (value.is_string())
                cfg.methods = split_methods(value.get<std::string>());
            else if (value.is_array())
                cfg.methods = value.get<std::vector<std::string>>();
            else
                throw std::invalid_argument("config key 'methods' must be a string or array");
        } else if (key == "out")
            cfg.out = value.get<std::string>();
        else if (key == "format")
            cfg.format = value.get<std::string>();
        else if (key == "quadrature") {
            if (!value.is_object())
                throw std::invalid_argument("config key 'quadrature' must be an object");
            apply_quadrature_config(value, cfg.quad);
        } else
            throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

std::vector<double> temperature_grid(const RunConfig& cfg) {
    if (!(cfg.tmin > 0.0) || !(cfg.tmax >= cfg.tmin))
        throw std::invalid_argument("temperature bounds must satisfy 0 < tmin <= tmax");
    if (cfg.tcount < 1) throw std::invalid_argument("tcount must be at least 1");
    if (cfg.tscale != "log" && cfg.tscale != "linear")
        throw std::invalid_argument("tscale must be 'log' or 'linear'");
    std::vector<double> grid(cfg.tcount);
    if (cfg.tcount == 1) {
        grid[0] = cfg.tmin;
        return grid;
    }
    const double span = cfg.tscale == "log" ? std::log(cfg.tmax / cfg.tmin) : cfg.tmax - cfg.tmin;
    for (int i = 0; i < cfg.tcount; ++i) {
        const double f = static_cast<double>(i) / (cfg.tcount - 1);
        grid[i] = cfg.tscale == "log" ? cfg.tmin * std::exp(span * f) : cfg.tmin + span * f;
    }
    return grid;
}

// ---------------------------------------------------------------------------
// Output plumbing

class OutputSink {
  public:
    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::invalid_argument("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

void validate_format(const std::string& format) {
    if (format != "csv" && format != "json")
        throw std::invalid_argument("format must be 'csv' or 'json'");
}

void write_table(std::ostream& os, const std::string& format, const nlohmann::ordered_json& config,
                 const std::vector<std::string>& columns,
                 const std::vector<nlohmann::ordered_json>& rows) {
    if (format == "csv") {
        for (std::size_t c = 0; c < columns.size(); ++c)
            os << (c ? "," : "") << columns[c];
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < columns.size(); ++c) {
                const auto& cell = row.at(columns[c]);
                if (c) os << ",";
                if (cell.is_string())
                    os << cell.get<std::string>();
                else
                    os << fmt17(cell.get<double>());
            }
            os << "\n";
        }
    } else {
        nlohmann::ordered_json doc;
        doc["config"] = config;
        doc["version"] = kVersion;
        doc["rows"] = rows;
        os << doc.dump(2) << "\n";
    }
    os.flush();
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_thermo(const RunConfig& cfg) {
    cfg.spec.validate();
    cfg.quad.validate();
    validate_format(cfg.format);
    if (cfg.methods.empty()) throw std::invalid_argument("method list must not be empty");
    std::vector<Method> methods;
    methods.reserve(cfg.methods.size());
    for (const auto& name : cfg.methods) methods.push_back(method_from_string(name));

    const std::vector<double> grid = temperature_grid(cfg);

    std::vector<MethodEvaluator> evals;
    evals.reserve(methods.size());
    for (const Method m : methods) evals.emplace_back(m, cfg.spec, cfg.quad);

    // One work item per temperature, all methods inside; rows stay in grid order.
    std::vector<ThermoPoint> points(grid.size() * methods.size());
    parallel_for(grid.size(), [&](std::size_t ti) {
        for (std::size_t mi = 0; mi < evals.size(); ++mi)
            points[ti * evals.size() + mi] = evals[mi].point(grid[ti]);
    });

    nlohmann::ordered_json config;
    config["mass"] = cfg.spec.m;
    config["omega"] = cfg.spec.omega;
    config["lambda"] = cfg.spec.lambda;
    config["tmin"] = cfg.tmin;
    config["tmax"] = cfg.tmax;
    config["tcount"] = cfg.tcount;
    config["tscale"] = cfg.tscale;
    config["methods"] = cfg.methods;
    config["format"] = cfg.format;
    config["out"] = cfg.out.empty() ? "-" : cfg.out;

    std::vector<nlohmann::ordered_json> rows;
    rows.reserve(points.size());
    bool nonconvergent = false;
    for (std::size_t ti = 0; ti < grid.size(); ++ti) {
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            const ThermoPoint& p = points[ti * methods.size() + mi];
            nlohmann::ordered_json row;
            row["T"] = p.T;
            row["method"] = cfg.methods[mi];
            row["F"] = p.F;
            row["U"] = p.U;
            row["C"] = p.C;
            row["err"] = p.err();
            row["flags"] = flags_to_string(p.flags);
            rows.push_back(std::move(row));
            if (p.flags & kFlagNonConvergent) nonconvergent = true;
        }
    }

    OutputSink sink(cfg.out);
    write_table(sink.stream(), cfg.format, config,
                {"T", "method", "F", "U", "C", "err", "flags"}, rows);
    return nonconvergent ? 3 : 0;
}

int cmd_gstate(const PotentialSpec& base, const std::vector<double>& lambdas,
               const std::string& out, const std::string& format) {
    validate_format(format);
    if (lambdas.empty()) throw std::invalid_argument("coupling list must not be empty");
    for (const double lam : lambdas)
        if (!(lam > 0.0)) throw std::invalid_argument("couplings must be positive");

    struct Row {
        double lambda = 0.0, exact = 0.0, quadratic = 0.0;
    };
    std::vector<Row> results(lambdas.size());
    parallel_for(lambdas.size(), [&](std::size_t i) {
        PotentialSpec spec = base;
        spec.lambda = lambdas[i];
        spec.validate();
        results[i].lambda = lambdas[i];
        results[i].exact = spectrum(spec).eigenvalues[0];
        results[i].quadratic = ground_state_estimate(spec);
    });

    nlohmann::ordered_json config;
    config["mass"] = base.m;
    config["omega"] = base.omega;
    config["lambda"] = lambdas;
    config["format"] = format;
    config["out"] = out.empty() ? "-" : out;

    std::vector<nlohmann::ordered_json> rows;
    rows.reserve(results.size());
    for (const Row& r : results) {
        nlohmann::ordered_json row;
        row["lambda"] = r.lambda;
        row["E0_exact"] = r.exact;
        row["E0_quadratic"] = r.quadratic;
        row["percent_error"] = 100.0 * std::abs(r.quadratic - r.exact) / r.exact;
        rows.push_back(std::move(row));
    }

    OutputSink sink(out);
    write_table(sink.stream(), format, config,
                {"lambda", "E0_exact", "E0_quadratic", "percent_error"}, rows);
    return 0;
}

int cmd_tmin(const PotentialSpec& base, std::vector<double> lambdas, const std::string& out,
             const std::string& format) {
    validate_format(format);
    if (lambdas.empty()) throw std::invalid_argument("coupling grid must not be empty");
    if (!(base.omega > 0.0))
        throw std::invalid_argument("the dimensionless coupling needs omega > 0");
    for (const double lam : lambdas)
        if (!(lam > 0.0)) throw std::invalid_argument("couplings must be positive");
    std::sort(lambdas.begin(), lambdas.end());

    struct Row {
        double lambda = 0.0, theta = 0.0, t_min = 0.0;
        bool crossed = true;
    };
    std::vector<Row> results(lambdas.size());
    parallel_for(lambdas.size(), [&](std::size_t i) {
        Row& r = results[i];
        r.lambda = lambdas[i];
        const double g = lambdas[i] / (base.m * base.m * std::pow(base.omega, 3));
        try {
            const TminPoint p = t_min_detail(g);
            r.theta = p.theta;
            r.t_min = base.omega * p.t_min;
        } catch (const NoCrossing&) {
            r.crossed = false;
            r.theta = r.t_min = std::numeric_limits<double>::quiet_NaN();
        }
    });

    // T_min must grow with the coupling; a violation is a self-check failure.
    double prev = 0.0;
    for (const Row& r : results) {
        if (!r.crossed) continue;
        if (r.t_min < prev) {
            std::cerr << "tmin: monotonicity violated at lambda = " << fmt17(r.lambda) << "\n";
            return 1;
        }
        prev = r.t_min;
    }

    nlohmann::ordered_json config;
    config["mass"] = base.m;
    config["omega"] = base.omega;
    config["lambda"] = lambdas;
    config["format"] = format;
    config["out"] = out.empty() ? "-" : out;

    std::vector<nlohmann::ordered_json> rows;
    rows.reserve(results.size());
    for (const Row& r : results) {
        nlohmann::ordered_json row;
        row["lambda"] = r.lambda;
        row["theta_root"] = r.theta;
        row["t_min"] = r.t_min;
        row["flags"] = r.crossed ? "" : "no_crossing";
        rows.push_back(std::move(row));
    }

    OutputSink sink(out);
    write_table(sink.stream(), format, config, {"lambda", "theta_root", "t_min", "flags"}, rows);
    return 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Invariant suite (`check` subcommand)

namespace {

struct Invariant {
    const char* name;
    std::function<bool()> body;
};

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

std::vector<Invariant> invariant_suite() {
    std::vector<Invariant> suite;

    suite.push_back({"sho-boundary-free-energy", [] {
        for (const double bw : {0.05, 0.5, 5.0, 50.0}) {
            const double f = -std::log(sho_partition_boundary(1.0, bw)) / bw;
            if (std::abs(f - sho_free_energy_closed(1.0, bw)) > 1e-12) return false;
        }
        const double f = -std::log(sho_partition_boundary(2.7, 1.3)) / 1.3;
        return std::abs(f - sho_free_energy_closed(2.7, 1.3)) <= 1e-12;
    }});

    suite.push_back({"free-theory-quadrature", [] {
        const PotentialSpec sho{1.0, 1.0, 0.0};
        for (const double beta : {0.1, 1.0, 10.0}) {
            const double f = -partition_quadratic_detail(sho, beta).log_value / beta;
            if (!close_rel(f, sho_free_energy_closed(1.0, beta), 1e-9)) return false;
        }
        return true;
    }});

    suite.push_back({"green-boundary-zero", [] {
        const DirichletKernel k{1.0, 1.7};
        for (const double tp : {0.3, 1.2})
            if (green_value(k, 0.0, tp) != 0.0 || green_value(k, 1.7, tp) != 0.0) return false;
        return true;
    }});

    suite.push_back({"green-symmetry", [] {
        const DirichletKernel k{1.3, 2.0};
        for (const auto [a, b] : {std::pair{0.2, 1.7}, std::pair{0.5, 0.9}})
            if (green_value(k, a, b) != green_value(k, b, a)) return false;
        return true;
    }});

    suite.push_back({"green-ode-residual", [] {
        const DirichletKernel k{1.3, 2.0};
        const double h = 1e-3, tp = 0.9;
        for (const double t : {0.4, 1.5}) {
            const double d2 = (green_value(k, t + h, tp) - 2.0 * green_value(k, t, tp) +
                               green_value(k, t - h, tp)) /
                              (h * h);
            if (std::abs(d2 - k.omega_bar * k.omega_bar * green_value(k, t, tp)) > 1e-5)
                return false;
        }
        return true;
    }});

    suite.push_back({"green-delta-jump", [] {
        const DirichletKernel k{1.0, 2.0};
        const double tp = 0.7, h = 1e-5;
        const double right = (-3.0 * green_value(k, tp, tp) + 4.0 * green_value(k, tp + h, tp) -
                              green_value(k, tp + 2.0 * h, tp)) /
                             (2.0 * h);
        const double left = (3.0 * green_value(k, tp, tp) - 4.0 * green_value(k, tp - h, tp) +
                             green_value(k, tp - 2.0 * h, tp)) /
                            (2.0 * h);
        return std::abs((right - left) - (-1.0)) <= 1e-6;
    }});

    suite.push_back({"gelfand-yaglom", [] {
        for (const double z : {1e-6, 1e-3, 0.1, 1.0, 10.0, 50.0}) {
            const DirichletKernel k{z, 1.0};
            if (!close_rel(det_prefactor(k), det_prefactor_gelfand_yaglom(k), 1e-10))
                return false;
        }
        const DirichletKernel k{2.0, 0.75};
        return close_rel(det_prefactor(k), det_prefactor_gelfand_yaglom(k), 1e-10);
    }});

    suite.push_back({"gelfand-yaglom-sensitivity", [] {
        // A deliberately perturbed prefactor must be caught by the cross-check.
        const DirichletKernel k{1.0, 1.0};
        const double tampered = det_prefactor(k) * (1.0 + 1e-6);
        return !close_rel(tampered, det_prefactor_gelfand_yaglom(k), 1e-8);
    }});

    suite.push_back({"log-det-asymptotic-branch", [] {
        const DirichletKernel k{600.0, 1.0};
        const double ld = log_det_prefactor(k);
        if (!std::isfinite(ld)) return false;
        const double asym = std::log(600.0) - std::log(2.0 * M_PI) - (600.0 - std::log(2.0));
        return std::abs(ld - asym) <= 1e-12;
    }});

    suite.push_back({"kernel-total-integral", [] {
        for (const auto [w, L] : {std::pair{1.0, 1.0}, std::pair{0.3, 2.5}, std::pair{5.0, 0.7}}) {
            const DirichletKernel k{w, L};
            // Split at tp = t: the kernel is smooth on each side of the diagonal
            // but has a derivative jump across it.
            const auto inner = [&k, L = L](double t) {
                const auto row = [&k, t](double tp) { return green_value(k, t, tp); };
                return integrate_adaptive(row, 0.0, t, 1e-13, 1e-11) +
                       integrate_adaptive(row, t, L, 1e-13, 1e-11);
            };
            const double quad = integrate_adaptive(inner, 0.0, L, 1e-13, 1e-11);
            if (!close_rel(kernel_total_integral(k), quad, 1e-8)) return false;
        }
        return true;
    }});

    suite.push_back({"kernel-row-integral", [] {
        const DirichletKernel k{1.0, 1.0};
        for (const double t : {0.25, 0.5, 0.9}) {
            const auto row = [&k, t](double tp) { return green_value(k, t, tp); };
            const double quad = integrate_adaptive(row, 0.0, t, 1e-14, 1e-12) +
                                integrate_adaptive(row, t, 1.0, 1e-14, 1e-12);
            if (!close_rel(kernel_row_integral(k, t), quad, 1e-10)) return false;
        }
        return true;
    }});

    suite.push_back({"fluctuation-profile", [] {
        const auto row = [](double tp) { return green_value(DirichletKernel{1.0, 1.0}, 0.5, tp); };
        const double quad = -1.0 * (integrate_adaptive(row, 0.0, 0.5, 1e-14, 1e-12) +
                                    integrate_adaptive(row, 0.5, 1.0, 1e-14, 1e-12));
        return close_rel(i0_profile(1.0, 1.0, 1.0, 0.5), quad, 1e-8);
    }});

    suite.push_back({"weight-evenness", [] {
        const PotentialSpec spec{1.0, 1.0, 0.4};
        for (const double x0 : {0.37, 1.9})
            if (quadratic_weight(spec, 2.0, x0).log_weight !=
                quadratic_weight(spec, 2.0, -x0).log_weight)
                return false;
        return true;
    }});

    suite.push_back({"completion-term-nonnegative", [] {
        for (const double lam : {0.4, 8.0})
            for (const double beta : {0.5, 2.0})
                for (const double x0 : {0.0, 0.5, 1.5, 3.0})
                    if (quadratic_weight(PotentialSpec{1.0, 1.0, lam}, beta, x0).sigma_eta < 0.0)
                        return false;
        return true;
    }});

    suite.push_back({"effective-potential-reassembly", [] {
        const PotentialSpec spec{1.0, 1.0, 0.4};
        const double beta = 1.0;
        const auto direct = partition_quadratic_detail(spec, beta);
        const auto f = [&](double x0) {
            return std::exp(-beta * effective_potential(spec, beta, x0));
        };
        const auto half = integrate_half_line(f, 1.0, QuadratureConfig{});
        const double reassembled =
            std::sqrt(spec.m / (2.0 * M_PI * beta)) * 2.0 * half.value;
        return close_rel(direct.value, reassembled, 1e-12);
    }});

    suite.push_back({"classical-quartic-closed-form", [] {
        const PotentialSpec spec{1.0, 0.0, 1.7};
        const double beta = 0.9;
        const double closed = std::sqrt(spec.m / (2.0 * M_PI * beta)) * std::tgamma(0.25) *
                              std::pow(4.0 / (beta * spec.lambda), 0.25) / 2.0;
        return close_rel(partition_classical(spec, beta), closed, 1e-10);
    }});

    suite.push_back({"classical-harmonic-closed-form", [] {
        const PotentialSpec spec{1.0, 2.2, 0.0};
        const double beta = 0.37;
        return close_rel(partition_classical(spec, beta), 1.0 / (beta * spec.omega), 1e-12);
    }});

    suite.push_back({"thermal-propagator", [] {
        const double beta = 1.7, omega = 1.1, tau = 0.3;
        if (free_propagator(omega, beta, tau) != free_propagator(omega, beta, beta - tau))
            return false;
        const double coincident = 1.0 / (2.0 * omega * std::tanh(0.5 * beta * omega));
        return close_rel(free_propagator(omega, beta, 0.0), coincident, 1e-14);
    }});

    return suite;
}

}  // namespace

bool run_invariant_suite(std::ostream& out) {
    bool all_pass = true;
    for (const Invariant& inv : invariant_suite()) {
        bool pass = false;
        try {
            pass = inv.body();
        } catch (const std::exception& e) {
            out << "FAIL " << inv.name << " (exception: " << e.what() << ")\n";
            all_pass = false;
            continue;
        }
        out << (pass ? "PASS " : "FAIL ") << inv.name << "\n";
        all_pass = all_pass && pass;
    }
    return all_pass;
}

// ---------------------------------------------------------------------------
// Entry point

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Zero-mode path-integral thermodynamics of quadratic+quartic oscillators"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;

    CLI::App* thermo = app.add_subcommand("thermo", "Sweep F, U, C over a temperature grid");
    auto* opt_config = thermo->add_option("--config", config_path, "JSON config file");
    auto* opt_mass = thermo->add_option("--mass", cfg.spec.m, "particle mass");
    auto* opt_omega = thermo->add_option("--omega", cfg.spec.omega, "harmonic frequency");
    auto* opt_lambda = thermo->add_option("--lambda", cfg.spec.lambda, "quartic coupling");
    auto* opt_tmin = thermo->add_option("--tmin", cfg.tmin, "lowest temperature");
    auto* opt_tmax = thermo->add_option("--tmax", cfg.tmax, "highest temperature");
    auto* opt_tcount = thermo->add_option("--tcount", cfg.tcount, "grid size");
    auto* opt_tscale = thermo->add_option("--tscale", cfg.tscale, "grid spacing: log|linear");
    std::string methods_csv;
    auto* opt_methods =
        thermo->add_option("--methods", methods_csv, "comma-separated method list");
    auto* opt_out = thermo->add_option("--out", cfg.out, "output path (default stdout)");
    auto* opt_format = thermo->add_option("--format", cfg.format, "csv|json");

    PotentialSpec table_spec;
    std::vector<double> gstate_lambdas(kDefaultCouplings.begin(), kDefaultCouplings.end());
    std::string table_out, table_format = "csv";
    CLI::App* gstate =
        app.add_subcommand("gstate", "Ground-state energy: spectral vs zero-mode estimate");
    gstate->add_option("--lambda", gstate_lambdas, "quartic couplings")->delimiter(',');
    gstate->add_option("--mass", table_spec.m, "particle mass");
    gstate->add_option("--omega", table_spec.omega, "harmonic frequency");
    gstate->add_option("--out", table_out, "output path (default stdout)");
    gstate->add_option("--format", table_format, "csv|json");

    std::vector<double> tmin_lambdas;
    CLI::App* tmin = app.add_subcommand("tmin", "Validity boundary of the quadratic weight");
    tmin->add_option("--lambda", tmin_lambdas, "quartic coupling grid")
        ->delimiter(',')
        ->required();
    tmin->add_option("--mass", table_spec.m, "particle mass");
    tmin->add_option("--omega", table_spec.omega, "harmonic frequency");
    tmin->add_option("--out", table_out, "output path (default stdout)");
    tmin->add_option("--format", table_format, "csv|json");

    CLI::App* check = app.add_subcommand("check", "Run the named invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (thermo->parsed()) {
            if (*opt_config) {
                // File first, then explicit flags override its keys.
                RunConfig file_cfg;
                apply_config_file(config_path, file_cfg);
                if (!*opt_mass) cfg.spec.m = file_cfg.spec.m;
                if (!*opt_omega) cfg.spec.omega = file_cfg.spec.omega;
                if (!*opt_lambda) cfg.spec.lambda = file_cfg.spec.lambda;
                if (!*opt_tmin) cfg.tmin = file_cfg.tmin;
                if (!*opt_tmax) cfg.tmax = file_cfg.tmax;
                if (!*opt_tcount) cfg.tcount = file_cfg.tcount;
                if (!*opt_tscale) cfg.tscale = file_cfg.tscale;
                if (!*opt_methods) cfg.methods = file_cfg.methods;
                if (!*opt_out) cfg.out = file_cfg.out;
                if (!*opt_format) cfg.format = file_cfg.format;
                cfg.quad = file_cfg.quad;
            }
            if (*opt_methods) cfg.methods = split_methods(methods_csv);
            return cmd_thermo(cfg);
        }
        if (gstate->parsed())
            return cmd_gstate(table_spec, gstate_lambdas, table_out, table_format);
        if (tmin->parsed()) return cmd_tmin(table_spec, tmin_lambdas, table_out, table_format);
        if (check->parsed()) return run_invariant_suite(std::cout) ? 0 : 1;
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace zerotherm
