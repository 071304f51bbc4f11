// Command-line front end: parameter sweeps, figure-data regeneration and
// Gaussian-state simulation, emitting CSV or JSON for offline plotting.
//
// Exit codes: 0 success, 1 invalid arguments, 2 numeric failure.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dimfibre/capacities.hpp"
#include "dimfibre/errors.hpp"
#include "dimfibre/format.hpp"
#include "dimfibre/netsim.hpp"
#include "dimfibre/spectral.hpp"
#include "dimfibre/toeplitz.hpp"

namespace {

using dimfibre::CapacityKind;
using dimfibre::ChannelParams;
using dimfibre::SymbolModel;
using dimfibre::format_double;
using nlohmann::json;

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;

    std::vector<double> points() const {
        std::vector<double> out;
        out.reserve(static_cast<size_t>(steps));
        if (steps == 1) {
            out.push_back(start);
            return out;
        }
        for (int i = 0; i < steps; ++i) {
            out.push_back(start + (stop - start) * i / (steps - 1));
        }
        return out;
    }
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(text);
    if (!(in >> g.start >> colon1 >> g.stop >> colon2 >> g.steps) || colon1 != ':' ||
        colon2 != ':' || !in.eof()) {
        throw std::invalid_argument("expected start:stop:steps, got '" + text + "'");
    }
    if (g.steps < 1) throw std::invalid_argument("grid steps must be >= 1");
    if (g.start > g.stop) throw std::invalid_argument("grid start must be <= stop");
    return g;
}

SymbolModel parse_model(const std::string& text) {
    if (text == "dim") return SymbolModel::Dim;
    if (text == "lim") return SymbolModel::Lim;
    throw std::invalid_argument("model must be dim or lim, got '" + text + "'");
}

CapacityKind parse_kind(const std::string& text) {
    if (text == "q") return CapacityKind::Q;
    if (text == "q2") return CapacityKind::Q2;
    if (text == "k") return CapacityKind::K;
    throw std::invalid_argument("kind must be q, q2 or k, got '" + text + "'");
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw std::invalid_argument("expected comma-separated integers, got '" + text + "'");
        }
    }
    if (out.empty()) throw std::invalid_argument("integer list must be nonempty");
    return out;
}

// Writes to the path, or stdout when empty or "-".
void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Tabular emitter keeping CSV and JSON output in lockstep. Cell values are
// numbers or fixed enum words, so no JSON escaping is needed.
class RowWriter {
  public:
    RowWriter(std::vector<std::string> columns, json meta)
        : columns_(std::move(columns)), meta_(std::move(meta)) {}

    void add_row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

    std::string render(const std::string& format) const {
        if (format == "csv") return render_csv();
        if (format == "json") return render_json();
        throw std::invalid_argument("format must be csv or json");
    }

  private:
    std::string render_csv() const {
        std::string out;
        for (size_t c = 0; c < columns_.size(); ++c) {
            if (c > 0) out += ',';
            out += columns_[c];
        }
        out += '\n';
        for (const auto& row : rows_) {
            for (size_t c = 0; c < row.size(); ++c) {
                if (c > 0) out += ',';
                out += row[c];
            }
            out += '\n';
        }
        return out;
    }

    std::string render_json() const {
        std::string out = "{\"meta\":";
        out += meta_.dump();
        out += ",\"rows\":[";
        for (size_t r = 0; r < rows_.size(); ++r) {
            if (r > 0) out += ',';
            out += '{';
            for (size_t c = 0; c < columns_.size(); ++c) {
                if (c > 0) out += ',';
                out += '"';
                out += columns_[c];
                out += "\":";
                const std::string& cell = rows_[r][c];
                const bool numeric =
                    !cell.empty() &&
                    (std::isdigit(static_cast<unsigned char>(cell[0])) || cell[0] == '-');
                if (numeric) {
                    out += cell;
                } else {
                    out += '"';
                    out += cell;
                    out += '"';
                }
            }
            out += '}';
        }
        out += "]}\n";
        return out;
    }

    std::vector<std::string> columns_;
    json meta_;
    std::vector<std::vector<std::string>> rows_;
};

json base_meta() {
    json meta;
    meta["tool"] = "dimfibre";
    meta["version"] = DIMFIBRE_VERSION;
    return meta;
}

struct Options {
    double lambda = 0.5;
    double mu = 0.0;
    double nu = 0.0;
    double gamma = 1.0;
    std::string model = "dim";
    std::string kind = "k";
    std::string format = "csv";
    std::string out;
    double tol = 1e-9;
    int n = 16;
    int m_steps = 0;
    std::string grid, lambda_grid, mu_grid;
    std::string m_list, n_list;
    std::string mode = "finite_m";
    std::string state_file;
};

// Config-file values use the long flag names as keys; explicit flags,
// parsed afterwards, override them.
void apply_config(const std::string& path, Options& opt) {
    json cfg;
    try {
        cfg = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed config JSON: ") + e.what());
    }
    const auto get = [&cfg](const char* key, auto& target) {
        if (cfg.contains(key)) cfg.at(key).get_to(target);
    };
    get("lambda", opt.lambda);
    get("mu", opt.mu);
    get("nu", opt.nu);
    get("gamma", opt.gamma);
    get("model", opt.model);
    get("kind", opt.kind);
    get("format", opt.format);
    get("out", opt.out);
    get("tol", opt.tol);
    get("n", opt.n);
    get("m-steps", opt.m_steps);
    get("grid", opt.grid);
    get("lambda-grid", opt.lambda_grid);
    get("mu-grid", opt.mu_grid);
    get("m-list", opt.m_list);
    get("n-list", opt.n_list);
    get("mode", opt.mode);
    get("state", opt.state_file);
}

int cmd_spectrum(const Options& opt) {
    const SymbolModel model = parse_model(opt.model);
    const std::vector<double> eta =
        dimfibre::model_spectrum(opt.n, opt.lambda, opt.mu, opt.gamma, model);
    json meta = base_meta();
    meta["command"] = "spectrum";
    meta["n"] = opt.n;
    meta["lambda"] = opt.lambda;
    meta["mu"] = opt.mu;
    meta["gamma"] = opt.gamma;
    meta["model"] = opt.model;
    RowWriter w({"j", "eta", "eta_symbol"}, meta);
    for (int j = 1; j <= opt.n; ++j) {
        const double x = std::min(kTwoPi, kTwoPi * j / opt.n);
        const double symbol = opt.gamma * dimfibre::eta_symbol(x, opt.lambda, opt.mu, model);
        w.add_row({std::to_string(j), format_double(eta[static_cast<size_t>(j - 1)]),
                   format_double(symbol)});
    }
    write_output(opt.out, w.render(opt.format));
    return 0;
}

int cmd_capacity(const Options& opt) {
    const ChannelParams params{opt.lambda, opt.mu, opt.nu, opt.gamma};
    const dimfibre::CapacityResult r = dimfibre::channel_capacity(
        params, parse_model(opt.model), parse_kind(opt.kind), opt.tol);
    if (opt.format == "json") {
        json doc;
        json meta = base_meta();
        meta["command"] = "capacity";
        doc["meta"] = meta;
        doc["rows"] = json::array({json::parse(dimfibre::to_json(r))});
        write_output(opt.out, doc.dump() + "\n");
        return 0;
    }
    if (opt.format != "csv") throw std::invalid_argument("format must be csv or json");
    RowWriter w({"value", "lower", "upper", "kind", "model", "exact", "nu", "lambda", "mu",
                 "gamma", "quad_points"},
                json());
    w.add_row({format_double(r.value), format_double(r.lower),
               std::isinf(r.upper) ? "inf" : format_double(r.upper),
               dimfibre::to_string(r.kind), dimfibre::to_string(r.model),
               r.is_exact ? "true" : "false", format_double(r.params.nu),
               format_double(r.params.lambda), format_double(r.params.mu),
               format_double(r.params.gamma), std::to_string(r.quadrature_points)});
    write_output(opt.out, w.render("csv"));
    return 0;
}

int cmd_region(const Options& opt) {
    std::string lambda_text = opt.lambda_grid.empty() ? opt.grid : opt.lambda_grid;
    std::string mu_text = opt.mu_grid.empty() ? opt.grid : opt.mu_grid;
    if (lambda_text.empty() || mu_text.empty()) {
        throw std::invalid_argument("region needs --grid or --lambda-grid and --mu-grid");
    }
    const SymbolModel model = parse_model(opt.model);
    const CapacityKind kind = parse_kind(opt.kind);
    const GridSpec lambda_grid = parse_grid(lambda_text);
    const GridSpec mu_grid = parse_grid(mu_text);
    json meta = base_meta();
    meta["command"] = "region";
    meta["kind"] = opt.kind;
    meta["model"] = opt.model;
    meta["nu"] = opt.nu;
    meta["gamma"] = opt.gamma;
    meta["lambda_grid"] = lambda_text;
    meta["mu_grid"] = mu_text;
    RowWriter w({"lambda", "mu", "value", "status"}, meta);
    for (const double lam : lambda_grid.points()) {
        const dimfibre::PositivityThreshold thr =
            dimfibre::dim_positivity_threshold(lam, opt.nu, kind);
        for (const double mu : mu_grid.points()) {
            const ChannelParams cell{lam, mu, opt.nu, opt.gamma};
            const dimfibre::CapacityResult r =
                dimfibre::channel_capacity(cell, model, kind, opt.tol);
            const double sq = std::sqrt(mu);
            const char* status;
            if (thr.exact) {
                status = sq > thr.sqrt_mu ? "positive" : "zero";
            } else if (sq > thr.sqrt_mu_sufficient) {
                status = "positive";
            } else if (sq <= thr.sqrt_mu_necessary) {
                status = "zero";
            } else {
                status = "unknown";
            }
            w.add_row({format_double(lam), format_double(mu), format_double(r.value), status});
        }
    }
    write_output(opt.out, w.render(opt.format));
    return 0;
}

int cmd_converge(const Options& opt) {
    json meta = base_meta();
    meta["command"] = "converge";
    meta["mode"] = opt.mode;
    meta["lambda"] = opt.lambda;
    meta["mu"] = opt.mu;
    if (opt.mode == "finite_m") {
        std::vector<int> m_list;
        if (!opt.m_list.empty()) {
            m_list = parse_int_list(opt.m_list);
        } else if (opt.m_steps > 0) {
            m_list = {opt.m_steps};
        } else {
            throw std::invalid_argument("finite_m mode needs --m-list or --m-steps");
        }
        meta["n"] = opt.n;
        RowWriter w({"m_steps", "max_abs_error"}, meta);
        for (const auto& point : dimfibre::convergence_study(opt.n, opt.lambda, opt.mu, m_list)) {
            w.add_row({std::to_string(point.m_steps), format_double(point.max_abs_error)});
        }
        write_output(opt.out, w.render(opt.format));
        return 0;
    }
    if (opt.mode == "tail") {
        if (opt.n_list.empty()) throw std::invalid_argument("tail mode needs --n-list");
        const SymbolModel model = parse_model(opt.model);
        meta["model"] = opt.model;
        RowWriter w({"n", "j_start", "max_deviation", "outside_fraction"}, meta);
        for (const int n : parse_int_list(opt.n_list)) {
            const dimfibre::TailReport r =
                dimfibre::tail_convergence_report(n, opt.lambda, opt.mu, model);
            w.add_row({std::to_string(r.n), std::to_string(r.j_start),
                       format_double(r.max_deviation), format_double(r.outside_fraction)});
        }
        write_output(opt.out, w.render(opt.format));
        return 0;
    }
    throw std::invalid_argument("mode must be finite_m or tail");
}

int cmd_simulate(const Options& opt) {
    const dimfibre::GaussianState input =
        dimfibre::gaussian_state_from_json(read_file(opt.state_file));
    if (input.n != opt.n) {
        throw std::invalid_argument("state mode count does not match --n");
    }
    const ChannelParams params{opt.lambda, opt.mu, opt.nu, opt.gamma};
    const dimfibre::GaussianState output = dimfibre::propagate_gaussian(input, opt.n, params);
    try {
        output.validate();
    } catch (const std::invalid_argument& e) {
        throw dimfibre::numeric_error(std::string("output state invalid: ") + e.what());
    }
    write_output(opt.out, dimfibre::to_json(output) + "\n");
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"Memory-fibre channel spectra, capacities and state simulation"};
    app.require_subcommand(1);

    Options opt;
    std::string config_path;

    // config file first: flags parsed afterwards override it
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) config_path = argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) config_path = arg.substr(9);
    }
    if (!config_path.empty()) apply_config(config_path, opt);

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file (flags override it)");
        cmd->add_option("--lambda", opt.lambda, "single-signal transmissivity");
        cmd->add_option("--mu", opt.mu, "memory parameter");
        cmd->add_option("--nu", opt.nu, "thermal photon number");
        cmd->add_option("--gamma", opt.gamma, "transversal transmissivity");
        cmd->add_option("--model", opt.model, "symbol model: dim|lim");
        cmd->add_option("--format", opt.format, "output format: csv|json");
        cmd->add_option("--out", opt.out, "output path (default stdout)");
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "effective transmissivities of n uses");
    add_common(spectrum);
    spectrum->add_option("--n", opt.n, "number of channel uses");

    CLI::App* capacity = app.add_subcommand("capacity", "capacity of the memory channel");
    add_common(capacity);
    capacity->add_option("--kind", opt.kind, "capacity kind: q|q2|k");
    capacity->add_option("--tol", opt.tol, "quadrature tolerance");

    CLI::App* region = app.add_subcommand("region", "capacity sweep over a (lambda, mu) grid");
    add_common(region);
    region->add_option("--kind", opt.kind, "capacity kind: q|q2|k");
    region->add_option("--tol", opt.tol, "quadrature tolerance");
    region->add_option("--grid", opt.grid, "start:stop:steps for both lambda and mu");
    region->add_option("--lambda-grid", opt.lambda_grid, "start:stop:steps for lambda");
    region->add_option("--mu-grid", opt.mu_grid, "start:stop:steps for mu");

    CLI::App* converge = app.add_subcommand("converge", "finite-M or spectrum-tail convergence");
    add_common(converge);
    converge->add_option("--mode", opt.mode, "finite_m|tail");
    converge->add_option("--n", opt.n, "channel uses (finite_m mode)");
    converge->add_option("--m-steps", opt.m_steps, "single M value (finite_m mode)");
    converge->add_option("--m-list", opt.m_list, "comma-separated M values (finite_m mode)");
    converge->add_option("--n-list", opt.n_list, "comma-separated n values (tail mode)");

    CLI::App* simulate = app.add_subcommand("simulate", "propagate a Gaussian state");
    add_common(simulate);
    simulate->add_option("--n", opt.n, "number of modes");
    simulate->add_option("--state", opt.state_file, "input GaussianState JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return 1;
    }

    if (spectrum->parsed()) return cmd_spectrum(opt);
    if (capacity->parsed()) return cmd_capacity(opt);
    if (region->parsed()) return cmd_region(opt);
    if (converge->parsed()) return cmd_converge(opt);
    if (simulate->parsed()) return cmd_simulate(opt);
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const dimfibre::numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
