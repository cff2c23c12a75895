#include "weakmeas/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "weakmeas/errors.hpp"
#include "weakmeas/figures.hpp"
#include "weakmeas/quasiprob.hpp"
#include "weakmeas/vonneumann.hpp"
#include "weakmeas/weakvalues.hpp"

namespace weakmeas {

namespace {

using nlohmann::json;

/// Usage problems detected after parsing (bad files, bad config).
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct StateFlags {
    double alpha_r = 0.0;
    double alpha_i = 0.0;
    double n_th = 0.0;
    double eta = 1.0;
};

CLI::Validator efficiency_check() {
    return CLI::Validator(
        [](std::string& text) -> std::string {
            try {
                const double v = std::stod(text);
                if (v > 0.0 && v <= 1.0) return {};
            } catch (const std::exception&) {
            }
            return "eta must be a number in (0, 1]";
        },
        "(0,1]");
}

void add_state_flags(CLI::App* app, StateFlags& s) {
    app->add_option("--alpha-r", s.alpha_r, "real coherent amplitude (position quadrature units)");
    app->add_option("--alpha-i", s.alpha_i, "imaginary coherent amplitude (momentum quadrature units)");
    app->add_option("--nth", s.n_th, "thermal occupation number")->check(CLI::NonNegativeNumber);
    app->add_option("--eta", s.eta, "detector quantum efficiency")->check(efficiency_check());
}

json state_json(const StateFlags& s) {
    return {{"alpha_r", s.alpha_r}, {"alpha_i", s.alpha_i}, {"nth", s.n_th}, {"eta", s.eta}};
}

StateParameters to_parameters(const StateFlags& s) {
    return {s.alpha_r, s.alpha_i, s.n_th, sigma_from_efficiency(s.eta)};
}

DensityOperator state_from_flags(const StateFlags& s, int dim, std::optional<int> fock) {
    if (fock) return fock_state(*fock, dim);
    return displaced_thermal_state(amplitude_from_quadratures(s.alpha_r, s.alpha_i), s.n_th, dim);
}

OperatorKind operator_kind(ProfileObservable o) {
    switch (o) {
        case ProfileObservable::p2:
            return OperatorKind::momentum_squared;
        case ProfileObservable::H:
            return OperatorKind::hamiltonian;
        case ProfileObservable::n:
            return OperatorKind::number;
        case ProfileObservable::numeric:
            break;
    }
    throw DomainError("observable has no operator form");
}

const std::vector<std::string> kObservables = {"p2", "H", "n"};

struct WeakValueArgs {
    std::string observable;
    StateFlags state;
    double q = 0.0;
};

void run_weak_value(const WeakValueArgs& a, std::ostream& out) {
    const ProfileObservable obs = profile_observable_from_string(a.observable);
    const StateParameters params = to_parameters(a.state);
    const WeakValueProfile profile = closed_profile(obs, params);
    const Complex value = profile.value(a.q);
    json j;
    j["params"] = state_json(a.state);
    j["params"]["observable"] = a.observable;
    j["params"]["q"] = a.q;
    j["results"] = {{"re", value.real()},
                    {"im", value.imag()},
                    {"category", to_string(classify_strange(profile, a.q))},
                    {"postselection_density", displaced_thermal_marginal(params, a.q)}};
    out << j.dump(2) << '\n';
}

struct AxisFlags {
    std::optional<double> min;
    std::optional<double> max;
    std::optional<int> steps;
};

struct FigureArgs {
    std::string id;
    std::string output;
    std::string format = "csv";
    std::map<std::string, AxisFlags> axes;
    std::optional<double> alpha_r, alpha_i, n_th, eta;
};

void apply_axis(SweepAxis& axis, const std::map<std::string, AxisFlags>& flags) {
    const auto it = flags.find(axis.name);
    if (it == flags.end()) return;
    if (it->second.min) axis.min = *it->second.min;
    if (it->second.max) axis.max = *it->second.max;
    if (it->second.steps) axis.steps = *it->second.steps;
}

void write_to(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& writer) {
    if (path.empty() || path == "-") {
        writer(out);
        return;
    }
    std::ofstream file(path);
    if (!file) throw UsageError("cannot open output file " + path);
    writer(file);
    if (!file) throw UsageError("failed writing " + path);
}

void run_figure(const FigureArgs& a, std::ostream& out) {
    SweepConfig config = figure_defaults(a.id);
    apply_axis(config.x, a.axes);
    apply_axis(config.y, a.axes);
    if (a.alpha_r) config.alpha_r = *a.alpha_r;
    if (a.alpha_i) config.alpha_i = *a.alpha_i;
    if (a.n_th) config.n_th = *a.n_th;
    if (a.eta) config.eta = *a.eta;
    const FigureTable table = compute_figure(config);

    write_to(a.output, out, [&](std::ostream& os) {
        if (a.format == "csv") {
            write_figure_csv(table, os);
            return;
        }
        json rows = json::array();
        for (const auto& r : table.rows) rows.push_back({{config.x.name, r.x}, {config.y.name, r.y}, {"probability", r.probability}});
        json j;
        auto axis_json = [](const SweepAxis& ax) { return json{{"name", ax.name}, {"min", ax.min}, {"max", ax.max}, {"steps", ax.steps}}; };
        j["params"] = {{"figure", config.figure},
                       {"observable", to_string(config.observable)},
                       {"x", axis_json(config.x)},
                       {"y", axis_json(config.y)},
                       {"alpha_r", config.alpha_r},
                       {"alpha_i", config.alpha_i},
                       {"nth", config.n_th},
                       {"eta", config.eta}};
        j["results"] = {{"rows", rows}};
        os << j.dump(2) << '\n';
    });
}

struct DistributionArgs {
    std::string kind = "T";
    std::string xi_basis = "momentum";
    StateFlags state;
    int points = 200;
    std::optional<double> half_width;
    std::optional<int> dim;
    std::string output;
};

std::string summary_line(const std::string& kind, const std::string& basis, const NegativityReport& r) {
    return "# summary kind=" + kind + " xi_basis=" + basis + " min_value=" + format_double(r.min_value) +
           " min_phi=" + format_double(r.min_phi) + " min_xi=" + format_double(r.min_xi) +
           " negative_mass_fraction=" + format_double(r.negative_mass_fraction);
}

DistributionKind distribution_kind(const std::string& s) {
    if (s == "S") return DistributionKind::S;
    if (s == "T") return DistributionKind::T;
    if (s == "S_eta") return DistributionKind::S_eta;
    return DistributionKind::T_eta;
}

void run_distribution(const DistributionArgs& a, std::ostream& out) {
    const int dim = a.dim.value_or(default_cli_dim());
    const DensityOperator rho = state_from_flags(a.state, dim, std::nullopt);
    const double half_width = a.half_width.value_or(default_half_width(rho.mean_occupation()));
    const QuadratureGrid grid = QuadratureGrid::uniform(-half_width, half_width, a.points);
    XiBasis xi = a.xi_basis == "fock" ? XiBasis::fock(dim) : XiBasis::momentum(grid);
    QuasiDistribution s = s_distribution(rho, BasisPair{grid, std::move(xi)});
    const DistributionKind kind = distribution_kind(a.kind);
    if (kind == DistributionKind::S_eta || kind == DistributionKind::T_eta) {
        s = effective_distribution(s, gaussian_kernel(sigma_from_efficiency(a.state.eta)));
    }
    const QuasiDistribution d = (kind == DistributionKind::T || kind == DistributionKind::T_eta) ? t_distribution(s) : s;

    const RealMatrix re = d.values().real();
    const NegativityReport report =
        negativity_scan(re, grid.points(), grid.weights(), d.xi_basis().labels(), d.xi_basis().weights());
    const std::string summary = summary_line(a.kind, a.xi_basis, report);

    write_to(a.output, out, [&](std::ostream& os) {
        os << "phi,xi,re,im\n";
        for (std::size_t j = 0; j < grid.size(); ++j) {
            for (std::size_t k = 0; k < d.xi_basis().size(); ++k) {
                const Complex v = d(j, k);
                os << format_double(grid.point(j)) << ',' << format_double(d.xi_basis().label(k)) << ','
                   << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
            }
        }
        os << summary << '\n';
    });
    if (!a.output.empty() && a.output != "-") out << summary << '\n';
}

std::vector<double> trapezoid_weights(const std::vector<double>& points) {
    if (points.size() < 2) return std::vector<double>(points.size(), 1.0);
    const QuadratureGrid g = QuadratureGrid::uniform(points.front(), points.back(), static_cast<int>(points.size()));
    return {g.weights().begin(), g.weights().end()};
}

void run_summarize(const std::string& path, std::ostream& out) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "phi,xi,re,im") throw UsageError(path + ": missing phi,xi,re,im header");

    std::vector<double> phi, xi;
    std::map<double, std::size_t> phi_index, xi_index;
    std::vector<std::array<double, 3>> cells;
    std::string kind, basis;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# summary", 0) == 0) {
            std::istringstream fields(line.substr(9));
            std::string field;
            while (fields >> field) {
                if (field.rfind("kind=", 0) == 0) kind = field.substr(5);
                if (field.rfind("xi_basis=", 0) == 0) basis = field.substr(9);
            }
            continue;
        }
        if (line[0] == '#') continue;
        double p = 0.0, x = 0.0, re = 0.0, im = 0.0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &p, &x, &re, &im) != 4) {
            throw UsageError(path + ": malformed row: " + line);
        }
        if (phi_index.emplace(p, phi.size()).second) phi.push_back(p);
        if (xi_index.emplace(x, xi.size()).second) xi.push_back(x);
        cells.push_back({p, x, re});
    }
    if (kind.empty() || basis.empty()) throw UsageError(path + ": missing summary line");
    RealMatrix values = RealMatrix::Zero(static_cast<Eigen::Index>(phi.size()), static_cast<Eigen::Index>(xi.size()));
    for (const auto& c : cells) {
        values(static_cast<Eigen::Index>(phi_index[c[0]]), static_cast<Eigen::Index>(xi_index[c[1]])) = c[2];
    }
    const std::vector<double> wphi = trapezoid_weights(phi);
    const std::vector<double> wxi = basis == "fock" ? std::vector<double>(xi.size(), 1.0) : trapezoid_weights(xi);
    out << summary_line(kind, basis, negativity_scan(values, phi, wphi, xi, wxi)) << '\n';
}

struct SimulateArgs {
    std::string coupling = "generic";
    double epsilon = 1e-3;
    std::string observable = "H";
    double pointer_sigma = 1.0;
    double pointer_center = 0.0;
    double pointer_boost = 0.0;
    double postselect_q = 0.0;
    StateFlags state;
    std::optional<int> fock;
    std::optional<int> dim;
    double s_x = 1.0;
    double s_y = 0.0;
    double pointer_amplitude = 2.0;
    int pointer_dim = 30;
    double readout_phase = -std::numbers::pi / 2.0;
};

json richardson(const std::function<double(double)>& estimate, double epsilon, double reference) {
    json r;
    const double full = estimate(epsilon);
    r["shift"] = full;
    r["reference"] = reference;
    r["relative_deviation"] = std::abs(full - reference) / std::max(1.0, std::abs(reference));
    if (epsilon != 0.0) {
        const double half = estimate(epsilon / 2.0);
        r["shift_half_epsilon"] = half;
        const double dh = half - reference;
        r["richardson_ratio"] = dh != 0.0 ? json((full - reference) / dh) : json(nullptr);
    } else {
        r["richardson_ratio"] = nullptr;
    }
    return r;
}

int run_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    const int dim = a.dim.value_or(default_cli_dim());
    const DensityOperator rho = state_from_flags(a.state, dim, a.fock);
    const DetectorKernel kernel = gaussian_kernel(sigma_from_efficiency(a.state.eta));
    const QuadratureGrid state_grid = default_state_grid(rho);

    json j;
    j["params"] = state_json(a.state);
    j["params"]["coupling"] = a.coupling;
    j["params"]["epsilon"] = a.epsilon;
    j["params"]["postselect_q"] = a.postselect_q;
    j["params"]["dim"] = dim;
    if (a.fock) j["params"]["fock"] = *a.fock;

    if (a.coupling == "generic") {
        const PointerState pointer = PointerState::mixture({{1.0, a.pointer_center, a.pointer_sigma, a.pointer_boost}});
        const CurrentReport current = check_zero_current(pointer);
        if (!current.passed()) {
            err << "error: pointer current density violation " << format_double(current.max_violation) << " at Q = "
                << format_double(current.location) << '\n';
            return kExitDomain;
        }
        const Observable nu = make_operator(operator_kind(profile_observable_from_string(a.observable)), dim);
        const double reference = weak_value(nu, rho, kernel, a.postselect_q, state_grid).real();
        const QuadratureGrid phi = QuadratureGrid::from_points({a.postselect_q});
        const double lambda_max = evolve_exact(rho, pointer, nu, 1.0).translations().cwiseAbs().maxCoeff();
        const QuadratureGrid qgrid = pointer.default_grid(std::abs(a.epsilon) * lambda_max, 200);
        const auto baseline = joint_distribution(evolve_exact(rho, pointer, nu, 0.0), kernel, DetectorKernel::delta(), phi, qgrid);
        auto estimate = [&](double eps) {
            const auto table = joint_distribution(evolve_exact(rho, pointer, nu, eps), kernel, DetectorKernel::delta(), phi, qgrid);
            return conditional_pointer_shift(table, a.postselect_q, baseline);
        };
        j["params"]["observable"] = a.observable;
        j["params"]["pointer_sigma"] = a.pointer_sigma;
        j["results"] = richardson(estimate, a.epsilon, reference);
        j["results"]["zero_current_violation"] = current.max_violation;
    } else if (a.coupling == "kerr") {
        const DensityOperator pointer = coherent_state(Complex(a.pointer_amplitude, 0.0), a.pointer_dim);
        const double reference =
            weak_value(make_operator(OperatorKind::number, dim), rho, kernel, a.postselect_q, state_grid).real();
        auto estimate = [&](double eps) {
            return simulate_cross_kerr(rho, pointer, eps, a.readout_phase, a.postselect_q, kernel).photon_estimate;
        };
        const KerrResponse r = simulate_cross_kerr(rho, pointer, a.epsilon, a.readout_phase, a.postselect_q, kernel);
        j["params"]["pointer_amplitude"] = a.pointer_amplitude;
        j["params"]["readout_phase"] = a.readout_phase;
        j["results"] = richardson(estimate, a.epsilon, reference);
        j["results"]["gain"] = r.gain;
        j["results"]["quadrature_shift"] = r.shift;
        j["results"]["phase_shift"] = r.phase_shift;
    } else {
        const PointerState qubit = PointerState::qubit(a.s_x, a.s_y);
        const QubitResponse r = simulate_qubit_pointer(rho, qubit, a.epsilon, a.postselect_q, kernel);
        auto estimate = [&](double eps) {
            return simulate_qubit_pointer(rho, qubit, eps, a.postselect_q, kernel).photon_estimate;
        };
        j["params"]["s_x"] = a.s_x;
        j["params"]["s_y"] = a.s_y;
        j["results"] = richardson(estimate, a.epsilon, r.reference);
        j["results"]["sigma_x"] = r.sigma_x;
        j["results"]["sigma_y"] = r.sigma_y;
        j["results"]["slope_x"] = r.slope_x;
        j["results"]["slope_y"] = r.slope_y;
        j["results"]["ratio_y"] = r.ratio_y;
    }
    out << j.dump(2) << '\n';
    return kExitOk;
}

// Removes --config PATH / --config=PATH and returns the file's contents merged as flags.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string path;
        std::size_t erase = 0;
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            erase = 2;
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            erase = 1;
        } else {
            continue;
        }
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + erase));
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open config file " + path);
        std::stringstream text;
        text << in.rdbuf();
        return merge_config(text.str(), args);
    }
    return args;
}

}  // namespace

int default_cli_dim() {
    if (const char* env = std::getenv("WEAKMEAS_DIM")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 2 && v <= 2000) return static_cast<int>(v);
        throw UsageError("WEAKMEAS_DIM must be an integer in [2, 2000]");
    }
    return kDefaultDim;
}

std::vector<std::string> merge_config(const std::string& json_text, const std::vector<std::string>& args) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw UsageError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("config file must hold a flat JSON object");
    std::vector<std::string> merged = args;
    for (const auto& [key, value] : j.items()) {
        const std::string flag = "--" + key;
        const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (given) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) merged.push_back(flag);
        } else if (value.is_number_integer()) {
            merged.push_back(flag);
            merged.push_back(std::to_string(value.get<long long>()));
        } else if (value.is_number()) {
            merged.push_back(flag);
            merged.push_back(format_double(value.get<double>()));
        } else if (value.is_string()) {
            merged.push_back(flag);
            merged.push_back(value.get<std::string>());
        } else {
            throw UsageError("config key " + key + " must be a scalar");
        }
    }
    return merged;
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weak values, quasi-probabilities and pointer simulations for a harmonic oscillator mode"};
    app.require_subcommand(1);

    WeakValueArgs wv;
    auto* cmd_wv = app.add_subcommand("weak-value", "closed-form weak value at a postselected position");
    cmd_wv->add_option("--observable", wv.observable, "p2, H or n")->required()->check(CLI::IsMember(kObservables));
    add_state_flags(cmd_wv, wv.state);
    cmd_wv->add_option("--q", wv.q, "postselected position")->required();

    FigureArgs fig;
    auto* cmd_fig = app.add_subcommand("figure", "negativity probability sweep");
    cmd_fig->add_option("figure_id", fig.id, "figure id")->required()->check(CLI::IsMember(figure_ids()));
    cmd_fig->add_option("--output", fig.output, "output file (default stdout)");
    cmd_fig->add_option("--format", fig.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    for (const auto& [flag, axis] : std::vector<std::pair<std::string, std::string>>{
             {"alpha-r", "alpha_r"}, {"alpha-i", "alpha_i"}, {"nth", "n_th"}, {"eta", "eta"}}) {
        AxisFlags& f = fig.axes[axis];
        cmd_fig->add_option("--" + flag + "-min", f.min, "sweep minimum when " + axis + " is an axis");
        cmd_fig->add_option("--" + flag + "-max", f.max, "sweep maximum when " + axis + " is an axis");
        cmd_fig->add_option("--" + flag + "-steps", f.steps, "sweep steps when " + axis + " is an axis")
            ->check(CLI::PositiveNumber);
    }
    cmd_fig->add_option("--alpha-r", fig.alpha_r, "fixed alpha_r when not swept");
    cmd_fig->add_option("--alpha-i", fig.alpha_i, "fixed alpha_i when not swept");
    cmd_fig->add_option("--nth", fig.n_th, "fixed n_th when not swept")->check(CLI::NonNegativeNumber);
    cmd_fig->add_option("--eta", fig.eta, "fixed eta when not swept")->check(efficiency_check());

    DistributionArgs dist;
    auto* cmd_dist = app.add_subcommand("distribution", "S or T quasi-probability grid as CSV");
    cmd_dist->add_option("--kind", dist.kind, "S, T, S_eta or T_eta")->check(CLI::IsMember({"S", "T", "S_eta", "T_eta"}));
    cmd_dist->add_option("--xi-basis", dist.xi_basis, "fock or momentum")->check(CLI::IsMember({"fock", "momentum"}));
    add_state_flags(cmd_dist, dist.state);
    cmd_dist->add_option("--points", dist.points, "grid points per position axis")->check(CLI::Range(2, 4000));
    cmd_dist->add_option("--half-width", dist.half_width, "grid half width (default 6 + 2 sqrt(<n>))")->check(CLI::PositiveNumber);
    cmd_dist->add_option("--dim", dist.dim, "Fock truncation")->check(CLI::Range(2, 2000));
    cmd_dist->add_option("--output", dist.output, "output file (default stdout)");

    std::string summarize_path;
    auto* cmd_sum = app.add_subcommand("summarize", "recompute the summary line of a distribution CSV");
    cmd_sum->add_option("csv", summarize_path, "distribution CSV")->required();

    SimulateArgs sim;
    auto* cmd_sim = app.add_subcommand("simulate", "finite-coupling pointer simulation");
    cmd_sim->add_option("--coupling", sim.coupling, "generic, kerr or qubit")->check(CLI::IsMember({"generic", "kerr", "qubit"}));
    cmd_sim->add_option("--epsilon", sim.epsilon, "coupling strength");
    cmd_sim->add_option("--observable", sim.observable, "p2, H or n (generic coupling)")->check(CLI::IsMember(kObservables));
    cmd_sim->add_option("--pointer-sigma", sim.pointer_sigma, "Gaussian pointer width")->check(CLI::PositiveNumber);
    cmd_sim->add_option("--pointer-center", sim.pointer_center, "Gaussian pointer center");
    cmd_sim->add_option("--pointer-boost", sim.pointer_boost, "pointer momentum boost k (e^{ikQ})");
    cmd_sim->add_option("--postselect-q", sim.postselect_q, "postselected position");
    add_state_flags(cmd_sim, sim.state);
    cmd_sim->add_option("--fock", sim.fock, "use the Fock state |k> as the object")->check(CLI::NonNegativeNumber);
    cmd_sim->add_option("--dim", sim.dim, "Fock truncation")->check(CLI::Range(2, 2000));
    cmd_sim->add_option("--s-x", sim.s_x, "qubit pointer s_x");
    cmd_sim->add_option("--s-y", sim.s_y, "qubit pointer s_y");
    cmd_sim->add_option("--pointer-amplitude", sim.pointer_amplitude, "coherent amplitude of the Kerr pointer mode");
    cmd_sim->add_option("--pointer-dim", sim.pointer_dim, "Fock truncation of the Kerr pointer mode")->check(CLI::Range(2, 2000));
    cmd_sim->add_option("--readout-phase", sim.readout_phase, "homodyne phase of the Kerr readout");

    try {
        std::vector<std::string> args = expand_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (cmd_wv->parsed()) run_weak_value(wv, out);
        if (cmd_fig->parsed()) run_figure(fig, out);
        if (cmd_dist->parsed()) run_distribution(dist, out);
        if (cmd_sum->parsed()) run_summarize(summarize_path, out);
        if (cmd_sim->parsed()) return run_simulate(sim, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitOk;
}

}  // namespace weakmeas
