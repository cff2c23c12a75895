#include "weakmeas/figures.hpp"

#include <cstdio>
#include <ostream>

#include "weakmeas/errors.hpp"
#include "weakmeas/povm.hpp"

namespace weakmeas {

std::vector<double> SweepAxis::values() const {
    std::vector<double> out;
    if (steps < 1) throw DomainError("sweep axis " + name + " needs steps >= 1");
    if (steps == 1) return {min};
    out.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        // Endpoints are reproduced exactly.
        out.push_back(i == steps - 1 ? max : min + (max - min) * i / (steps - 1));
    }
    return out;
}

namespace {

bool on_eta_nth_axes(const SweepConfig& c) { return c.x.name == "eta"; }

}  // namespace

void SweepConfig::validate() const {
    for (const auto* axis : {&x, &y}) {
        if (axis->steps < 1) throw DomainError("sweep axis " + axis->name + " needs steps >= 1");
        if (axis->min > axis->max) throw DomainError("sweep axis " + axis->name + " has min > max");
    }
    if (on_eta_nth_axes(*this)) {
        if (!(x.min > 0.0) || x.max > 1.0) throw DomainError("eta range must lie in (0, 1]");
        if (y.min < 0.0) throw DomainError("n_th range must be nonnegative");
    } else {
        if (!(eta > 0.0) || eta > 1.0) throw DomainError("eta must lie in (0, 1]");
        if (n_th < 0.0) throw DomainError("n_th must be nonnegative");
    }
}

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"p2_eta_nth", "h_ideal",   "h_noisy",  "h_eta_nth",
                                                 "n_ideal",    "n_noisy",   "n_eta_nth"};
    return ids;
}

SweepConfig figure_defaults(const std::string& id) {
    const SweepAxis eta_axis{"eta", 0.05, 1.0, 20};
    const SweepAxis nth_axis{"n_th", 0.0, 1.0, 21};
    const SweepAxis ar_axis{"alpha_r", 0.0, 4.0, 81};
    const SweepAxis ai_axis{"alpha_i", -2.0, 2.0, 41};

    SweepConfig c;
    c.figure = id;
    if (id == "p2_eta_nth") {
        c.observable = ProfileObservable::p2;
        c.x = eta_axis;
        c.y = nth_axis;
        c.alpha_r = 1.0;
    } else if (id == "h_ideal" || id == "n_ideal") {
        c.observable = id[0] == 'h' ? ProfileObservable::H : ProfileObservable::n;
        c.x = ar_axis;
        c.y = ai_axis;
    } else if (id == "h_noisy" || id == "n_noisy") {
        c.observable = id[0] == 'h' ? ProfileObservable::H : ProfileObservable::n;
        c.x = ar_axis;
        c.y = ai_axis;
        c.eta = 0.7;
        c.n_th = 0.3;
    } else if (id == "h_eta_nth") {
        c.observable = ProfileObservable::H;
        c.x = eta_axis;
        c.y = nth_axis;
        c.alpha_r = 1.0;
    } else if (id == "n_eta_nth") {
        c.observable = ProfileObservable::n;
        c.x = eta_axis;
        c.y = nth_axis;
        c.alpha_r = 0.1;
    } else {
        throw DomainError("unknown figure id: " + id);
    }
    return c;
}

FigureTable compute_figure(const SweepConfig& config) {
    config.validate();
    FigureTable table{config, {}};
    const auto xs = config.x.values();
    const auto ys = config.y.values();
    table.rows.reserve(xs.size() * ys.size());
    for (double x : xs) {
        for (double y : ys) {
            StateParameters p{config.alpha_r, config.alpha_i, config.n_th, sigma_from_efficiency(config.eta)};
            if (on_eta_nth_axes(config)) {
                p.sigma_eta = sigma_from_efficiency(x);
                p.n_th = y;
            } else {
                p.alpha_r = x;
                p.alpha_i = y;
            }
            const WeakValueProfile profile = closed_profile(config.observable, p);
            const bool closed = config.observable == ProfileObservable::p2 || (p.sigma_eta == 0.0 && p.n_th == 0.0);
            const auto method = closed ? ProbabilityMethod::closed_form : ProbabilityMethod::quadrature;
            table.rows.push_back({x, y, negativity_probability(profile, method).probability});
        }
    }
    return table;
}

void write_figure_csv(const FigureTable& table, std::ostream& out) {
    out << table.config.x.name << ',' << table.config.y.name << ",probability\n";
    char line[128];
    for (const auto& row : table.rows) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", row.x, row.y, row.probability);
        out << line;
    }
}

}  // namespace weakmeas
