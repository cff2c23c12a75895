#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "weakmeas/weakvalues.hpp"

namespace weakmeas {

/// Inclusive range sampled at `steps` evenly spaced values (one value when steps = 1).
struct SweepAxis {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int steps = 1;

    std::vector<double> values() const;
};

/// Two swept axes over (alpha_r, alpha_i) or (eta, n_th); the others stay fixed.
struct SweepConfig {
    std::string figure;
    ProfileObservable observable = ProfileObservable::H;
    SweepAxis x;
    SweepAxis y;
    double alpha_r = 0.0;
    double alpha_i = 0.0;
    double n_th = 0.0;
    double eta = 1.0;

    /// Throws DomainError for steps < 1, η outside (0, 1] or negative n_th anywhere on the sweep.
    void validate() const;
};

const std::vector<std::string>& figure_ids();

/// Defaults for a figure id; throws DomainError for unknown ids.
SweepConfig figure_defaults(const std::string& figure_id);

struct FigureRow {
    double x = 0.0;
    double y = 0.0;
    double probability = 0.0;
};

struct FigureTable {
    SweepConfig config;
    std::vector<FigureRow> rows;  // x outer, y inner
};

/// P[Re ν_w < 0] over the sweep; closed form where it exists, quadrature otherwise.
FigureTable compute_figure(const SweepConfig& config);

/// Header `x_name,y_name,probability` then one row per cell at 17 significant digits.
void write_figure_csv(const FigureTable& table, std::ostream& out);

}  // namespace weakmeas
