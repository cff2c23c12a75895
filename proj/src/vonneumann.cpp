#include "weakmeas/vonneumann.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "weakmeas/errors.hpp"
#include "weakmeas/weakvalues.hpp"

namespace weakmeas {

namespace {

constexpr double kGridReach = 12.0;

double normal_pdf(double x, double mean, double variance) {
    const double z = x - mean;
    return std::exp(-0.5 * z * z / variance) / std::sqrt(2.0 * std::numbers::pi * variance);
}

// Real Gaussian wavefunction with a plane-wave boost, ⟨x|g⟩.
Complex component_amplitude(const GaussianComponent& c, double x) {
    const double norm = std::pow(2.0 * std::numbers::pi * c.sigma * c.sigma, -0.25);
    const double z = x - c.center;
    return norm * std::exp(Complex(-z * z / (4.0 * c.sigma * c.sigma), c.boost * x));
}

// ⟨n|Π̂_q|m⟩ = ∫dq′ Π_q(q′) ψ_n(q′) ψ_m(q′).
RealMatrix postselection_matrix(int dim, const DetectorKernel& kernel, double q, const QuadratureGrid& grid) {
    RealMatrix out = RealMatrix::Zero(dim, dim);
    for (const auto& node : kernel.smearing_nodes(q, grid)) {
        const RealVector psi = hermite_functions(dim, node.point);
        out.noalias() += node.weight * psi * psi.transpose();
    }
    return out;
}

void require_state_dim(const DensityOperator& rho, const Observable& nu) {
    if (rho.dim() != nu.dim()) throw InvalidDimension("state and observable dimensions differ");
}

}  // namespace

PointerState PointerState::gaussian(double sigma, double center) { return mixture({{1.0, center, sigma, 0.0}}); }

PointerState PointerState::mixture(std::vector<GaussianComponent> components) {
    if (components.empty()) throw DomainError("pointer mixture needs at least one component");
    double total = 0.0;
    for (const auto& c : components) {
        if (!(c.weight >= 0.0)) throw DomainError("mixture weights must be nonnegative");
        if (!(c.sigma > 0.0) || !std::isfinite(c.sigma)) throw DomainError("pointer widths must be positive");
        if (!std::isfinite(c.center) || !std::isfinite(c.boost)) throw DomainError("pointer parameters must be finite");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw DomainError("mixture weights must sum to 1");
    PointerState p;
    p.kind_ = PointerKind::gaussian_mixture;
    p.components_ = std::move(components);
    return p;
}

PointerState PointerState::fock_mode(DensityOperator state) {
    PointerState p;
    p.kind_ = PointerKind::fock_mode;
    p.mode_ = std::move(state);
    return p;
}

PointerState PointerState::qubit(double s_x, double s_y) {
    if (!std::isfinite(s_x) || !std::isfinite(s_y) || s_x * s_x + s_y * s_y > 1.0 + 1e-12) {
        throw DomainError("qubit pointer needs s_x^2 + s_y^2 <= 1");
    }
    PointerState p;
    p.kind_ = PointerKind::qubit;
    p.s_x_ = s_x;
    p.s_y_ = s_y;
    return p;
}

QuadratureGrid PointerState::default_grid(double extra_reach, int nodes) const {
    switch (kind_) {
        case PointerKind::gaussian_mixture: {
            double lo = components_.front().center;
            double hi = lo;
            for (const auto& c : components_) {
                lo = std::min(lo, c.center - kGridReach * c.sigma);
                hi = std::max(hi, c.center + kGridReach * c.sigma);
            }
            return QuadratureGrid::gauss_legendre(lo - extra_reach, hi + extra_reach, nodes);
        }
        case PointerKind::fock_mode: {
            const QuadratureGrid g = default_state_grid(*mode_, nodes);
            return QuadratureGrid::gauss_legendre(g.lo() - extra_reach, g.hi() + extra_reach, nodes);
        }
        case PointerKind::qubit:
            break;
    }
    throw UnsupportedCombination("a qubit pointer has no position readout");
}

Complex PointerState::position_element(double x, double y) const {
    if (kind_ == PointerKind::fock_mode) return position_kernel(*mode_, x, y);
    if (kind_ != PointerKind::gaussian_mixture) throw UnsupportedCombination("a qubit pointer has no position readout");
    Complex sum = 0.0;
    for (const auto& c : components_) sum += c.weight * component_amplitude(c, x) * std::conj(component_amplitude(c, y));
    return sum;
}

JointState JointState::then(double epsilon) const {
    if (!std::isfinite(epsilon)) throw DomainError("coupling must be finite");
    JointState next = *this;
    next.translations_ += epsilon * eigenvalues_;
    next.epsilon_ += epsilon;
    return next;
}

JointState evolve_exact(const DensityOperator& rho_s, const PointerState& pointer, const Observable& nu,
                        double epsilon) {
    if (!std::isfinite(epsilon)) throw DomainError("coupling must be finite");
    if (pointer.kind() != PointerKind::gaussian_mixture) {
        throw UnsupportedCombination("exact translation evolution needs a Gaussian-mixture pointer");
    }
    if (!nu.is_hermitian()) throw UnsupportedCombination("the coupled observable must be Hermitian");
    require_state_dim(rho_s, nu);

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(nu.matrix());
    if (solver.info() != Eigen::Success) throw DomainError("eigendecomposition of the observable failed");

    JointState joint;
    joint.eigenvectors_ = solver.eigenvectors();
    joint.eigenvalues_ = solver.eigenvalues();
    joint.object_ = joint.eigenvectors_.adjoint() * rho_s.matrix() * joint.eigenvectors_;
    joint.translations_ = epsilon * joint.eigenvalues_;
    joint.pointer_ = pointer;
    joint.epsilon_ = epsilon;
    joint.object_state_ = rho_s;
    return joint;
}

double JointOutcomeTable::total_mass() const {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < values.rows(); ++j) {
        for (Eigen::Index m = 0; m < values.cols(); ++m) {
            sum += phi.weight(static_cast<std::size_t>(j)) * q.weight(static_cast<std::size_t>(m)) * values(j, m);
        }
    }
    return sum;
}

RealVector JointOutcomeTable::phi_marginal() const {
    RealVector out(values.rows());
    for (Eigen::Index j = 0; j < values.rows(); ++j) {
        double sum = 0.0;
        for (Eigen::Index m = 0; m < values.cols(); ++m) sum += q.weight(static_cast<std::size_t>(m)) * values(j, m);
        out(j) = sum;
    }
    return out;
}

double JointOutcomeTable::conditional_mean(std::size_t row) const {
    const auto j = static_cast<Eigen::Index>(row);
    double mass = 0.0;
    double first = 0.0;
    for (Eigen::Index m = 0; m < values.cols(); ++m) {
        const double w = q.weight(static_cast<std::size_t>(m)) * values(j, m);
        mass += w;
        first += w * q.point(static_cast<std::size_t>(m));
    }
    if (!(mass > 1e-12)) throw UndefinedWeakValue("postselection bin probability below 1e-12");
    return first / mass;
}

JointOutcomeTable joint_distribution(const JointState& joint, const DetectorKernel& kernel_phi,
                                     const DetectorKernel& kernel_q, const QuadratureGrid& phi_grid,
                                     const QuadratureGrid& q_grid) {
    const int dim = joint.dim();
    const ComplexMatrix& rt = joint.object_in_eigenbasis();
    const RealVector& a = joint.translations();

    // Pairs (k, l) that carry weight in ρ̃.
    double scale = 0.0;
    for (Eigen::Index k = 0; k < rt.rows(); ++k) {
        for (Eigen::Index l = 0; l < rt.cols(); ++l) scale = std::max(scale, std::abs(rt(k, l)));
    }
    std::vector<std::pair<int, int>> pairs;
    for (int k = 0; k < dim; ++k) {
        for (int l = 0; l < dim; ++l) {
            if (std::abs(rt(k, l)) > 1e-17 * scale) pairs.emplace_back(k, l);
        }
    }
    const auto np = static_cast<Eigen::Index>(pairs.size());

    // Object factor A_kl(φ) = ∫dφ′ Π_φ(φ′) ⟨φ′|v_k⟩ ρ̃_kl ⟨v_l|φ′⟩.
    const QuadratureGrid state_grid = default_state_grid(joint.object_state());
    ComplexMatrix object_factor(static_cast<Eigen::Index>(phi_grid.size()), np);
    for (std::size_t j = 0; j < phi_grid.size(); ++j) {
        const auto nodes = kernel_phi.smearing_nodes(phi_grid.point(j), state_grid);
        std::vector<double> pts(nodes.size());
        RealVector w(static_cast<Eigen::Index>(nodes.size()));
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            pts[i] = nodes[i].point;
            w(static_cast<Eigen::Index>(i)) = nodes[i].weight;
        }
        const ComplexMatrix u = hermite_matrix(dim, pts).cast<Complex>().transpose() * joint.eigenvectors();
        const ComplexMatrix gram = u.transpose() * w.cast<Complex>().asDiagonal() * u.conjugate();
        for (Eigen::Index p = 0; p < np; ++p) {
            const auto [k, l] = pairs[static_cast<std::size_t>(p)];
            object_factor(static_cast<Eigen::Index>(j), p) = gram(k, l) * rt(k, l);
        }
    }

    // Pointer factor B_kl(Q) = ∫dQ′ Π_Q(Q′) ⟨Q′ − a_k|ρ_a|Q′ − a_l⟩.
    const auto& comps = joint.pointer().components();
    ComplexMatrix pointer_factor(np, static_cast<Eigen::Index>(q_grid.size()));
    const bool analytic = kernel_q.kind() != KernelKind::custom;
    const double s2 = kernel_q.sigma() * kernel_q.sigma();
    const QuadratureGrid pointer_grid = joint.pointer().default_grid(a.cwiseAbs().maxCoeff(), 400);
    for (std::size_t m = 0; m < q_grid.size(); ++m) {
        const double qm = q_grid.point(m);
        std::vector<SmearingNode> nodes;
        if (!analytic) nodes = kernel_q.smearing_nodes(qm, pointer_grid);
        for (Eigen::Index p = 0; p < np; ++p) {
            const auto [k, l] = pairs[static_cast<std::size_t>(p)];
            Complex sum = 0.0;
            if (analytic) {
                const double d = a(k) - a(l);
                const double mid = 0.5 * (a(k) + a(l));
                for (const auto& c : comps) {
                    const double var = c.sigma * c.sigma;
                    sum += c.weight * std::exp(Complex(-d * d / (8.0 * var), -c.boost * d)) *
                           normal_pdf(qm, c.center + mid, var + s2);
                }
            } else {
                for (const auto& node : nodes) {
                    for (const auto& c : comps) {
                        sum += node.weight * c.weight * component_amplitude(c, node.point - a(k)) *
                               std::conj(component_amplitude(c, node.point - a(l)));
                    }
                }
            }
            pointer_factor(p, static_cast<Eigen::Index>(m)) = sum;
        }
    }

    JointOutcomeTable table{phi_grid, q_grid, (object_factor * pointer_factor).real(), joint.epsilon(), {}};
    const double mass = table.total_mass();
    if (std::abs(mass - 1.0) > 1e-8) {
        table.warnings.push_back("joint table mass " + std::to_string(mass) + " differs from 1; grids may not cover the support");
    }
    return table;
}

double conditional_pointer_shift(const JointOutcomeTable& table, double phi, const JointOutcomeTable& baseline) {
    if (table.epsilon == 0.0) return 0.0;
    if (baseline.epsilon != 0.0) throw DomainError("baseline table must be computed at epsilon = 0");
    const std::size_t j = table.phi.find(phi);
    const std::size_t j0 = baseline.phi.find(phi);
    if (j == table.phi.size() || j0 == baseline.phi.size()) throw DomainError("phi is not a node of both tables");
    return (table.conditional_mean(j) - baseline.conditional_mean(j0)) / table.epsilon;
}

CurrentReport check_zero_current(const PointerState& pointer) {
    CurrentReport report;
    auto record = [&report](double value, double where) {
        if (std::abs(value) > report.max_violation) {
            report.max_violation = std::abs(value);
            report.location = where;
        }
    };
    switch (pointer.kind()) {
        case PointerKind::gaussian_mixture: {
            // ⟨Q|P|g⟩⟨g|Q⟩ = −i g′(Q) g(Q)*, so the anticommutator gives 2 Re(−i g′ g*) per component.
            const QuadratureGrid grid = pointer.default_grid();
            for (double q : grid.points()) {
                double sum = 0.0;
                for (const auto& c : pointer.components()) {
                    const Complex g = component_amplitude(c, q);
                    const Complex dg = g * Complex(-(q - c.center) / (2.0 * c.sigma * c.sigma), c.boost);
                    sum += c.weight * 2.0 * (Complex(0.0, -1.0) * dg * std::conj(g)).real();
                }
                record(sum, q);
            }
            break;
        }
        case PointerKind::fock_mode: {
            const DensityOperator& mode = *pointer.mode();
            const ComplexMatrix p = make_operator(OperatorKind::momentum, mode.dim()).matrix();
            const ComplexMatrix anti = p * mode.matrix() + mode.matrix() * p;
            const QuadratureGrid grid = pointer.default_grid();
            for (double q : grid.points()) {
                const ComplexVector psi = hermite_functions(mode.dim(), q).cast<Complex>();
                record((psi.transpose() * anti * psi).value().real(), q);
            }
            break;
        }
        case PointerKind::qubit: {
            Eigen::Matrix2cd rho;
            rho << 0.5, Complex(pointer.s_x(), -pointer.s_y()) / 2.0, Complex(pointer.s_x(), pointer.s_y()) / 2.0, 0.5;
            Eigen::Matrix2cd sz;
            sz << 1.0, 0.0, 0.0, -1.0;
            const Eigen::Matrix2cd anti = sz * rho + rho * sz;
            const double r = 1.0 / std::numbers::sqrt2;
            for (double sign : {1.0, -1.0}) {
                Eigen::Vector2cd v(r, sign * r);
                record((v.adjoint() * anti * v).value().real(), sign);
            }
            break;
        }
    }
    return report;
}

KerrResponse simulate_cross_kerr(const DensityOperator& mode_a, const DensityOperator& pointer_b, double epsilon,
                                 double readout_phase, double postselect_q, const DetectorKernel& kernel) {
    if (!std::isfinite(epsilon) || !std::isfinite(readout_phase)) throw DomainError("coupling and phase must be finite");
    const int da = mode_a.dim();
    const int db = pointer_b.dim();
    const RealMatrix pi = postselection_matrix(da, kernel, postselect_q, default_state_grid(mode_a));

    const ComplexMatrix b = make_operator(OperatorKind::annihilation, db).matrix();
    const Complex rot = std::exp(Complex(0.0, -readout_phase));
    const ComplexMatrix x = (b * rot + b.adjoint() * std::conj(rot)) / std::numbers::sqrt2;
    const ComplexMatrix nb = make_operator(OperatorKind::number, db).matrix();
    const ComplexMatrix& rb = pointer_b.matrix();

    // Tr(O D_n ρ_b D_n′†) = e_nᵀ (Oᵀ ∘ ρ_b) e_n′*, with D_n = diag_m e^{−iεnm}.
    auto conditional = [&](double eps, const ComplexMatrix& op) {
        ComplexMatrix e(da, db);
        for (int n = 0; n < da; ++n) {
            for (int m = 0; m < db; ++m) e(n, m) = std::exp(Complex(0.0, -eps * n * m));
        }
        const ComplexMatrix y = op.transpose().cwiseProduct(rb);
        const ComplexMatrix f = e * y * e.adjoint();
        const ComplexMatrix g = e * rb.diagonal().asDiagonal() * e.adjoint();
        Complex num = 0.0;
        Complex den = 0.0;
        for (int n = 0; n < da; ++n) {
            for (int n2 = 0; n2 < da; ++n2) {
                const Complex w = pi(n2, n) * mode_a(n, n2);
                num += w * f(n, n2);
                den += w * g(n, n2);
            }
        }
        if (!(den.real() > 1e-12)) throw UndefinedWeakValue("postselection probability below 1e-12");
        return num / den;
    };

    KerrResponse r;
    r.conditional_mean = conditional(epsilon, x).real();
    r.baseline_mean = conditional(0.0, x).real();
    r.gain = (Complex(0.0, -1.0) * ((x * nb - nb * x) * rb).trace()).real();
    if (epsilon != 0.0) {
        r.shift = (r.conditional_mean - r.baseline_mean) / epsilon;
        if (r.gain != 0.0) r.photon_estimate = r.shift / r.gain;
        r.phase_shift = std::arg(conditional(0.0, b)) - std::arg(conditional(epsilon, b));
        r.phase_shift = std::remainder(r.phase_shift, 2.0 * std::numbers::pi);
    }
    return r;
}

QubitResponse simulate_qubit_pointer(const DensityOperator& rho_s, const PointerState& qubit, double epsilon,
                                     double postselect_q, const DetectorKernel& kernel) {
    if (qubit.kind() != PointerKind::qubit) throw UnsupportedCombination("the n sigma_z coupling needs a qubit pointer");
    if (!std::isfinite(epsilon)) throw DomainError("coupling must be finite");
    const int dim = rho_s.dim();
    const QuadratureGrid grid = default_state_grid(rho_s);
    const RealMatrix pi = postselection_matrix(dim, kernel, postselect_q, grid);
    const Complex r01 = Complex(qubit.s_x(), -qubit.s_y()) / 2.0;

    // Bloch components (σ_x, σ_y) conditioned on q after e^{−iε n σ_z}.
    auto bloch = [&](double eps) {
        Complex off = 0.0;
        Complex den = 0.0;
        for (int n = 0; n < dim; ++n) {
            for (int m = 0; m < dim; ++m) {
                const Complex w = pi(m, n) * rho_s(n, m);
                if (w == 0.0) continue;
                // R = D_n ρ_a D_m†, D_n = diag(e^{−iεn}, e^{iεn}).
                off += w * std::exp(Complex(0.0, -eps * (n + m))) * r01;
                den += w * std::cos(eps * (n - m));
            }
        }
        if (!(den.real() > 1e-12)) throw UndefinedWeakValue("postselection probability below 1e-12");
        // σ_x = 2 Re R₀₁, σ_y = −2 Im R₀₁ for Hermitian R summed over the pair.
        const Complex c = off / den.real();
        return std::pair<double, double>{2.0 * c.real(), -2.0 * c.imag()};
    };

    QubitResponse r;
    const auto [sx, sy] = bloch(epsilon);
    r.sigma_x = sx;
    r.sigma_y = sy;
    r.reference = weak_value(make_operator(OperatorKind::number, dim), rho_s, kernel, postselect_q, grid).real();
    if (epsilon != 0.0) {
        const auto [sx_minus, sy_minus] = bloch(-epsilon);
        r.slope_x = (sx - sx_minus) / (2.0 * epsilon);
        r.slope_y = (sy - sy_minus) / (2.0 * epsilon);
        const double angle = std::remainder(std::atan2(sy, sx) - std::atan2(qubit.s_y(), qubit.s_x()), 2.0 * std::numbers::pi);
        r.photon_estimate = angle / (2.0 * epsilon);
        if (r.reference != 0.0) r.ratio_y = r.slope_y / r.reference;
    }
    return r;
}

}  // namespace weakmeas
