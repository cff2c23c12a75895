#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weakmeas/fockspace.hpp"
#include "weakmeas/povm.hpp"
#include "weakmeas/quadrature.hpp"

namespace weakmeas {

/// Real Gaussian wavefunction component of a mixed pointer; `boost` multiplies
/// the wavefunction by e^{i·boost·Q} and gives the component a current.
struct GaussianComponent {
    double weight = 1.0;
    double center = 0.0;
    double sigma = 1.0;
    double boost = 0.0;
};

enum class PointerKind { gaussian_mixture, fock_mode, qubit };

/// Initial state ρ_a of the measuring device.
class PointerState {
  public:
    static PointerState gaussian(double sigma = 1.0, double center = 0.0);
    /// Weights must be nonnegative and sum to 1; widths positive.
    static PointerState mixture(std::vector<GaussianComponent> components);
    static PointerState fock_mode(DensityOperator state);
    /// ρ_a = (1 + s_x σ_x + s_y σ_y)/2 with s_x² + s_y² ≤ 1.
    static PointerState qubit(double s_x, double s_y);

    PointerKind kind() const { return kind_; }
    const std::vector<GaussianComponent>& components() const { return components_; }
    const std::optional<DensityOperator>& mode() const { return mode_; }
    double s_x() const { return s_x_; }
    double s_y() const { return s_y_; }

    /// Position readout grid covering every component to 12σ (mixtures) or the mode's support.
    QuadratureGrid default_grid(double extra_reach = 0.0, int nodes = 200) const;

    /// ⟨x|ρ_a|y⟩ for mixtures.
    Complex position_element(double x, double y) const;

  private:
    PointerKind kind_ = PointerKind::gaussian_mixture;
    std::vector<GaussianComponent> components_;
    std::optional<DensityOperator> mode_;
    double s_x_ = 0.0;
    double s_y_ = 0.0;
};

/// Joint object-pointer state after the impulse e^{−iε ν⊗P}, held exactly as
/// Σ_kl ρ̃_kl |v_k⟩⟨v_l| ⊗ T(a_k) ρ_a T(a_l)† where ν v_k = λ_k v_k and the pointer
/// translations a_k accumulate ε λ_k per impulse.
class JointState {
  public:
    const ComplexMatrix& eigenvectors() const { return eigenvectors_; }
    const RealVector& eigenvalues() const { return eigenvalues_; }
    /// Object state in the ν eigenbasis.
    const ComplexMatrix& object_in_eigenbasis() const { return object_; }
    const RealVector& translations() const { return translations_; }
    const PointerState& pointer() const { return pointer_; }
    double epsilon() const { return epsilon_; }
    int dim() const { return static_cast<int>(eigenvalues_.size()); }
    /// ρ_s before the impulse; the object marginal is never changed by it.
    const DensityOperator& object_state() const { return *object_state_; }

    /// Applies one more impulse of strength `epsilon`.
    JointState then(double epsilon) const;

  private:
    friend JointState evolve_exact(const DensityOperator&, const PointerState&, const Observable&, double);
    ComplexMatrix eigenvectors_;
    RealVector eigenvalues_;
    ComplexMatrix object_;
    RealVector translations_;
    PointerState pointer_;
    double epsilon_ = 0.0;
    std::optional<DensityOperator> object_state_;
};

/// Exact evolution to all orders in ε. Needs a Hermitian ν and a Gaussian-mixture pointer.
JointState evolve_exact(const DensityOperator& rho_s, const PointerState& pointer, const Observable& nu,
                        double epsilon);

/// ρ_ε(φ, Q) = Tr(Π̂_φ Π̂_Q ρ_ε) on a (φ, Q) grid.
struct JointOutcomeTable {
    QuadratureGrid phi;
    QuadratureGrid q;
    RealMatrix values;  // rows φ, columns Q
    double epsilon = 0.0;
    std::vector<std::string> warnings;

    double total_mass() const;
    /// ∫ dQ ρ_ε(φ_j, Q) for every row.
    RealVector phi_marginal() const;
    /// E(Q | φ_j).
    double conditional_mean(std::size_t row) const;
};

JointOutcomeTable joint_distribution(const JointState& joint, const DetectorKernel& kernel_phi,
                                     const DetectorKernel& kernel_q, const QuadratureGrid& phi_grid,
                                     const QuadratureGrid& q_grid);

/// [E_ε(Q|φ) − E_0(Q|φ)] / ε, an estimate of Re ν_w(φ). `phi` must be a node of both
/// tables. Returns 0 at ε = 0; throws UndefinedWeakValue when the φ row is empty.
double conditional_pointer_shift(const JointOutcomeTable& table, double phi, const JointOutcomeTable& baseline);

struct CurrentReport {
    double max_violation = 0.0;
    double location = 0.0;
    bool passed(double tolerance = 1e-8) const { return max_violation <= tolerance; }
};

/// max |⟨Q|(Pρ_a + ρ_a P)|Q⟩| over the pointer grid; for a qubit the two σ_x
/// eigenstates with σ_z in place of P.
CurrentReport check_zero_current(const PointerState& pointer);

/// Cross-Kerr coupling H = ε n_a n_b with homodyne readout of mode b.
struct KerrResponse {
    double conditional_mean = 0.0;  // E_ε(X_θ | q)
    double baseline_mean = 0.0;     // E_0(X_θ | q)
    double shift = 0.0;             // (E_ε − E_0)/ε
    double gain = 0.0;              // d⟨X_θ⟩/dε per photon of mode a
    double photon_estimate = 0.0;   // shift / gain
    double phase_shift = 0.0;       // arg⟨b⟩_0 − arg⟨b⟩_ε given q
};

KerrResponse simulate_cross_kerr(const DensityOperator& mode_a, const DensityOperator& pointer_b, double epsilon,
                                 double readout_phase, double postselect_q,
                                 const DetectorKernel& kernel = DetectorKernel::delta());

/// Two-level pointer with H = ε n σ_z, postselected on the field quadrature.
struct QubitResponse {
    double sigma_x = 0.0;  // ⟨σ_x | q⟩ at ε
    double sigma_y = 0.0;
    double slope_x = 0.0;  // symmetric-difference response in ε
    double slope_y = 0.0;
    double photon_estimate = 0.0;  // Bloch-vector rotation angle / (2ε)
    double reference = 0.0;        // Re n_w(q) by the trace formula
    double ratio_y = 0.0;          // slope_y / reference, measured proportionality
};

QubitResponse simulate_qubit_pointer(const DensityOperator& rho_s, const PointerState& qubit, double epsilon,
                                     double postselect_q, const DetectorKernel& kernel = DetectorKernel::delta());

}  // namespace weakmeas
