// lindblad.hpp: Tavis–Cummings / Dicke Hamiltonians and Lindblad master-equation integration

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "srotto/hilbert.hpp"
#include "srotto/rk45.hpp"

namespace srotto {

enum class HamiltonianKind { TavisCummings, Dicke };
enum class SpinRepresentation { Collective, Product };

enum class DissipatorChannel {
    CollectiveLowering,  // S-
    CollectiveDephasing, // S_z
    IndividualLowering,  // sigma_i^- for every atom
    IndividualDephasing, // sigma_i^z for every atom
};

const char* to_string(HamiltonianKind kind) noexcept;
const char* to_string(SpinRepresentation rep) noexcept;
const char* to_string(DissipatorChannel channel) noexcept;
HamiltonianKind parse_hamiltonian_kind(const std::string& s);
SpinRepresentation parse_representation(const std::string& s);
DissipatorChannel parse_channel(const std::string& s);

inline bool is_individual(DissipatorChannel c) noexcept
{
    return c == DissipatorChannel::IndividualLowering || c == DissipatorChannel::IndividualDephasing;
}

struct DissipatorSpec {
    DissipatorChannel channel = DissipatorChannel::CollectiveLowering;
    double gamma = 0.0;
};

struct SystemModel {
    double omega_f = 1.0;
    double omega_a = 1.0;
    double g = 0.19;
    double kappa = 0.03;
    HamiltonianKind hamiltonian_kind = HamiltonianKind::TavisCummings;
    SpinRepresentation representation = SpinRepresentation::Collective;
    std::vector<DissipatorSpec> atomic_dissipators;

    // Throws InvalidArgument / RepresentationMismatch on a bad combination.
    void validate() const;
};

// (atoms, field) composite space for the model's spin representation.
HilbertSpace system_space(const SystemModel& model, int atoms, int n_max);

// Tavis–Cummings: wf a†a + wa Sz + g (a S+ + a† S-)
// Dicke:          wf a†a + wa Sz + g (a + a†)(S+ + S-)
OperatorMatrix build_hamiltonian(const SystemModel& model, const HilbertSpace& space);
OperatorMatrix free_field_hamiltonian(const SystemModel& model, const HilbertSpace& field_space);

struct JumpOperator {
    double rate;
    Matrix op;
};

// Cavity damping plus the model's atomic channels, on an (atoms, field) space.
// A field-only space yields the cavity channel alone.
std::vector<JumpOperator> build_jump_operators(const SystemModel& model, const HilbertSpace& space);

// Dense reference generator:
// -i[H, rho] + sum_k (rate_k / 2)(2 L rho L† - L†L rho - rho L†L)
Matrix lindblad_rhs(const SystemModel& model, const OperatorMatrix& hamiltonian,
                    const DensityMatrix& rho);

// Matrix stored as its nonzero diagonals. Products with dense matrices become a few
// vectorized row/column block updates per diagonal.
class BandedOperator {
public:
    BandedOperator() = default;
    explicit BandedOperator(const Matrix& m, double drop_tol = 0.0);

    Index dim() const noexcept { return dim_; }
    std::size_t band_count() const noexcept { return bands_.size(); }
    BandedOperator adjoint() const;
    BandedOperator scaled(cplx factor) const;
    Matrix to_dense() const;

    // out += factor * this * rho
    void left_multiply_add(const Matrix& rho, Matrix& out, cplx factor = 1.0) const;
    // out += factor * rho * this
    void right_multiply_add(const Matrix& rho, Matrix& out, cplx factor = 1.0) const;

private:
    struct Band {
        Index offset; // column - row
        Index row0;
        Eigen::VectorXcd values; // values(k) = M(row0 + k, row0 + k + offset)
    };

    Index dim_ = 0;
    std::vector<Band> bands_;
};

enum class FrameMode {
    Auto, // interaction picture of H0 = diag(H) when every jump has a fixed energy gap
    Lab,
};

// Precompiled banded form used by the integrator:
// rhs = -i(K rho - rho K†) + sum_k rate_k L_k rho L_k†,  K = H - (i/2) sum_k rate_k L_k†L_k
//
// With FrameMode::Auto and H0 = diag(H), if every L_k maps H0 eigenstates between levels
// with a single energy gap, the dissipator is unchanged in the interaction picture of H0 and
// the remaining Hamiltonian splits into terms H_nu exp(i nu t), grouped by gap nu. evolve()
// integrates that generator and applies the diagonal phases of exp(-i H0 t) exactly, which
// removes the fast Fock-ladder oscillations from step-size control. Resonant Tavis–Cummings
// and free damping leave only nu = 0; Dicke adds the counter-rotating terms at nu = ±2w.
class LindbladGenerator {
public:
    LindbladGenerator(const HilbertSpace& space, const Matrix& hamiltonian,
                      const std::vector<JumpOperator>& jumps, FrameMode frame = FrameMode::Auto);

    static LindbladGenerator for_model(const SystemModel& model, const OperatorMatrix& hamiltonian,
                                       FrameMode frame = FrameMode::Auto);
    static LindbladGenerator free_field(const SystemModel& model, const HilbertSpace& field_space,
                                        FrameMode frame = FrameMode::Auto);

    const HilbertSpace& space() const noexcept { return space_; }
    bool rotating_frame() const noexcept { return frame_energies_.size() > 0; }
    // Number of time-dependent Hamiltonian terms in the interaction picture.
    std::size_t oscillating_terms() const noexcept { return oscillating_.size(); }
    // Maps an interaction-picture state at time t back to the lab frame (identity in the lab frame).
    void to_lab_frame(Matrix& rho, double t) const;
    // Generator actually integrated, evaluated at time t.
    void apply(const Matrix& rho, Matrix& out, double t = 0.0) const;
    Matrix apply(const Matrix& rho, double t = 0.0) const
    {
        Matrix out;
        apply(rho, out, t);
        return out;
    }

private:
    struct Channel {
        BandedOperator op;
        BandedOperator op_dag_scaled; // rate * L†
    };
    struct Oscillating {
        double nu;
        BandedOperator minus_i_h;    // -i H_nu
        BandedOperator plus_i_h_dag; // +i H_nu†
    };

    HilbertSpace space_;
    RealVector frame_energies_;
    BandedOperator minus_i_k_;    // -i K (static part)
    BandedOperator plus_i_k_dag_; // +i K†
    std::vector<Oscillating> oscillating_;
    std::vector<Channel> channels_;
    // Not safe to share one generator across threads.
    mutable Matrix scratch_;
};

struct EvolveOptions {
    IntegratorConfig integrator;
    // Strictly increasing times in (0, duration]; on_sample fires at each.
    std::span<const double> sample_times;
    std::function<void(double, const Matrix&)> on_sample;
    // Raw state after every accepted step, before any guard correction.
    std::function<void(double, const Matrix&)> on_step;
};

struct EvolveReport {
    IntegratorStats stats;
    int guard_checks = 0;
    double worst_trace_drift = 0.0;
    double worst_min_eigenvalue = 0.0;
};

struct EvolveResult {
    DensityMatrix state;
    EvolveReport report;
};

EvolveResult evolve(const LindbladGenerator& gen, const DensityMatrix& rho0, double duration,
                    const EvolveOptions& opts = {});
EvolveResult evolve(const SystemModel& model, const OperatorMatrix& hamiltonian,
                    const DensityMatrix& rho0, double duration, const EvolveOptions& opts = {});
EvolveResult evolve_free_field(const SystemModel& model, const DensityMatrix& rho_f, double duration,
                               const EvolveOptions& opts = {});

// Positivity tolerance applied by the integrity guard.
inline constexpr double kPositivityTolerance = -1e-8;

} // namespace srotto
