// hilbert.hpp: Hilbert spaces, operators, and state preparation for the atom-cavity system

#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace srotto {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr int kDefaultProductSpinCap = 4;

class HilbertSpace {
public:
    enum class Kind { Fock, CollectiveSpin, ProductSpin, Composite };

    static HilbertSpace fock(int n_max);
    static HilbertSpace collective_spin(int atoms);
    static HilbertSpace product_spin(int atoms, int cap = kDefaultProductSpinCap);
    // Nested composites are flattened; factor order is preserved.
    static HilbertSpace composite(const std::vector<HilbertSpace>& factors);

    Kind kind() const noexcept { return kind_; }
    Index dim() const noexcept { return dim_; }
    // Photon cutoff for Fock, atom count for the spin kinds, 0 for Composite.
    int size_param() const noexcept { return param_; }
    int n_max() const;
    int atoms() const;

    // A single-factor space reports itself as its only factor.
    std::vector<HilbertSpace> factors() const;
    std::size_t factor_count() const noexcept { return factors_.empty() ? 1 : factors_.size(); }
    bool is_spin() const noexcept
    {
        return kind_ == Kind::CollectiveSpin || kind_ == Kind::ProductSpin;
    }

    bool operator==(const HilbertSpace& other) const;
    bool operator!=(const HilbertSpace& other) const { return !(*this == other); }

private:
    HilbertSpace(Kind kind, int param, Index dim) : kind_(kind), param_(param), dim_(dim) {}

    Kind kind_;
    int param_;
    Index dim_;
    std::vector<HilbertSpace> factors_;
};

struct OperatorMatrix {
    HilbertSpace space;
    Matrix entries;

    OperatorMatrix(HilbertSpace s, Matrix m);

    bool is_hermitian(double tol = 1e-12) const;
    OperatorMatrix adjoint() const { return {space, entries.adjoint()}; }
};

struct StateCheck {
    double trace_error = 0.0;
    double hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;
};

struct StateTolerance {
    double trace = 1e-8;
    double hermiticity = 1e-10;
    double positivity = -1e-8;
};

class DensityMatrix {
public:
    // Validates trace, Hermiticity and positivity; throws InvalidState on breach.
    DensityMatrix(HilbertSpace space, Matrix entries, const StateTolerance& tol = {});

    // Skips validation; for intermediate integrator states whose checks run elsewhere.
    static DensityMatrix unchecked(HilbertSpace space, Matrix entries);

    const HilbertSpace& space() const noexcept { return space_; }
    const Matrix& entries() const noexcept { return entries_; }
    Index dim() const noexcept { return space_.dim(); }

    StateCheck check() const;
    cplx expectation(const Matrix& op) const;
    RealVector populations() const;

    // Sticky flag set by constructors that detect a truncation problem.
    bool truncation_warning() const noexcept { return truncation_warning_; }
    void flag_truncation() noexcept { truncation_warning_ = true; }

private:
    DensityMatrix(HilbertSpace space, Matrix entries, std::nullptr_t);

    HilbertSpace space_;
    Matrix entries_;
    bool truncation_warning_ = false;
};

struct RotationParams {
    double phi = -M_PI / 2.0;
    double varphi = 0.0;

    // zeta = (phi/2) e^{i varphi}
    cplx zeta() const { return std::polar(phi / 2.0, varphi); }
};

struct ThermalParams {
    double temperature;
    double frequency = 1.0;

    ThermalParams(double t, double w = 1.0);
};

struct BosonOps {
    OperatorMatrix a;
    OperatorMatrix a_dag;
    OperatorMatrix n_op;
};

struct SpinOps {
    OperatorMatrix s_plus;
    OperatorMatrix s_minus;
    OperatorMatrix s_z;
};

struct ProductSpinOps {
    std::vector<OperatorMatrix> sigma_plus;
    std::vector<OperatorMatrix> sigma_minus;
    std::vector<OperatorMatrix> sigma_z;
    SpinOps collective;
};

BosonOps make_boson_ops(const HilbertSpace& space);
SpinOps make_collective_spin_ops(const HilbertSpace& space);
ProductSpinOps make_product_spin_ops(const HilbertSpace& space);
// Collective S+, S-, Sz for either spin representation.
SpinOps make_spin_ops(const HilbertSpace& space);

OperatorMatrix identity(const HilbertSpace& space);
OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
// Embeds an operator on factor `factor` of `space` as I ⊗ .. ⊗ op ⊗ .. ⊗ I.
OperatorMatrix embed(const OperatorMatrix& op, const HilbertSpace& space, std::size_t factor);

DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep);
// Raw-matrix partial trace over a bipartite (left, right) split.
Matrix partial_trace_right(const Matrix& rho, Index left_dim, Index right_dim);
Matrix partial_trace_left(const Matrix& rho, Index left_dim, Index right_dim);

// exp(-i t H) for Hermitian H via eigendecomposition.
Matrix unitary_exp(const Matrix& hermitian, double t = 1.0);
// exp(G) for anti-Hermitian G via eigendecomposition of iG.
Matrix anti_hermitian_exp(const Matrix& generator);

DensityMatrix thermal_state(const HilbertSpace& space, const ThermalParams& params,
                            const OperatorMatrix& hamiltonian);
// Thermal state of the Fock mode with H = omega a†a.
DensityMatrix thermal_field(const HilbertSpace& space, const ThermalParams& params);
// Product of single-atom Gibbs states for H_i = (omega/2) sigma_z.
DensityMatrix thermal_atoms(const HilbertSpace& space, const ThermalParams& params);

DensityMatrix rotate_cluster(const DensityMatrix& rho_prime, const RotationParams& params);
Matrix rotation_operator(const HilbertSpace& space, const RotationParams& params);

Matrix displacement_operator(const HilbertSpace& space, cplx alpha);
DensityMatrix displaced_thermal_state(const HilbertSpace& space, const ThermalParams& params,
                                      cplx alpha);

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Population in the top two Fock levels; used for truncation checks.
double top_level_population(const DensityMatrix& rho_field);

Matrix commutator(const Matrix& a, const Matrix& b);

} // namespace srotto
