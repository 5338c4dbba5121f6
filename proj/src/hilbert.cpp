// hilbert.cpp: Hilbert spaces, operators, and state preparation

#include "srotto/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "srotto/errors.hpp"

namespace srotto {

namespace {

Matrix kron(const Matrix& a, const Matrix& b)
{
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double min_eigenvalue(const Matrix& m)
{
    const Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

// Square root of a Hermitian PSD matrix; negative roundoff eigenvalues are clipped.
Matrix psd_sqrt(const Matrix& m)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
    const RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

void require_same_space(const DensityMatrix& a, const DensityMatrix& b)
{
    require(a.space() == b.space(), ErrorKind::RepresentationMismatch,
            "states live on different Hilbert spaces");
}

} // namespace

// ---------------------------------------------------------------------------
// HilbertSpace

HilbertSpace HilbertSpace::fock(int n_max)
{
    require(n_max >= 1, ErrorKind::InvalidArgument, "Fock cutoff n_max must be >= 1");
    return HilbertSpace(Kind::Fock, n_max, n_max + 1);
}

HilbertSpace HilbertSpace::collective_spin(int atoms)
{
    require(atoms >= 1, ErrorKind::InvalidArgument, "collective spin requires N >= 1 atoms");
    return HilbertSpace(Kind::CollectiveSpin, atoms, atoms + 1);
}

HilbertSpace HilbertSpace::product_spin(int atoms, int cap)
{
    require(atoms >= 1, ErrorKind::InvalidArgument, "product spin requires N >= 1 atoms");
    if (atoms > cap) {
        std::ostringstream os;
        os << "product-spin representation with N=" << atoms << " needs dimension 2^" << atoms
           << " = " << (Index{1} << atoms) << " (cap is N=" << cap << ")";
        fail(ErrorKind::ResourceLimit, os.str());
    }
    return HilbertSpace(Kind::ProductSpin, atoms, Index{1} << atoms);
}

HilbertSpace HilbertSpace::composite(const std::vector<HilbertSpace>& factors)
{
    require(!factors.empty(), ErrorKind::InvalidArgument, "composite space needs factors");
    HilbertSpace out(Kind::Composite, 0, 1);
    for (const auto& f : factors) {
        for (auto&& leaf : f.factors()) {
            out.dim_ *= leaf.dim();
            out.factors_.push_back(std::move(leaf));
        }
    }
    if (out.factors_.size() == 1) {
        return out.factors_.front();
    }
    return out;
}

int HilbertSpace::n_max() const
{
    require(kind_ == Kind::Fock, ErrorKind::RepresentationMismatch, "space is not a Fock space");
    return param_;
}

int HilbertSpace::atoms() const
{
    require(is_spin(), ErrorKind::RepresentationMismatch, "space is not a spin space");
    return param_;
}

std::vector<HilbertSpace> HilbertSpace::factors() const
{
    if (factors_.empty()) {
        return {*this};
    }
    return factors_;
}

bool HilbertSpace::operator==(const HilbertSpace& other) const
{
    return kind_ == other.kind_ && param_ == other.param_ && dim_ == other.dim_ &&
           factors_ == other.factors_;
}

// ---------------------------------------------------------------------------
// OperatorMatrix / DensityMatrix

OperatorMatrix::OperatorMatrix(HilbertSpace s, Matrix m) : space(std::move(s)), entries(std::move(m))
{
    require(entries.rows() == space.dim() && entries.cols() == space.dim(),
            ErrorKind::InvalidArgument, "operator dimension does not match its space");
}

bool OperatorMatrix::is_hermitian(double tol) const
{
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix::DensityMatrix(HilbertSpace space, Matrix entries, std::nullptr_t)
    : space_(std::move(space)), entries_(std::move(entries))
{
    require(entries_.rows() == space_.dim() && entries_.cols() == space_.dim(),
            ErrorKind::InvalidArgument, "density matrix dimension does not match its space");
}

DensityMatrix::DensityMatrix(HilbertSpace space, Matrix entries, const StateTolerance& tol)
    : DensityMatrix(std::move(space), std::move(entries), nullptr)
{
    const StateCheck c = check();
    if (c.trace_error > tol.trace || c.hermiticity_error > tol.hermiticity ||
        c.min_eigenvalue < tol.positivity) {
        std::ostringstream os;
        os << "invalid density matrix: |Tr-1|=" << c.trace_error
           << " hermiticity=" << c.hermiticity_error << " min eigenvalue=" << c.min_eigenvalue;
        fail(ErrorKind::InvalidState, os.str());
    }
}

DensityMatrix DensityMatrix::unchecked(HilbertSpace space, Matrix entries)
{
    return DensityMatrix(std::move(space), std::move(entries), nullptr);
}

StateCheck DensityMatrix::check() const
{
    StateCheck c;
    c.trace_error = std::abs(entries_.trace() - cplx{1.0, 0.0});
    c.hermiticity_error = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    c.min_eigenvalue = min_eigenvalue(entries_);
    return c;
}

cplx DensityMatrix::expectation(const Matrix& op) const
{
    // Tr(rho op) without forming the product.
    return (entries_.transpose().cwiseProduct(op)).sum();
}

RealVector DensityMatrix::populations() const
{
    return entries_.diagonal().real();
}

ThermalParams::ThermalParams(double t, double w) : temperature(t), frequency(w)
{
    require(temperature > 0.0, ErrorKind::InvalidArgument, "temperature must be > 0");
    require(frequency > 0.0, ErrorKind::InvalidArgument, "frequency must be > 0");
}

// ---------------------------------------------------------------------------
// Operator builders

BosonOps make_boson_ops(const HilbertSpace& space)
{
    require(space.kind() == HilbertSpace::Kind::Fock, ErrorKind::RepresentationMismatch,
            "boson operators need a Fock space");
    const Index d = space.dim();
    Matrix a = Matrix::Zero(d, d);
    for (Index n = 1; n < d; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    Matrix a_dag = a.adjoint();
    Matrix n_op = a_dag * a;
    return {{space, std::move(a)}, {space, std::move(a_dag)}, {space, std::move(n_op)}};
}

SpinOps make_collective_spin_ops(const HilbertSpace& space)
{
    require(space.kind() == HilbertSpace::Kind::CollectiveSpin, ErrorKind::RepresentationMismatch,
            "collective spin operators need a CollectiveSpin space");
    const int n_atoms = space.atoms();
    const double j = 0.5 * n_atoms;
    const Index d = space.dim();
    // Basis index k holds m = k - j.
    Matrix sp = Matrix::Zero(d, d);
    Matrix sz = Matrix::Zero(d, d);
    for (Index k = 0; k < d; ++k) {
        const double m = static_cast<double>(k) - j;
        sz(k, k) = m;
        if (k + 1 < d) {
            sp(k + 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
        }
    }
    Matrix sm = sp.adjoint();
    return {{space, std::move(sp)}, {space, std::move(sm)}, {space, std::move(sz)}};
}

ProductSpinOps make_product_spin_ops(const HilbertSpace& space)
{
    require(space.kind() == HilbertSpace::Kind::ProductSpin, ErrorKind::RepresentationMismatch,
            "per-atom operators need a ProductSpin space");
    const int n_atoms = space.atoms();
    const Index d = space.dim();

    // Single-atom basis: index 0 = |g>, index 1 = |e>.
    Matrix sp1 = Matrix::Zero(2, 2);
    sp1(1, 0) = 1.0;
    Matrix sz1 = Matrix::Zero(2, 2);
    sz1(0, 0) = -1.0;
    sz1(1, 1) = 1.0;

    ProductSpinOps out{{}, {}, {},
                       {{space, Matrix::Zero(d, d)}, {space, Matrix::Zero(d, d)},
                        {space, Matrix::Zero(d, d)}}};
    // Atom 0 is the most significant factor of the product basis.
    for (int i = 0; i < n_atoms; ++i) {
        const Index left = Index{1} << i;
        const Index right = Index{1} << (n_atoms - 1 - i);
        const Matrix il = Matrix::Identity(left, left);
        const Matrix ir = Matrix::Identity(right, right);
        Matrix sp = kron(kron(il, sp1), ir);
        Matrix sz = kron(kron(il, sz1), ir);
        Matrix sm = sp.adjoint();
        out.collective.s_plus.entries += sp;
        out.collective.s_minus.entries += sm;
        out.collective.s_z.entries += 0.5 * sz;
        out.sigma_plus.emplace_back(space, std::move(sp));
        out.sigma_minus.emplace_back(space, std::move(sm));
        out.sigma_z.emplace_back(space, std::move(sz));
    }
    return out;
}

SpinOps make_spin_ops(const HilbertSpace& space)
{
    if (space.kind() == HilbertSpace::Kind::ProductSpin) {
        return make_product_spin_ops(space).collective;
    }
    return make_collective_spin_ops(space);
}

OperatorMatrix identity(const HilbertSpace& space)
{
    return {space, Matrix::Identity(space.dim(), space.dim())};
}

OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b)
{
    return {HilbertSpace::composite({a.space, b.space}), kron(a.entries, b.entries)};
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b)
{
    auto out = DensityMatrix::unchecked(HilbertSpace::composite({a.space(), b.space()}),
                                        kron(a.entries(), b.entries()));
    if (a.truncation_warning() || b.truncation_warning()) {
        out.flag_truncation();
    }
    return out;
}

OperatorMatrix embed(const OperatorMatrix& op, const HilbertSpace& space, std::size_t factor)
{
    const auto fs = space.factors();
    require(factor < fs.size(), ErrorKind::InvalidArgument, "factor index out of range");
    require(fs[factor] == op.space, ErrorKind::RepresentationMismatch,
            "operator space does not match the target factor");
    Index left = 1;
    Index right = 1;
    for (std::size_t k = 0; k < fs.size(); ++k) {
        if (k < factor) {
            left *= fs[k].dim();
        } else if (k > factor) {
            right *= fs[k].dim();
        }
    }
    Matrix m = kron(kron(Matrix::Identity(left, left), op.entries), Matrix::Identity(right, right));
    return {space, std::move(m)};
}

// ---------------------------------------------------------------------------
// Partial trace

Matrix partial_trace_right(const Matrix& rho, Index left_dim, Index right_dim)
{
    Matrix out = Matrix::Zero(left_dim, left_dim);
    for (Index i = 0; i < left_dim; ++i) {
        for (Index j = 0; j < left_dim; ++j) {
            out(i, j) = rho.block(i * right_dim, j * right_dim, right_dim, right_dim).trace();
        }
    }
    return out;
}

Matrix partial_trace_left(const Matrix& rho, Index left_dim, Index right_dim)
{
    Matrix out = Matrix::Zero(right_dim, right_dim);
    for (Index i = 0; i < left_dim; ++i) {
        out += rho.block(i * right_dim, i * right_dim, right_dim, right_dim);
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep)
{
    const auto fs = rho.space().factors();
    require(fs.size() >= 2, ErrorKind::InvalidArgument,
            "partial trace needs a composite space with at least two factors");
    require(keep < fs.size(), ErrorKind::InvalidArgument, "factor index out of range");

    Index left = 1;
    Index right = 1;
    for (std::size_t k = 0; k < fs.size(); ++k) {
        if (k < keep) {
            left *= fs[k].dim();
        } else if (k > keep) {
            right *= fs[k].dim();
        }
    }
    const Index mid = fs[keep].dim();
    // Trace out the right block first, then the left block.
    Matrix m = right > 1 ? partial_trace_right(rho.entries(), left * mid, right) : rho.entries();
    if (left > 1) {
        m = partial_trace_left(m, left, mid);
    }
    auto out = DensityMatrix::unchecked(fs[keep], std::move(m));
    if (rho.truncation_warning()) {
        out.flag_truncation();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Matrix exponentials

Matrix unitary_exp(const Matrix& hermitian, double t)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (hermitian + hermitian.adjoint()));
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (Index k = 0; k < phases.size(); ++k) {
        phases(k) = std::polar(1.0, -t * es.eigenvalues()(k));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix anti_hermitian_exp(const Matrix& generator)
{
    // G anti-Hermitian => H = iG Hermitian, exp(G) = exp(-iH).
    const Matrix h = cplx{0.0, 1.0} * generator;
    return unitary_exp(h, 1.0);
}

// ---------------------------------------------------------------------------
// States

DensityMatrix thermal_state(const HilbertSpace& space, const ThermalParams& params,
                            const OperatorMatrix& hamiltonian)
{
    require(hamiltonian.space == space, ErrorKind::RepresentationMismatch,
            "Hamiltonian lives on a different space");
    require(hamiltonian.is_hermitian(1e-10), ErrorKind::InvalidArgument,
            "thermal state needs a Hermitian Hamiltonian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian.entries);
    const RealVector& e = es.eigenvalues();
    // Shift by the ground energy so that T -> 0 does not underflow.
    const double e0 = e.minCoeff();
    RealVector w(e.size());
    for (Index k = 0; k < e.size(); ++k) {
        w(k) = std::exp(-(e(k) - e0) / params.temperature);
    }
    w /= w.sum();
    Matrix rho = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
    return DensityMatrix(space, 0.5 * (rho + rho.adjoint()));
}

DensityMatrix thermal_field(const HilbertSpace& space, const ThermalParams& params)
{
    const auto ops = make_boson_ops(space);
    return thermal_state(space, params, {space, params.frequency * ops.n_op.entries});
}

DensityMatrix thermal_atoms(const HilbertSpace& space, const ThermalParams& params)
{
    // On the collective space this is the Gibbs state of omega S_z, i.e. the product
    // thermal state restricted to the symmetric j = N/2 block and renormalized.
    const SpinOps ops = make_spin_ops(space);
    return thermal_state(space, params, {space, params.frequency * ops.s_z.entries});
}

Matrix rotation_operator(const HilbertSpace& space, const RotationParams& params)
{
    const SpinOps ops = make_spin_ops(space);
    const cplx zeta = params.zeta();
    const Matrix gen = zeta * ops.s_plus.entries - std::conj(zeta) * ops.s_minus.entries;
    return anti_hermitian_exp(gen);
}

DensityMatrix rotate_cluster(const DensityMatrix& rho_prime, const RotationParams& params)
{
    require(rho_prime.space().is_spin(), ErrorKind::RepresentationMismatch,
            "cluster rotation needs a spin space");
    const Matrix r = rotation_operator(rho_prime.space(), params);
    const double unitarity =
        (r * r.adjoint() - Matrix::Identity(r.rows(), r.cols())).cwiseAbs().maxCoeff();
    require(unitarity <= 1e-10, ErrorKind::Integrity, "rotation operator is not unitary");
    Matrix out = r * rho_prime.entries() * r.adjoint();
    return DensityMatrix(rho_prime.space(), 0.5 * (out + out.adjoint()));
}

Matrix displacement_operator(const HilbertSpace& space, cplx alpha)
{
    const auto ops = make_boson_ops(space);
    const Matrix gen = alpha * ops.a_dag.entries - std::conj(alpha) * ops.a.entries;
    return anti_hermitian_exp(gen);
}

DensityMatrix displaced_thermal_state(const HilbertSpace& space, const ThermalParams& params,
                                      cplx alpha)
{
    require(space.kind() == HilbertSpace::Kind::Fock, ErrorKind::RepresentationMismatch,
            "displaced thermal state needs a Fock space");
    const DensityMatrix th = thermal_field(space, params);
    const double n_th = th.expectation(make_boson_ops(space).n_op.entries).real();
    const Matrix d = displacement_operator(space, alpha);
    Matrix rho = d * th.entries() * d.adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    // Truncated D(alpha) is exactly unitary, so leakage shows up in the top levels,
    // not in the trace.
    DensityMatrix out(space, std::move(rho));
    if (std::norm(alpha) + n_th > space.n_max() / 3.0 || top_level_population(out) > 1e-7) {
        out.flag_truncation();
    }
    return out;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma)
{
    require_same_space(rho, sigma);
    for (const DensityMatrix* s : {&rho, &sigma}) {
        require(min_eigenvalue(s->entries()) >= -1e-8, ErrorKind::InvalidState,
                "fidelity input is not positive semidefinite");
    }
    const Matrix sr = psd_sqrt(rho.entries());
    const Matrix inner = sr * sigma.entries() * sr;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
    const double root_trace = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return std::clamp(root_trace * root_trace, 0.0, 1.0);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma)
{
    require_same_space(rho, sigma);
    const Matrix diff = rho.entries() - sigma.entries();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double top_level_population(const DensityMatrix& rho_field)
{
    const RealVector p = rho_field.populations();
    const Index n = p.size();
    return n >= 2 ? p(n - 1) + p(n - 2) : p(n - 1);
}

Matrix commutator(const Matrix& a, const Matrix& b)
{
    return a * b - b * a;
}

} // namespace srotto
