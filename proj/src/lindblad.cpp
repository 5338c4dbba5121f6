// lindblad.cpp: Hamiltonian builders and the Lindblad integrator

#include "srotto/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "srotto/errors.hpp"

namespace srotto {

namespace {

struct AtomFieldSplit {
    HilbertSpace atoms;
    HilbertSpace field;
};

AtomFieldSplit split_atom_field(const HilbertSpace& space)
{
    const auto fs = space.factors();
    require(fs.size() == 2 && fs[0].is_spin() && fs[1].kind() == HilbertSpace::Kind::Fock,
            ErrorKind::RepresentationMismatch,
            "expected an (atoms, field) composite space with the atoms first");
    return {fs[0], fs[1]};
}

double min_hermitian_eigenvalue(const Matrix& m)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

} // namespace

const char* to_string(HamiltonianKind kind) noexcept
{
    return kind == HamiltonianKind::Dicke ? "dicke" : "tavis_cummings";
}

const char* to_string(SpinRepresentation rep) noexcept
{
    return rep == SpinRepresentation::Product ? "product" : "collective";
}

const char* to_string(DissipatorChannel channel) noexcept
{
    switch (channel) {
    case DissipatorChannel::CollectiveLowering: return "collective_lowering";
    case DissipatorChannel::CollectiveDephasing: return "collective_dephasing";
    case DissipatorChannel::IndividualLowering: return "individual_lowering";
    case DissipatorChannel::IndividualDephasing: return "individual_dephasing";
    }
    return "unknown";
}

HamiltonianKind parse_hamiltonian_kind(const std::string& s)
{
    if (s == "tavis_cummings" || s == "tc") return HamiltonianKind::TavisCummings;
    if (s == "dicke") return HamiltonianKind::Dicke;
    fail(ErrorKind::Config, "unknown hamiltonian kind '" + s + "'");
}

SpinRepresentation parse_representation(const std::string& s)
{
    if (s == "collective") return SpinRepresentation::Collective;
    if (s == "product") return SpinRepresentation::Product;
    fail(ErrorKind::Config, "unknown spin representation '" + s + "'");
}

DissipatorChannel parse_channel(const std::string& s)
{
    for (auto c : {DissipatorChannel::CollectiveLowering, DissipatorChannel::CollectiveDephasing,
                   DissipatorChannel::IndividualLowering, DissipatorChannel::IndividualDephasing}) {
        if (s == to_string(c)) return c;
    }
    fail(ErrorKind::Config, "unknown dissipator channel '" + s + "'");
}

void SystemModel::validate() const
{
    require(g >= 0.0, ErrorKind::InvalidArgument, "coupling g must be >= 0");
    require(kappa >= 0.0, ErrorKind::InvalidArgument, "cavity decay kappa must be >= 0");
    require(omega_f > 0.0 && omega_a > 0.0, ErrorKind::InvalidArgument,
            "frequencies must be positive");
    for (const auto& d : atomic_dissipators) {
        require(d.gamma >= 0.0, ErrorKind::InvalidArgument, "dissipator rate gamma must be >= 0");
        if (is_individual(d.channel)) {
            require(representation == SpinRepresentation::Product,
                    ErrorKind::RepresentationMismatch,
                    std::string("channel ") + to_string(d.channel) +
                        " needs the product spin representation");
        }
    }
}

HilbertSpace system_space(const SystemModel& model, int atoms, int n_max)
{
    const HilbertSpace spin = model.representation == SpinRepresentation::Product
                                  ? HilbertSpace::product_spin(atoms)
                                  : HilbertSpace::collective_spin(atoms);
    return HilbertSpace::composite({spin, HilbertSpace::fock(n_max)});
}

OperatorMatrix build_hamiltonian(const SystemModel& model, const HilbertSpace& space)
{
    const auto [atoms, field] = split_atom_field(space);
    const SpinOps s = make_spin_ops(atoms);
    const BosonOps b = make_boson_ops(field);

    const Matrix a = embed(b.a, space, 1).entries;
    const Matrix a_dag = a.adjoint();
    const Matrix sp = embed(s.s_plus, space, 0).entries;
    const Matrix sm = sp.adjoint();
    const Matrix sz = embed(s.s_z, space, 0).entries;

    Matrix h = model.omega_f * (a_dag * a) + model.omega_a * sz;
    if (model.hamiltonian_kind == HamiltonianKind::TavisCummings) {
        h += model.g * (a * sp + a_dag * sm);
    } else {
        h += model.g * ((a + a_dag) * (sp + sm));
    }
    return {space, 0.5 * (h + h.adjoint())};
}

OperatorMatrix free_field_hamiltonian(const SystemModel& model, const HilbertSpace& field_space)
{
    const BosonOps b = make_boson_ops(field_space);
    return {field_space, model.omega_f * b.n_op.entries};
}

std::vector<JumpOperator> build_jump_operators(const SystemModel& model, const HilbertSpace& space)
{
    std::vector<JumpOperator> out;
    if (space.kind() == HilbertSpace::Kind::Fock) {
        if (model.kappa > 0.0) {
            out.push_back({model.kappa, make_boson_ops(space).a.entries});
        }
        return out;
    }

    const auto [atoms, field] = split_atom_field(space);
    if (model.kappa > 0.0) {
        out.push_back({model.kappa, embed(make_boson_ops(field).a, space, 1).entries});
    }
    if (model.atomic_dissipators.empty()) {
        return out;
    }

    const bool product = atoms.kind() == HilbertSpace::Kind::ProductSpin;
    const SpinOps s = make_spin_ops(atoms);
    for (const auto& d : model.atomic_dissipators) {
        if (d.gamma == 0.0) {
            continue;
        }
        switch (d.channel) {
        case DissipatorChannel::CollectiveLowering:
            out.push_back({d.gamma, embed(s.s_minus, space, 0).entries});
            break;
        case DissipatorChannel::CollectiveDephasing:
            out.push_back({d.gamma, embed(s.s_z, space, 0).entries});
            break;
        case DissipatorChannel::IndividualLowering:
        case DissipatorChannel::IndividualDephasing: {
            require(product, ErrorKind::RepresentationMismatch,
                    std::string("channel ") + to_string(d.channel) +
                        " needs the product spin representation");
            const ProductSpinOps ps = make_product_spin_ops(atoms);
            const auto& ops = d.channel == DissipatorChannel::IndividualLowering ? ps.sigma_minus
                                                                                  : ps.sigma_z;
            for (const auto& op : ops) {
                out.push_back({d.gamma, embed(op, space, 0).entries});
            }
            break;
        }
        }
    }
    return out;
}

Matrix lindblad_rhs(const SystemModel& model, const OperatorMatrix& hamiltonian,
                    const DensityMatrix& rho)
{
    require(hamiltonian.space == rho.space(), ErrorKind::RepresentationMismatch,
            "Hamiltonian and state live on different spaces");
    const Matrix& r = rho.entries();
    const cplx i{0.0, 1.0};
    Matrix out = -i * (hamiltonian.entries * r - r * hamiltonian.entries);
    for (const auto& j : build_jump_operators(model, rho.space())) {
        const Matrix ldl = j.op.adjoint() * j.op;
        out += 0.5 * j.rate * (2.0 * j.op * r * j.op.adjoint() - ldl * r - r * ldl);
    }
    return out;
}

// ---------------------------------------------------------------------------
// BandedOperator

BandedOperator::BandedOperator(const Matrix& m, double drop_tol) : dim_(m.rows())
{
    require(m.rows() == m.cols(), ErrorKind::InvalidArgument, "banded operator must be square");
    for (Index off = -(dim_ - 1); off <= dim_ - 1; ++off) {
        const Index row0 = off >= 0 ? 0 : -off;
        const Index len = dim_ - std::abs(off);
        Eigen::VectorXcd v(len);
        bool nonzero = false;
        for (Index k = 0; k < len; ++k) {
            v(k) = m(row0 + k, row0 + k + off);
            nonzero = nonzero || std::abs(v(k)) > drop_tol;
        }
        if (nonzero) {
            bands_.push_back({off, row0, std::move(v)});
        }
    }
}

BandedOperator BandedOperator::adjoint() const
{
    // M(r, r + o) = v  =>  M†(r + o, r) = conj(v), a band at offset -o starting at row r0 + o.
    BandedOperator out;
    out.dim_ = dim_;
    for (auto it = bands_.rbegin(); it != bands_.rend(); ++it) {
        out.bands_.push_back({-it->offset, it->row0 + it->offset, it->values.conjugate()});
    }
    return out;
}

Matrix BandedOperator::to_dense() const
{
    Matrix m = Matrix::Zero(dim_, dim_);
    for (const auto& b : bands_) {
        for (Index k = 0; k < b.values.size(); ++k) {
            m(b.row0 + k, b.row0 + k + b.offset) = b.values(k);
        }
    }
    return m;
}

BandedOperator BandedOperator::scaled(cplx factor) const
{
    BandedOperator out = *this;
    for (auto& b : out.bands_) {
        b.values *= factor;
    }
    return out;
}

void BandedOperator::left_multiply_add(const Matrix& rho, Matrix& out, cplx factor) const
{
    // (M rho)(r, :) += v(r) rho(r + o, :)
    const bool unit = factor == cplx{1.0, 0.0};
    for (const auto& b : bands_) {
        const Index len = b.values.size();
        if (unit) {
            out.middleRows(b.row0, len).noalias() +=
                b.values.asDiagonal() * rho.middleRows(b.row0 + b.offset, len);
        } else {
            out.middleRows(b.row0, len).noalias() +=
                (factor * b.values).asDiagonal() * rho.middleRows(b.row0 + b.offset, len);
        }
    }
}

void BandedOperator::right_multiply_add(const Matrix& rho, Matrix& out, cplx factor) const
{
    // (rho M)(:, r + o) += rho(:, r) v(r)
    const bool unit = factor == cplx{1.0, 0.0};
    for (const auto& b : bands_) {
        const Index len = b.values.size();
        if (unit) {
            out.middleCols(b.row0 + b.offset, len).noalias() +=
                rho.middleCols(b.row0, len) * b.values.asDiagonal();
        } else {
            out.middleCols(b.row0 + b.offset, len).noalias() +=
                rho.middleCols(b.row0, len) * (factor * b.values).asDiagonal();
        }
    }
}

// ---------------------------------------------------------------------------
// LindbladGenerator

namespace {

// True when every jump connects H0 = diag(energies) levels with one fixed gap.
bool jumps_have_fixed_gaps(const RealVector& energies, const std::vector<JumpOperator>& jumps,
                           double tol)
{
    const Index d = energies.size();
    for (const auto& j : jumps) {
        bool have_gap = false;
        double gap = 0.0;
        for (Index c = 0; c < d; ++c) {
            for (Index r = 0; r < d; ++r) {
                if (j.op(r, c) == cplx{0.0, 0.0}) {
                    continue;
                }
                const double g = energies(c) - energies(r);
                if (!have_gap) {
                    gap = g;
                    have_gap = true;
                } else if (std::abs(g - gap) > tol) {
                    return false;
                }
            }
        }
    }
    return true;
}

} // namespace

LindbladGenerator::LindbladGenerator(const HilbertSpace& space, const Matrix& hamiltonian,
                                     const std::vector<JumpOperator>& jumps, FrameMode frame)
    : space_(space)
{
    require(hamiltonian.rows() == space.dim() && hamiltonian.cols() == space.dim(),
            ErrorKind::RepresentationMismatch, "Hamiltonian dimension does not match the space");
    for (const auto& j : jumps) {
        require(j.op.rows() == space.dim() && j.op.cols() == space.dim(),
                ErrorKind::RepresentationMismatch, "jump operator dimension does not match the space");
    }
    Matrix k = hamiltonian;
    if (frame == FrameMode::Auto) {
        const RealVector energies = hamiltonian.diagonal().real();
        const double tol = 1e-12 * std::max(1.0, energies.cwiseAbs().maxCoeff());
        if (jumps_have_fixed_gaps(energies, jumps, tol)) {
            frame_energies_ = energies;
            k.diagonal().setZero();
            // H_I(t)_rc = H_rc exp(i (E_r - E_c) t); group entries by gap.
            std::vector<std::pair<double, Matrix>> groups;
            const Index d = energies.size();
            for (Index c = 0; c < d; ++c) {
                for (Index r = 0; r < d; ++r) {
                    if (r == c || k(r, c) == cplx{0.0, 0.0}) {
                        continue;
                    }
                    const double nu = energies(r) - energies(c);
                    if (std::abs(nu) <= tol) {
                        continue;
                    }
                    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
                        return std::abs(g.first - nu) <= tol;
                    });
                    if (it == groups.end()) {
                        groups.emplace_back(nu, Matrix::Zero(d, d));
                        it = groups.end() - 1;
                    }
                    it->second(r, c) = k(r, c);
                    k(r, c) = 0.0;
                }
            }
            for (auto& [nu, h] : groups) {
                const BandedOperator banded(h);
                oscillating_.push_back(
                    {nu, banded.scaled({0.0, -1.0}), banded.adjoint().scaled({0.0, 1.0})});
            }
        }
    }
    const cplx half_i{0.0, 0.5};
    for (const auto& j : jumps) {
        k -= half_i * j.rate * (j.op.adjoint() * j.op);
        BandedOperator op(j.op);
        BandedOperator op_dag = op.adjoint().scaled(j.rate);
        channels_.push_back({std::move(op), std::move(op_dag)});
    }
    const BandedOperator banded_k(k);
    minus_i_k_ = banded_k.scaled({0.0, -1.0});
    plus_i_k_dag_ = banded_k.adjoint().scaled({0.0, 1.0});
}

LindbladGenerator LindbladGenerator::for_model(const SystemModel& model,
                                               const OperatorMatrix& hamiltonian, FrameMode frame)
{
    return {hamiltonian.space, hamiltonian.entries, build_jump_operators(model, hamiltonian.space),
            frame};
}

LindbladGenerator LindbladGenerator::free_field(const SystemModel& model,
                                                const HilbertSpace& field_space, FrameMode frame)
{
    return {field_space, free_field_hamiltonian(model, field_space).entries,
            build_jump_operators(model, field_space), frame};
}

void LindbladGenerator::to_lab_frame(Matrix& rho, double t) const
{
    if (!rotating_frame() || t == 0.0) {
        return;
    }
    const Index d = frame_energies_.size();
    Eigen::VectorXcd phase(d);
    for (Index k = 0; k < d; ++k) {
        phase(k) = std::polar(1.0, -frame_energies_(k) * t);
    }
    // rho_jk -> rho_jk exp(-i (E_j - E_k) t)
    rho = phase.asDiagonal() * rho * phase.conjugate().asDiagonal();
}

void LindbladGenerator::apply(const Matrix& rho, Matrix& out, double t) const
{
    out.setZero(rho.rows(), rho.cols());
    minus_i_k_.left_multiply_add(rho, out);
    plus_i_k_dag_.right_multiply_add(rho, out);
    for (const auto& o : oscillating_) {
        // -i e^{i nu t} H_nu rho + i rho e^{-i nu t} H_nu†
        const cplx ph = std::polar(1.0, o.nu * t);
        o.minus_i_h.left_multiply_add(rho, out, ph);
        o.plus_i_h_dag.right_multiply_add(rho, out, std::conj(ph));
    }
    for (const auto& c : channels_) {
        scratch_.setZero(rho.rows(), rho.cols());
        c.op.left_multiply_add(rho, scratch_);
        c.op_dag_scaled.right_multiply_add(scratch_, out);
    }
}

// ---------------------------------------------------------------------------
// evolve

EvolveResult evolve(const LindbladGenerator& gen, const DensityMatrix& rho0, double duration,
                    const EvolveOptions& opts)
{
    require(duration >= 0.0, ErrorKind::InvalidArgument, "duration must be >= 0");
    require(rho0.space() == gen.space(), ErrorKind::RepresentationMismatch,
            "initial state and generator live on different spaces");

    EvolveReport report;
    Matrix y = rho0.entries();

    auto guard = [&](double t, Matrix& m) {
        const double drift = std::abs(m.trace() - cplx{1.0, 0.0});
        report.worst_trace_drift = std::max(report.worst_trace_drift, drift);
        Matrix h = 0.5 * (m + m.adjoint());
        h /= h.trace().real();
        const double lam = min_hermitian_eigenvalue(h);
        report.worst_min_eigenvalue = std::min(report.worst_min_eigenvalue, lam);
        ++report.guard_checks;
        if (lam < kPositivityTolerance) {
            std::ostringstream os;
            os << "positivity breach at t=" << t << ": min eigenvalue " << lam
               << " below tolerance " << kPositivityTolerance << " (|Tr-1|=" << drift << ")";
            fail(ErrorKind::Integrity, os.str());
        }
        m = std::move(h);
        return true;
    };

    if (duration > 0.0) {
        DormandPrince45<Matrix> stepper(opts.integrator);
        stepper.set_guard(guard);
        auto rhs = [&gen](double t, const Matrix& r, Matrix& d) { gen.apply(r, d, t); };
        DormandPrince45<Matrix>::AcceptHook on_accept;
        if (opts.on_step) {
            on_accept = [&](double t, Matrix& m) {
                if (gen.rotating_frame()) {
                    Matrix lab = m;
                    gen.to_lab_frame(lab, t);
                    opts.on_step(t, lab);
                } else {
                    opts.on_step(t, m);
                }
                return false;
            };
        }
        DormandPrince45<Matrix>::StopHook on_stop;
        if (opts.on_sample) {
            on_stop = [&](double t, const Matrix& m) {
                if (gen.rotating_frame()) {
                    Matrix lab = m;
                    gen.to_lab_frame(lab, t);
                    opts.on_sample(t, lab);
                } else {
                    opts.on_sample(t, m);
                }
            };
        }
        // The final-time callback fires only when duration is itself a sample time.
        std::vector<double> stops(opts.sample_times.begin(), opts.sample_times.end());
        const bool sample_end =
            !stops.empty() && std::abs(stops.back() - duration) <= 1e-12 * std::max(1.0, duration);
        DormandPrince45<Matrix>::StopHook stop_hook;
        if (on_stop) {
            stop_hook = [&](double t, const Matrix& m) {
                if (t < duration || sample_end) {
                    on_stop(t, m);
                }
            };
        }
        stepper.integrate(rhs, y, 0.0, duration, stops, on_accept, stop_hook);
        report.stats = stepper.stats();
        guard(duration, y);
        gen.to_lab_frame(y, duration);
    }

    auto state = DensityMatrix::unchecked(rho0.space(), std::move(y));
    if (rho0.truncation_warning()) {
        state.flag_truncation();
    }
    return {std::move(state), report};
}

EvolveResult evolve(const SystemModel& model, const OperatorMatrix& hamiltonian,
                    const DensityMatrix& rho0, double duration, const EvolveOptions& opts)
{
    return evolve(LindbladGenerator::for_model(model, hamiltonian), rho0, duration, opts);
}

EvolveResult evolve_free_field(const SystemModel& model, const DensityMatrix& rho_f,
                               double duration, const EvolveOptions& opts)
{
    require(rho_f.space().kind() == HilbertSpace::Kind::Fock, ErrorKind::RepresentationMismatch,
            "free-field evolution needs a field-only state");
    return evolve(LindbladGenerator::free_field(model, rho_f.space()), rho_f, duration, opts);
}

} // namespace srotto
