#include "nashatom/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "nashatom/errors.hpp"

namespace nashatom {

Eigen::MatrixXd interaction_matrix(const EmbeddedGraph& graph, double c6) {
    if (!(c6 > 0.0) || !std::isfinite(c6)) throw Error(ErrorCode::InvalidInput, "C6 must be finite and positive");
    const std::size_t n = graph.size();
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double r = graph.pair_distance(i, j);
            if (r == 0.0) {
                throw Error(ErrorCode::DegenerateLayout, "atoms " + std::to_string(i) + " and " + std::to_string(j) +
                                                             " coincide");
            }
            const double r2 = r * r;
            const double value = c6 / (r2 * r2 * r2);
            v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
            v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = value;
        }
    }
    return v;
}

RydbergSystem::RydbergSystem(EmbeddedGraph graph, double c6) : graph_(std::move(graph)), c6_(c6) {
    const std::size_t n = graph_.size();
    if (n > kMaxSimulatedAtoms) {
        throw Error(ErrorCode::TooLarge, std::to_string(n) + " atoms exceeds the state-vector limit of " +
                                             std::to_string(kMaxSimulatedAtoms));
    }
    v_ = interaction_matrix(graph_, c6_);

    // Build per-state caches by peeling off the lowest set bit: the energy of
    // z equals that of z without atom a plus a's couplings to the rest of z.
    const std::size_t dim = dimension();
    interaction_energy_.assign(dim, 0.0);
    excitations_.assign(dim, 0);
    for (std::size_t z = 1; z < dim; ++z) {
        const std::size_t low = z & (~z + 1);
        const std::size_t rest = z ^ low;
        const auto a = static_cast<Eigen::Index>(n - 1 - std::countr_zero(low));
        double coupling = 0.0;
        for (std::size_t r = rest; r != 0; r &= r - 1) {
            const auto b = static_cast<Eigen::Index>(n - 1 - std::countr_zero(r));
            coupling += v_(a, b);
        }
        interaction_energy_[z] = interaction_energy_[rest] + coupling;
        excitations_[z] = static_cast<std::uint8_t>(excitations_[rest] + 1);
    }
}

Waveform::Waveform(std::vector<Breakpoint> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw Error(ErrorCode::InvalidInput, "waveform needs at least two breakpoints");
    if (points_.front().t != 0.0) throw Error(ErrorCode::InvalidInput, "waveform must start at t = 0");
    for (std::size_t k = 0; k < points_.size(); ++k) {
        if (!std::isfinite(points_[k].t) || !std::isfinite(points_[k].value)) {
            throw Error(ErrorCode::InvalidInput, "waveform breakpoint " + std::to_string(k) + " is not finite");
        }
        if (k > 0 && !(points_[k].t > points_[k - 1].t)) {
            throw Error(ErrorCode::InvalidInput, "waveform times must strictly increase (breakpoint " +
                                                     std::to_string(k) + ")");
        }
    }
}

double Waveform::operator()(double t) const {
    if (points_.empty()) return 0.0;
    if (t <= points_.front().t) return points_.front().value;
    if (t >= points_.back().t) return points_.back().value;
    const auto hi = std::upper_bound(points_.begin(), points_.end(), t,
                                     [](double x, const Breakpoint& b) { return x < b.t; });
    const auto lo = hi - 1;
    if (lo->value == hi->value) return lo->value;
    const double frac = (t - lo->t) / (hi->t - lo->t);
    return lo->value + (hi->value - lo->value) * frac;
}

double Waveform::max_abs() const {
    double m = 0.0;
    for (const auto& p : points_) m = std::max(m, std::abs(p.value));
    return m;
}

double Waveform::min_value() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : points_) m = std::min(m, p.value);
    return m;
}

void Schedule::check() const {
    if (!(duration > 0.0) || !std::isfinite(duration)) throw Error(ErrorCode::InvalidInput, "duration must be positive");
    if (omega.points().empty() || delta.points().empty()) throw Error(ErrorCode::InvalidInput, "empty waveform");
    if (omega.end_time() != duration || delta.end_time() != duration) {
        throw Error(ErrorCode::InvalidInput, "waveforms must end exactly at the schedule duration");
    }
    if (omega.min_value() < 0.0) throw Error(ErrorCode::InvalidInput, "Rabi frequency must be non-negative");
}

std::vector<double> Schedule::knots() const {
    std::vector<double> out;
    for (const auto& p : omega.points()) out.push_back(p.t);
    for (const auto& p : delta.points()) out.push_back(p.t);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Schedule default_schedule(double duration, double omega_max, double delta_max, const HardwareConstraints& hw) {
    if (!(duration > 0.0) || !std::isfinite(duration)) throw Error(ErrorCode::InvalidInput, "duration must be positive");
    if (!(omega_max >= 0.0) || !(delta_max >= 0.0)) {
        throw Error(ErrorCode::InvalidInput, "amplitudes must be non-negative");
    }
    if (duration > hw.max_evolution_time) {
        throw Error(ErrorCode::ConstraintViolation, "duration " + std::to_string(duration) +
                                                        " us exceeds hardware limit " +
                                                        std::to_string(hw.max_evolution_time) + " us");
    }
    if (omega_max > hw.max_rabi) throw Error(ErrorCode::ConstraintViolation, "omega_max exceeds hardware limit");
    if (delta_max > hw.max_detuning_abs) throw Error(ErrorCode::ConstraintViolation, "delta_max exceeds hardware limit");

    // Reference shape on a 4 us axis, rescaled to `duration`.
    const double s = duration / 4.0;
    Schedule out;
    out.omega = Waveform({{0.0, 0.0},
                          {0.25 * s, omega_max},
                          {1.25 * s, omega_max},
                          {1.35 * s, omega_max},
                          {3.75 * s, omega_max},
                          {duration, 0.0}});
    out.delta = Waveform({{0.0, -delta_max},
                          {0.25 * s, -delta_max},
                          {1.25 * s, 0.0},
                          {1.35 * s, 0.0},
                          {3.75 * s, delta_max},
                          {duration, delta_max}});
    out.duration = duration;
    return out;
}

ValidationReport validate_schedule(const Schedule& schedule, const HardwareConstraints& hw) {
    ValidationReport report;
    if (schedule.duration > hw.max_evolution_time) {
        report.violations.push_back({ViolationKind::EvolutionTime, "duration", schedule.duration, hw.max_evolution_time});
    }
    if (schedule.omega.max_abs() > hw.max_rabi) {
        report.violations.push_back({ViolationKind::RabiAmplitude, "omega", schedule.omega.max_abs(), hw.max_rabi});
    }
    if (schedule.omega.min_value() < 0.0) {
        report.violations.push_back({ViolationKind::NegativeRabi, "omega", schedule.omega.min_value(), 0.0});
    }
    if (schedule.delta.max_abs() > hw.max_detuning_abs) {
        report.violations.push_back(
            {ViolationKind::DetuningAmplitude, "delta", schedule.delta.max_abs(), hw.max_detuning_abs});
    }
    return report;
}

QuantumState::QuantumState(std::size_t atoms, std::vector<Amplitude> amplitudes)
    : atoms_(atoms), amplitudes_(std::move(amplitudes)) {
    if (atoms_ > kMaxSimulatedAtoms || amplitudes_.size() != (std::size_t{1} << atoms_)) {
        throw Error(ErrorCode::InvalidState, "amplitude vector must have 2^n entries");
    }
}

QuantumState QuantumState::ground(std::size_t atoms) { return basis(atoms, 0); }

QuantumState QuantumState::basis(std::size_t atoms, std::uint32_t index) {
    if (atoms > kMaxSimulatedAtoms) throw Error(ErrorCode::TooLarge, "too many atoms for a state vector");
    std::vector<Amplitude> amps(std::size_t{1} << atoms);
    amps.at(index) = 1.0;
    return QuantumState(atoms, std::move(amps));
}

double QuantumState::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes_) s += std::norm(a);
    return std::sqrt(s);
}

namespace {

using Vec = std::vector<Amplitude>;

void apply_into(const RydbergSystem& system, double omega, double delta, std::span<const Amplitude> psi,
                std::span<Amplitude> out) {
    const auto& energy = system.interaction_energies();
    const auto& count = system.excitation_counts();
    const std::size_t n = system.atoms();
    const double half_omega = 0.5 * omega;
    for (std::size_t z = 0; z < psi.size(); ++z) {
        Amplitude acc = (energy[z] - delta * count[z]) * psi[z];
        if (half_omega != 0.0) {
            Amplitude flips = 0.0;
            for (std::size_t i = 0; i < n; ++i) flips += psi[z ^ (std::size_t{1} << i)];
            acc += half_omega * flips;
        }
        out[z] = acc;
    }
}

double norm2(const Vec& v) {
    double s = 0.0;
    for (const auto& a : v) s += std::norm(a);
    return std::sqrt(s);
}

Amplitude inner(const Vec& a, const Vec& b) {
    Amplitude s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
    return s;
}

// exp(-i tau H) psi by Lanczos with full reorthogonalisation. The result is
// V_m exp(-i tau T_m) e_1 |psi|, unitary in the Krylov basis, so the norm is
// kept even when the subspace is truncated.
class KrylovPropagator {
public:
    static constexpr std::size_t kMaxDim = 48;
    static constexpr double kTolerance = 1e-13;

    explicit KrylovPropagator(const RydbergSystem& system) : system_(system) {}

    void step(double omega, double delta, double tau, Vec& psi) {
        const std::size_t dim = psi.size();
        const double beta0 = norm2(psi);
        if (beta0 == 0.0) return;

        basis_.resize(kMaxDim + 1);
        alpha_.clear();
        beta_.clear();
        basis_[0].resize(dim);
        for (std::size_t k = 0; k < dim; ++k) basis_[0][k] = psi[k] / beta0;

        Eigen::VectorXcd coeffs;
        std::size_t m = 0;
        for (;;) {
            Vec& w = scratch_;
            w.resize(dim);
            apply_into(system_, omega, delta, basis_[m], w);
            const double a = inner(basis_[m], w).real();
            alpha_.push_back(a);
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t j = 0; j <= m; ++j) {
                    const Amplitude proj = inner(basis_[j], w);
                    for (std::size_t k = 0; k < dim; ++k) w[k] -= proj * basis_[j][k];
                }
            }
            const double b = norm2(w);
            coeffs = small_exponential(tau);
            const bool invariant = b <= 1e-12 * (std::abs(a) + 1.0);
            const double residual = b * std::abs(coeffs(static_cast<Eigen::Index>(m)));
            if (invariant || residual < kTolerance || m + 1 == dim) break;
            if (m + 1 == kMaxDim) {
                throw Error(ErrorCode::IntegrationFailure,
                            "Krylov exponential did not converge; reduce the integration step");
            }
            beta_.push_back(b);
            ++m;
            basis_[m].resize(dim);
            for (std::size_t k = 0; k < dim; ++k) basis_[m][k] = w[k] / b;
        }

        std::fill(psi.begin(), psi.end(), Amplitude{0.0});
        for (std::size_t j = 0; j <= m; ++j) {
            const Amplitude c = beta0 * coeffs(static_cast<Eigen::Index>(j));
            for (std::size_t k = 0; k < dim; ++k) psi[k] += c * basis_[j][k];
        }
    }

private:
    Eigen::VectorXcd small_exponential(double tau) const {
        const auto size = static_cast<Eigen::Index>(alpha_.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(size, size);
        for (Eigen::Index k = 0; k < size; ++k) {
            t(k, k) = alpha_[static_cast<std::size_t>(k)];
            if (k + 1 < size) {
                t(k, k + 1) = beta_[static_cast<std::size_t>(k)];
                t(k + 1, k) = beta_[static_cast<std::size_t>(k)];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
        const Eigen::MatrixXd& q = eig.eigenvectors();
        Eigen::VectorXcd phase(size);
        for (Eigen::Index k = 0; k < size; ++k) {
            phase(k) = std::exp(Amplitude(0.0, -tau * eig.eigenvalues()(k))) * q(0, k);
        }
        return q.cast<Amplitude>() * phase;
    }

    const RydbergSystem& system_;
    std::vector<Vec> basis_;
    std::vector<double> alpha_;
    std::vector<double> beta_;
    Vec scratch_;
};

// Gauss-Legendre nodes and commutator-free fourth-order weights.
const double kSqrt3 = std::sqrt(3.0);
const double kNodeEarly = 0.5 - kSqrt3 / 6.0;
const double kNodeLate = 0.5 + kSqrt3 / 6.0;
const double kWeightSmall = 0.25 - kSqrt3 / 6.0;
const double kWeightLarge = 0.25 + kSqrt3 / 6.0;

}  // namespace

std::vector<Amplitude> apply_hamiltonian(const RydbergSystem& system, double omega, double delta,
                                         std::span<const Amplitude> psi) {
    if (psi.size() != system.dimension()) {
        throw Error(ErrorCode::InvalidState, "state has " + std::to_string(psi.size()) + " amplitudes, expected " +
                                                 std::to_string(system.dimension()));
    }
    std::vector<Amplitude> out(psi.size());
    apply_into(system, omega, delta, psi, out);
    return out;
}

double diagonal_energy(const RydbergSystem& system, double delta, const NodeSet& z) {
    if (z.universe() != system.atoms()) {
        throw Error(ErrorCode::InvalidState, "bitstring length does not match atom count");
    }
    const auto members = z.members();
    double energy = -delta * static_cast<double>(members.size());
    const auto& v = system.interactions();
    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            energy += v(static_cast<Eigen::Index>(members[a]), static_cast<Eigen::Index>(members[b]));
        }
    }
    return energy;
}

std::vector<NodeSet> exact_ground_states(const RydbergSystem& system, double delta, std::size_t limit) {
    const std::size_t n = system.atoms();
    if (n > limit) {
        throw Error(ErrorCode::TooLarge, std::to_string(n) + " atoms exceeds exhaustive limit " + std::to_string(limit));
    }
    const auto& energy = system.interaction_energies();
    const auto& count = system.excitation_counts();
    std::vector<double> e(system.dimension());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t z = 0; z < e.size(); ++z) {
        e[z] = energy[z] - delta * count[z];
        best = std::min(best, e[z]);
    }
    std::vector<NodeSet> out;
    for (std::size_t z = 0; z < e.size(); ++z) {
        if (e[z] - best <= kGroundEnergyTolerance) out.emplace_back(n, static_cast<std::uint32_t>(z));
    }
    return out;
}

QuantumState integrate_fixed_step(const RydbergSystem& system, const Schedule& schedule, double max_step,
                                  std::size_t* steps_taken) {
    schedule.check();
    if (!(max_step > 0.0) || !std::isfinite(max_step)) throw Error(ErrorCode::InvalidInput, "step must be positive");

    QuantumState state = QuantumState::ground(system.atoms());
    Vec& psi = state.amplitudes();
    KrylovPropagator propagator(system);
    const auto knots = schedule.knots();
    std::size_t steps = 0;

    // Inside a knot interval both waveforms are linear, so H(t) is smooth and
    // the Magnus scheme keeps its full order.
    for (std::size_t seg = 0; seg + 1 < knots.size(); ++seg) {
        const double t0 = knots[seg];
        const double span = knots[seg + 1] - t0;
        const auto pieces = static_cast<std::size_t>(std::ceil(span / max_step - 1e-9));
        const double h = span / static_cast<double>(std::max<std::size_t>(pieces, 1));
        for (std::size_t k = 0; k < std::max<std::size_t>(pieces, 1); ++k) {
            const double t = t0 + static_cast<double>(k) * h;
            const double om1 = schedule.omega(t + kNodeEarly * h);
            const double om2 = schedule.omega(t + kNodeLate * h);
            const double de1 = schedule.delta(t + kNodeEarly * h);
            const double de2 = schedule.delta(t + kNodeLate * h);
            // a*H1 + b*H2 with a + b = 1/2 equals H(2(a om1 + b om2), 2(a de1 + b de2)) / 2.
            propagator.step(2.0 * (kWeightLarge * om1 + kWeightSmall * om2),
                            2.0 * (kWeightLarge * de1 + kWeightSmall * de2), 0.5 * h, psi);
            propagator.step(2.0 * (kWeightSmall * om1 + kWeightLarge * om2),
                            2.0 * (kWeightSmall * de1 + kWeightLarge * de2), 0.5 * h, psi);
            ++steps;
        }
    }
    if (steps_taken != nullptr) *steps_taken = steps;
    return state;
}

EvolveResult evolve(const RydbergSystem& system, const Schedule& schedule, const EvolveOptions& options) {
    if (!(options.tolerance > 0.0) || !(options.initial_step > 0.0) || !(options.min_step > 0.0)) {
        throw Error(ErrorCode::InvalidInput, "evolve options must be positive");
    }
    double step = options.initial_step;
    std::size_t steps = 0;
    QuantumState coarse = integrate_fixed_step(system, schedule, step, &steps);
    for (;;) {
        const double fine_step = 0.5 * step;
        if (fine_step < options.min_step) {
            throw Error(ErrorCode::IntegrationFailure, "no convergence to tolerance " +
                                                           std::to_string(options.tolerance) + " above step floor " +
                                                           std::to_string(options.min_step) + " us");
        }
        QuantumState fine = integrate_fixed_step(system, schedule, fine_step, &steps);
        double diff = 0.0;
        for (std::size_t k = 0; k < fine.dimension(); ++k) {
            diff += std::norm(fine.amplitudes()[k] - coarse.amplitudes()[k]);
        }
        diff = std::sqrt(diff);
        if (diff < options.tolerance) return EvolveResult{std::move(fine), fine_step, diff, steps};
        coarse = std::move(fine);
        step = fine_step;
    }
}

ShotHistogram sample(const QuantumState& state, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw Error(ErrorCode::InvalidInput, "shots must be at least 1");
    const double norm = state.norm();
    if (std::abs(norm * norm - 1.0) > 1e-6) {
        throw Error(ErrorCode::InvalidState, "state is not normalised (|psi|^2 = " + std::to_string(norm * norm) + ")");
    }
    std::vector<double> cumulative(state.dimension());
    double total = 0.0;
    for (std::size_t z = 0; z < cumulative.size(); ++z) {
        total += std::norm(state.amplitudes()[z]);
        cumulative[z] = total;
    }

    // Uniforms built from the top 53 bits of the engine output so the draw
    // sequence does not depend on the standard library's distributions.
    std::mt19937_64 engine(seed);
    ShotHistogram hist;
    hist.shots = shots;
    hist.seed = seed;
    const std::size_t n = state.atoms();
    for (std::uint64_t s = 0; s < shots; ++s) {
        double u = static_cast<double>(engine() >> 11) * 0x1.0p-53 * total;
        if (!(u < total)) u = std::nextafter(total, 0.0);
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        ++hist.counts[NodeSet(n, static_cast<std::uint32_t>(it - cumulative.begin()))];
    }
    return hist;
}

}  // namespace nashatom
