#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nashatom/geometry.hpp"
#include "nashatom/node_set.hpp"

namespace nashatom {

// Units: hbar = 1, time in us, Omega / Delta / V in rad/us, lengths in um.
inline constexpr double kDefaultC6 = 5.42e6;  // rad/us * um^6
inline constexpr std::size_t kMaxSimulatedAtoms = 20;

using Amplitude = std::complex<double>;

// V_ij = C / R_ij^6, zero diagonal.
Eigen::MatrixXd interaction_matrix(const EmbeddedGraph& graph, double c6);

class RydbergSystem {
public:
    RydbergSystem(EmbeddedGraph graph, double c6 = kDefaultC6);

    const EmbeddedGraph& graph() const noexcept { return graph_; }
    std::size_t atoms() const noexcept { return graph_.size(); }
    std::size_t dimension() const noexcept { return std::size_t{1} << graph_.size(); }
    double c6() const noexcept { return c6_; }
    const Eigen::MatrixXd& interactions() const noexcept { return v_; }

    // Per-basis-state caches: sum_{i<j, z_i=z_j=1} V_ij and |z|.
    const std::vector<double>& interaction_energies() const noexcept { return interaction_energy_; }
    const std::vector<std::uint8_t>& excitation_counts() const noexcept { return excitations_; }

private:
    EmbeddedGraph graph_;
    double c6_;
    Eigen::MatrixXd v_;
    std::vector<double> interaction_energy_;
    std::vector<std::uint8_t> excitations_;
};

struct Breakpoint {
    double t;
    double value;
};

// Piecewise-linear waveform; times strictly increase from 0.
class Waveform {
public:
    Waveform() = default;
    explicit Waveform(std::vector<Breakpoint> points);

    double operator()(double t) const;
    const std::vector<Breakpoint>& points() const noexcept { return points_; }
    double end_time() const { return points_.back().t; }
    double max_abs() const;
    double min_value() const;

private:
    std::vector<Breakpoint> points_;
};

struct Schedule {
    Waveform omega;
    Waveform delta;
    double duration = 0.0;

    // Both waveforms start at 0 and end exactly at duration; omega >= 0.
    void check() const;
    // Union of breakpoint times, sorted, deduplicated.
    std::vector<double> knots() const;
};

// Breakpoints shaped like the reference annealing profile: omega ramps up over
// the first 1/16 of T, holds, ramps down over the last 1/16; delta holds at
// -delta_max, ramps to 0, pauses briefly at 0, ramps to +delta_max and holds.
Schedule default_schedule(double duration = 4.0, double omega_max = 7.27, double delta_max = 7.27,
                          const HardwareConstraints& hw = {});

ValidationReport validate_schedule(const Schedule& schedule, const HardwareConstraints& hw);

class QuantumState {
public:
    QuantumState(std::size_t atoms, std::vector<Amplitude> amplitudes);

    static QuantumState ground(std::size_t atoms);
    static QuantumState basis(std::size_t atoms, std::uint32_t index);

    std::size_t atoms() const noexcept { return atoms_; }
    std::size_t dimension() const noexcept { return amplitudes_.size(); }
    const std::vector<Amplitude>& amplitudes() const noexcept { return amplitudes_; }
    std::vector<Amplitude>& amplitudes() noexcept { return amplitudes_; }
    double norm() const;
    double probability(std::uint32_t index) const { return std::norm(amplitudes_.at(index)); }

private:
    std::size_t atoms_;
    std::vector<Amplitude> amplitudes_;
};

// H psi with H = (Omega/2) sum_i X_i - Delta sum_i n_i + sum_{i<j} V_ij n_i n_j.
std::vector<Amplitude> apply_hamiltonian(const RydbergSystem& system, double omega, double delta,
                                         std::span<const Amplitude> psi);

// -Delta |z| + sum_{i<j, z_i=z_j=1} V_ij
double diagonal_energy(const RydbergSystem& system, double delta, const NodeSet& z);

inline constexpr double kGroundEnergyTolerance = 1e-9;

// Minimisers of diagonal_energy over every basis state, ties within
// kGroundEnergyTolerance kept together.
std::vector<NodeSet> exact_ground_states(const RydbergSystem& system, double delta,
                                         std::size_t limit = kMaxSimulatedAtoms);

struct EvolveOptions {
    double tolerance = 1e-6;     // max 2-norm change on step halving
    double initial_step = 1e-3;  // us
    double min_step = 1e-6;      // us
};

struct EvolveResult {
    QuantumState state;
    double step;               // step that produced `state`
    double refinement_change;  // |psi(2*step) - psi(step)|_2
    std::size_t steps;
};

// Fixed-step propagation from |0...0>. Each step is a fourth-order
// commutator-free Magnus exponential; steps never straddle a waveform knot.
QuantumState integrate_fixed_step(const RydbergSystem& system, const Schedule& schedule, double max_step,
                                  std::size_t* steps_taken = nullptr);

// Halves the step from options.initial_step until successive results agree to
// options.tolerance; throws IntegrationFailure below options.min_step.
EvolveResult evolve(const RydbergSystem& system, const Schedule& schedule, const EvolveOptions& options = {});

struct ShotHistogram {
    std::map<NodeSet, std::uint64_t> counts;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};

ShotHistogram sample(const QuantumState& state, std::uint64_t shots, std::uint64_t seed);

}  // namespace nashatom
