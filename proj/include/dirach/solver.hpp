#pragma once

// Local-in-time solution of the Dirac-Hartree equation by Picard iteration
// on the Duhamel map
//
//   Phi(psi)(t) = U(t) psi0 - i int_0^t U(t-s) A(psi)(s) ds,
//   A(psi) = (lambda |.|^{-gamma} * <psi, beta psi>) beta psi,
//
// cross-checked by a Strang splitting integrator, with blow-up monitoring.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dirach/normspec.hpp"
#include "dirach/potentials.hpp"
#include "dirach/propagator.hpp"

namespace dirach {

enum class Quadrature { trapezoid, simpson };

// widest p=2 space the local theory admits: X = M^{2, 2d/(d+gamma)}
inline NormSpec default_monitor(int d, double gamma) {
    return NormSpec::modulation(2, 2.0 * d / (d + gamma), 0);
}

struct EvolutionConfig {
    HartreeParams hartree;
    double mass = 0;
    double T = 0.1;
    int n_t = 17;  // uniform nodes including both endpoints
    Quadrature quad = Quadrature::simpson;
    double picard_tol = 1e-10;
    int picard_max = 25;
    NormSpec monitor = NormSpec::modulation(2, 2, 0);

    void validate() const {
        if (!(T > 0)) throw std::invalid_argument("evolve: T must be positive");
        if (n_t < 3) throw std::invalid_argument("evolve: n_t must be >= 3");
        if (!(picard_tol > 0)) throw std::invalid_argument("evolve: picard_tol must be positive");
    }
    double dt() const { return T / (n_t - 1); }
    PropagatorParams propagator() const { return {mass, hartree.rep}; }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<SpinorField> fields;  // physical space
    std::vector<double> norms;        // monitored norm per node (filled on demand)
};

struct ConvergenceReport {
    bool converged = false;
    int iterations = 0;
    std::vector<double> distances;    // sup-node X-norm between successive iterates
    std::vector<double> factors;      // distances[k] / distances[k-1]
    double residual = 0;              // sup-node X-norm of traj - Phi(traj)
};

namespace detail {

// composite quadrature weights for int_0^{t_i} over nodes 0..i.
// Simpson needs an even panel count; an odd tail is closed with the 3/8 rule
// (pure 3/8 for i = 3, trapezoid for i = 1).
inline std::vector<double> quad_weights(int i, double dt, Quadrature q) {
    std::vector<double> w(i + 1, 0.0);
    if (i == 0) return w;
    if (q == Quadrature::trapezoid || i == 1) {
        w[0] = w[i] = dt / 2;
        for (int j = 1; j < i; ++j) w[j] = dt;
        return w;
    }
    int simpson_end = (i % 2 == 0) ? i : i - 3;
    if (i == 3) simpson_end = 0;
    for (int j = 0; j + 2 <= simpson_end; j += 2) {
        w[j] += dt / 3;
        w[j + 1] += 4 * dt / 3;
        w[j + 2] += dt / 3;
    }
    if (simpson_end < i) {  // 3/8 tail over the last three panels
        w[simpson_end] += 3 * dt / 8;
        w[simpson_end + 1] += 9 * dt / 8;
        w[simpson_end + 2] += 9 * dt / 8;
        w[simpson_end + 3] += 3 * dt / 8;
    }
    return w;
}

}  // namespace detail

inline Trajectory free_flight(const SpinorField& psi0, const EvolutionConfig& config) {
    config.validate();
    const PropagatorParams pp = config.propagator();
    const SpinorField psi0_hat = fft(psi0);
    Trajectory traj;
    traj.times.resize(config.n_t);
    traj.fields.reserve(config.n_t);
    for (int i = 0; i < config.n_t; ++i) {
        traj.times[i] = i * config.dt();
        traj.fields.push_back(ifft(apply_propagator(psi0_hat, traj.times[i], pp)));
    }
    return traj;
}

// one application of the Duhamel map; the time integral uses the configured
// composite rule over the nodes <= t_i, everything in frequency space
inline Trajectory duhamel_map(const SpinorField& psi0, const Trajectory& traj,
                              const EvolutionConfig& config) {
    config.validate();
    if (static_cast<int>(traj.fields.size()) != config.n_t)
        throw std::invalid_argument("duhamel_map: trajectory/config node mismatch");
    const PropagatorParams pp = config.propagator();
    const double dt = config.dt();

    std::vector<SpinorField> a_hat;
    a_hat.reserve(config.n_t);
    for (const auto& f : traj.fields)
        a_hat.push_back(fft(hartree_nonlinearity(f, config.hartree)));
    const SpinorField psi0_hat = fft(psi0);

    Trajectory out;
    out.times = traj.times;
    out.fields.reserve(config.n_t);
    for (int i = 0; i < config.n_t; ++i) {
        const double t = traj.times[i];
        SpinorField acc = apply_propagator(psi0_hat, t, pp);
        const auto w = detail::quad_weights(i, dt, config.quad);
        for (int j = 0; j <= i; ++j) {
            if (w[j] == 0.0) continue;
            SpinorField term = apply_propagator(a_hat[j], t - traj.times[j], pp);
            term *= cplx(0, -w[j]);
            acc += term;
        }
        out.fields.push_back(ifft(acc));
    }
    return out;
}

inline double trajectory_distance(const Trajectory& a, const Trajectory& b,
                                  const NormEvaluator& norm) {
    double dist = 0;
    for (std::size_t i = 0; i < a.fields.size(); ++i)
        dist = std::max(dist, norm(a.fields[i] - b.fields[i]));
    return dist;
}

inline double residual(const Trajectory& traj, const SpinorField& psi0,
                       const EvolutionConfig& config) {
    const NormEvaluator norm(config.monitor);
    return trajectory_distance(traj, duhamel_map(psi0, traj, config), norm);
}

// Picard iteration started from free flight (zeroth Duhamel truncation).
// Non-convergence is reported with the measured contraction factors; the
// caller may shrink T per the smallness condition.
inline std::pair<Trajectory, ConvergenceReport> picard_solve(const SpinorField& psi0,
                                                             const EvolutionConfig& config,
                                                             Trajectory initial = {}) {
    config.validate();
    const NormEvaluator norm(config.monitor);
    const double scale = norm(psi0);
    Trajectory traj = initial.fields.empty() ? free_flight(psi0, config) : std::move(initial);

    ConvergenceReport report;
    for (int k = 0; k < config.picard_max; ++k) {
        Trajectory next = duhamel_map(psi0, traj, config);
        const double dist = trajectory_distance(next, traj, norm);
        report.distances.push_back(dist);
        if (k > 0 && report.distances[k - 1] > 0)
            report.factors.push_back(dist / report.distances[k - 1]);
        traj = std::move(next);
        ++report.iterations;
        if (dist <= config.picard_tol * scale) {
            report.converged = true;
            break;
        }
    }
    report.residual = residual(traj, psi0, config);
    return {std::move(traj), report};
}

// Strang splitting: half-step nonlinear phase, full-step exact free flight,
// half-step nonlinear phase.  The kick is exact since <psi, beta psi> is
// invariant under e^{-i theta beta}:
//   psi <- cos(theta) psi - i sin(theta) beta psi,  theta = (dt/2) V(x).
inline void nonlinear_kick(SpinorField& psi, double dtheta, const HartreeParams& params) {
    const SpinorField v = hartree_potential(psi, psi, params);
    const SpinorField bpsi = apply_beta(psi, params.rep);
    for (std::size_t i = 0; i < psi.grid.size(); ++i) {
        const double theta = dtheta * v.at(0, i).real();
        const double cs = std::cos(theta), sn = std::sin(theta);
        for (int c = 0; c < psi.n; ++c)
            psi.at(c, i) = cs * psi.at(c, i) - cplx(0, sn) * bpsi.at(c, i);
    }
}

inline Trajectory split_step_evolve(const SpinorField& psi0, const EvolutionConfig& config,
                                    int substeps_per_node = 1) {
    config.validate();
    const PropagatorParams pp = config.propagator();
    const double dt = config.dt() / substeps_per_node;

    Trajectory traj;
    traj.times.resize(config.n_t);
    traj.fields.reserve(config.n_t);
    SpinorField psi = psi0;
    traj.times[0] = 0;
    traj.fields.push_back(psi);
    for (int i = 1; i < config.n_t; ++i) {
        for (int ss = 0; ss < substeps_per_node; ++ss) {
            nonlinear_kick(psi, dt / 2, config.hartree);
            psi = apply_propagator(psi, dt, pp);
            nonlinear_kick(psi, dt / 2, config.hartree);
        }
        traj.times[i] = i * config.dt();
        traj.fields.push_back(psi);
    }
    return traj;
}

struct BlowupReport {
    std::vector<double> norms;
    std::vector<int> flagged_intervals;  // i where norm(t_{i+1})/norm(t_i) > factor
    double growth_factor = 10.0;
};

inline BlowupReport blowup_monitor(Trajectory& traj, const NormSpec& spec,
                                   double growth_factor = 10.0) {
    const NormEvaluator norm(spec);
    BlowupReport rep;
    rep.growth_factor = growth_factor;
    rep.norms.reserve(traj.fields.size());
    for (const auto& f : traj.fields) rep.norms.push_back(norm(f));
    traj.norms = rep.norms;
    for (std::size_t i = 0; i + 1 < rep.norms.size(); ++i)
        if (rep.norms[i] > 0 && rep.norms[i + 1] / rep.norms[i] > growth_factor)
            rep.flagged_intervals.push_back(static_cast<int>(i));
    return rep;
}

}  // namespace dirach
