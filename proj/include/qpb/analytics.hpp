// analytics.hpp — closed-form weak-drive photon statistics and the optimal
// parameter relations for both blockade mechanisms
//
// The steady state of the weakly driven system is expanded over
// {|0g>, |1g>, |0e>, |2g>, |1e>} with c0g normalized to 1; the equal-time
// correlation follows from the one- and two-photon amplitudes alone, so the
// normalization drops out.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qpb/model.hpp"

namespace qpb {

struct WeakDriveAmplitudes {
    Complex c0g{1.0, 0.0};
    Complex c1g;
    Complex c0e;
    Complex c2g;
    Complex c1e;
    Complex dprime0;   // delta0 - i gamma/2
    Complex dprime_a;  // delta_a - i kappa/2
};

// Complex detunings absorb the decay rates.
inline Complex complex_atom_detuning(const SystemParams& p) {
    return {p.delta0, -0.5 * p.gamma};
}

inline Complex complex_cavity_detuning(const SystemParams& p) {
    return {p.delta_a, -0.5 * p.kappa};
}

// Stationary amplitudes of the truncated expansion. The denominators cannot
// vanish for kappa, gamma > 0 with real detunings, so no error path exists
// for physical parameters.
inline WeakDriveAmplitudes weak_drive_amplitudes(const SystemParams& p) {
    if (!(p.epsilon > 0.0)) {
        throw std::invalid_argument("weak_drive_amplitudes: epsilon must be positive");
    }
    const Complex d0 = complex_atom_detuning(p);
    const Complex da = complex_cavity_detuning(p);
    const Complex g2 = p.g * p.g;
    const double eps = p.epsilon;

    WeakDriveAmplitudes amp;
    amp.dprime0 = d0;
    amp.dprime_a = da;
    amp.c1g = eps * d0 / (g2 - da * d0);
    amp.c2g = eps * eps * ((da + d0) * d0 + g2) /
              (std::sqrt(2.0) * (da * d0 - g2) * ((da + d0) * da - g2));
    amp.c0e = -p.g * amp.c1g / d0;
    amp.c1e = -(std::sqrt(2.0) * p.g * amp.c2g + eps * amp.c0e) / (d0 + da);
    return amp;
}

// g2(0) = 2 |c2g|^2 / |c1g|^4. Drive-amplitude independent, so any positive
// epsilon carried by the amplitudes gives the same value.
inline double analytic_g2(const WeakDriveAmplitudes& amp) {
    const double c1 = std::abs(amp.c1g);
    if (c1 < 1e-150) {
        throw ZeroOnePhotonAmplitude("analytic_g2: one-photon amplitude underflows");
    }
    const double c2 = std::abs(amp.c2g);
    return 2.0 * (c2 * c2) / (c1 * c1 * c1 * c1);
}

inline double analytic_g2(const SystemParams& p) {
    SystemParams q = p;
    if (!(q.epsilon > 0.0)) q.epsilon = 0.01 * q.gamma;  // ratio is eps-free
    return analytic_g2(weak_drive_amplitudes(q));
}

// ----------------------- interference optimal condition ----------------------

// 4 (delta_a + delta0) delta0 + 4 g² - (gamma + kappa) gamma
//   - 2 i [delta_a gamma + (kappa + 2 gamma) delta0]
// Vanishes exactly where the two-photon amplitude interferes to zero. Exposed
// raw (complex) so sweeps can contour its zero set.
inline Complex ucpb_condition_residual(const SystemParams& p) {
    const double re = 4.0 * (p.delta_a + p.delta0) * p.delta0 + 4.0 * p.g * p.g -
                      (p.gamma + p.kappa) * p.gamma;
    const double im = -2.0 * (p.delta_a * p.gamma + (p.kappa + 2.0 * p.gamma) * p.delta0);
    return {re, im};
}

enum class OptimalKind { Cpb, UcpbExact, UcpbAsymptotic };

struct OptimalPair {
    double delta0 = 0.0;
    double delta_a = 0.0;
    OptimalKind kind = OptimalKind::UcpbExact;
};

// Detuning pairs that null the two-photon amplitude exactly:
//   delta0 = ± sqrt(g² gamma / (kappa + gamma) - gamma² / 4)
//   delta_a = -(kappa/gamma + 2) delta0
// Empty below the coupling lower bound; a single pair at the origin when the
// square root closes.
inline std::vector<OptimalPair> ucpb_optimal_pairs(double g, double kappa,
                                                   double gamma) {
    const double disc = g * g * gamma / (kappa + gamma) - gamma * gamma / 4.0;
    const double scale = std::max(g * g * gamma / (kappa + gamma), gamma * gamma / 4.0);
    std::vector<OptimalPair> pairs;
    if (disc < -1e-12 * scale) return pairs;
    if (disc <= 1e-12 * scale) {
        pairs.push_back({0.0, 0.0, OptimalKind::UcpbExact});
        return pairs;
    }
    const double d0 = std::sqrt(disc);
    const double slope = -(kappa / gamma + 2.0);
    pairs.push_back({d0, slope * d0, OptimalKind::UcpbExact});
    pairs.push_back({-d0, -slope * d0, OptimalKind::UcpbExact});
    return pairs;
}

// ------------------------- strong-coupling reduction --------------------------

// Reduced correlation valid for g >> kappa, gamma (advisory; not enforced):
//   (g² - da d0)² / (4 d0⁴ (da² + d0 da - g²)²)
//     * {4 (g² + da d0 + d0²)² + [da gamma + (kappa + 2 gamma) d0]²}
inline double strong_coupling_g2(const SystemParams& p) {
    const double d0 = p.delta0, da = p.delta_a, g2 = p.g * p.g;
    const double pole = da * da + d0 * da - g2;
    if (d0 == 0.0 || pole == 0.0) {
        throw SingularDenominator("strong_coupling_g2: expression has a pole here");
    }
    const double lead = (g2 - da * d0) * (g2 - da * d0) /
                        (4.0 * d0 * d0 * d0 * d0 * pole * pole);
    const double t1 = g2 + da * d0 + d0 * d0;
    const double t2 = da * p.gamma + (p.kappa + 2.0 * p.gamma) * d0;
    return lead * (4.0 * t1 * t1 + t2 * t2);
}

// Red-detuned atomic detunings minimizing the reduced correlation at fixed
// cavity detuning: roots of g² = -d0 (da + d0). No roots means photons bunch
// for every atomic detuning. At |da| = 2g the double root is only indicative
// (the reduction drops kappa/gamma terms); `boundary` flags it.
struct InterferenceMinima {
    std::vector<double> delta0;
    bool boundary = false;
};

inline InterferenceMinima interference_minimum_delta0(double g, double delta_a) {
    const double disc = delta_a * delta_a - 4.0 * g * g;
    const double scale = std::max(delta_a * delta_a, 4.0 * g * g);
    InterferenceMinima out;
    if (disc < -1e-12 * scale) return out;
    if (disc <= 1e-12 * scale || scale == 0.0) {
        out.delta0.push_back(-delta_a / 2.0);
        out.boundary = true;
        return out;
    }
    const double root = std::sqrt(disc);
    out.delta0.push_back((-delta_a + root) / 2.0);
    out.delta0.push_back((-delta_a - root) / 2.0);
    return out;
}

}  // namespace qpb
