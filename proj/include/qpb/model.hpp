// model.hpp — driving-frame Hamiltonian, dressed levels, and resonance
// conditions of the driven atom-cavity system
//
// Everything is expressed in the frame co-rotating with the drive, in units
// of the atomic linewidth gamma. Dressed energies are rotating-frame values,
// so driving the lower polariton resonantly reads E(1,-) = 0.

#pragma once

#include <Eigen/Dense>

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "qpb/hilbert.hpp"

namespace qpb {

// Physical rates and detunings, all in units of gamma (gamma itself is kept
// so rate combinations like (kappa + gamma) read naturally).
struct SystemParams {
    double delta0 = 0.0;   // atomic detuning, omega_0 - omega_p
    double delta_a = 0.0;  // cavity detuning, omega_a - omega_p
    double g = 0.0;        // atom-cavity coupling
    double epsilon = 0.0;  // drive amplitude
    double kappa = 1.0;    // cavity decay
    double gamma = 1.0;    // atomic decay
};

inline void validate_params(const SystemParams& p) {
    if (!(p.kappa > 0.0) || !(p.gamma > 0.0)) {
        throw std::invalid_argument("SystemParams: kappa and gamma must be positive");
    }
    if (p.g < 0.0 || p.epsilon < 0.0) {
        throw std::invalid_argument("SystemParams: g and epsilon must be non-negative");
    }
}

// Regime where the truncated-wavefunction formulas are trusted.
inline bool is_weak_drive(const SystemParams& p) { return p.epsilon <= 0.1 * p.gamma; }

// H = delta0 s+s- + delta_a a†a + g (s+ a + s- a†) + eps (a + a†)
inline Operator build_hamiltonian(const SystemParams& p, const HilbertSpace& sp) {
    Matrix m = Matrix::Zero(sp.dim, sp.dim);
    for (int n = 0; n <= sp.n_max; ++n) {
        m(flat_index(n, 0), flat_index(n, 0)) = n * p.delta_a;
        m(flat_index(n, 1), flat_index(n, 1)) = n * p.delta_a + p.delta0;
        if (n >= 1) {
            const double gn = p.g * std::sqrt(double(n));
            m(flat_index(n - 1, 1), flat_index(n, 0)) = gn;  // s+ a
            m(flat_index(n, 0), flat_index(n - 1, 1)) = gn;
            for (int s = 0; s < 2; ++s) {
                const double en = p.epsilon * std::sqrt(double(n));
                m(flat_index(n - 1, s), flat_index(n, s)) = en;  // drive, a leg
                m(flat_index(n, s), flat_index(n - 1, s)) = en;
            }
        }
    }
    return {sp, std::move(m)};
}

// ------------------------------ dressed levels -------------------------------

enum class Branch { Plus, Minus };

struct DressedEnergies {
    double plus = 0.0;
    double minus = 0.0;
};

// Rotating-frame eigenvalues of the n-excitation block:
//   E(n,±) = [(2n-1) delta_a + delta0 ± sqrt(4 n g² + (delta_a - delta0)²)] / 2
inline DressedEnergies dressed_energies(const SystemParams& p, int n) {
    assert(n >= 1);
    const double mid = (2.0 * n - 1.0) * p.delta_a + p.delta0;
    const double split = std::sqrt(4.0 * n * p.g * p.g +
                                   (p.delta_a - p.delta0) * (p.delta_a - p.delta0));
    return {(mid + split) / 2.0, (mid - split) / 2.0};
}

struct DressedLevel {
    int n = 1;
    Branch branch = Branch::Minus;
    double energy = 0.0;
    Complex amp_g;  // amplitude on |n,g>
    Complex amp_e;  // amplitude on |n-1,e>
};

// Normalized eigenvector of the {|n,g>, |n-1,e>} block. Throws when the two
// eigenvalues coincide (g = 0 and delta0 = delta_a): silent branch labels
// would corrupt transition diagnostics downstream.
inline DressedLevel dressed_state(const SystemParams& p, int n, Branch branch) {
    assert(n >= 1);
    const auto e = dressed_energies(p, n);
    if (e.plus - e.minus < 1e-12) {
        throw DegenerateBranch("dressed_state: branches degenerate at n = " +
                               std::to_string(n));
    }
    const double energy = (branch == Branch::Plus) ? e.plus : e.minus;
    // (E - delta0 - (n-1) delta_a, sqrt(n) g) solves the block at eigenvalue E.
    double ag = energy - p.delta0 - (n - 1.0) * p.delta_a;
    double ae = std::sqrt(double(n)) * p.g;
    if (ag == 0.0 && ae == 0.0) {
        // g = 0 with the block already diagonal: the eigenvector is a bare state.
        ag = (branch == Branch::Plus) == (n * p.delta_a > p.delta0 + (n - 1) * p.delta_a)
                 ? 1.0
                 : 0.0;
        ae = 1.0 - ag;
    }
    const double norm = std::hypot(ag, ae);
    return {n, branch, energy, Complex(ag / norm, 0.0), Complex(ae / norm, 0.0)};
}

// ---------------------------- resonance conditions ---------------------------

// Atomic detuning that makes the drive resonant with a one-excitation
// dressed level: g² = delta0 * delta_a.
inline double cpb_optimal_delta0(double g, double delta_a) {
    if (delta_a == 0.0) {
        throw ZeroCavityDetuning("cpb_optimal_delta0: delta_a must be nonzero");
    }
    return g * g / delta_a;
}

// Detuning of the two-photon step |1,±> -> |2,±> when the one-photon step is
// driven resonantly (g² = delta_a * delta0 within tol). Large magnitude here
// is what blocks the second photon.
inline double two_photon_detuning(const SystemParams& p, Branch branch,
                                  double tol = 1e-9) {
    assert(std::abs(p.g * p.g - p.delta0 * p.delta_a) <=
           tol * std::max(1.0, p.g * p.g));
    (void)tol;
    const double lead = (branch == Branch::Plus) ? -(3.0 * p.delta_a + p.delta0)
                                                 : (3.0 * p.delta_a + p.delta0);
    const double root = std::sqrt(6.0 * p.delta_a * p.delta0 +
                                  p.delta_a * p.delta_a + p.delta0 * p.delta0);
    return (lead - root) / 2.0;
}

}  // namespace qpb
