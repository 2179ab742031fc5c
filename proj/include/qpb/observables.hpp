// observables.hpp — photon statistics extracted from density matrices
#pragma once

#include <vector>

#include "qpb/lindblad.hpp"

namespace qpb {

// Mean photon number below which g2 is treated as undefined. Any driven
// steady state at the working drive strengths sits many orders above this.
inline constexpr double kNoExcitationFloor = 1e-30;

struct PhotonStats {
    double g2_zero = 0.0;
    double mean_n = 0.0;
    double p_atom_e = 0.0;
    std::vector<double> pop_by_n;  // photon-number distribution
};

inline double mean_photon_number(const DensityMatrix& dm) {
    double m1 = 0.0;
    for (int k = 0; k < dm.space.dim; ++k) {
        m1 += (k / 2) * dm.rho(k, k).real();
    }
    return m1;
}

// Tr(rho a†a†aa) / Tr(rho a†a)². Both operators are diagonal in this basis,
// with entries n(n-1) and n.
inline double g2_zero(const DensityMatrix& dm) {
    double m1 = 0.0;
    double m2 = 0.0;
    for (int k = 0; k < dm.space.dim; ++k) {
        const double n = k / 2;
        const double pop = dm.rho(k, k).real();
        m1 += n * pop;
        m2 += n * (n - 1.0) * pop;
    }
    if (m1 <= kNoExcitationFloor) {
        throw NoExcitation("g2_zero: mean photon number below threshold");
    }
    return m2 / (m1 * m1);
}

inline PhotonStats photon_stats(const DensityMatrix& dm) {
    PhotonStats st;
    st.pop_by_n.assign(dm.space.n_max + 1, 0.0);
    for (int k = 0; k < dm.space.dim; ++k) {
        const double pop = dm.rho(k, k).real();
        st.pop_by_n[k / 2] += pop;
        st.mean_n += (k / 2) * pop;
        if (k % 2 == 1) st.p_atom_e += pop;
    }
    double m2 = 0.0;
    for (int n = 2; n <= dm.space.n_max; ++n) m2 += n * (n - 1.0) * st.pop_by_n[n];
    st.g2_zero = (st.mean_n > kNoExcitationFloor) ? m2 / (st.mean_n * st.mean_n) : 0.0;
    return st;
}

struct TruncationReport {
    bool converged = false;
    double g2_coarse = 0.0;     // at n_max
    double g2_fine = 0.0;       // at n_max + 2
    double rel_diff = 0.0;
    double top_population = 0.0;  // occupation of the n_max level
};

// Convergence gate for the Fock cutoff: g2 must be stable against raising the
// cutoff by two photons and the top level must be essentially empty.
TruncationReport truncation_converged(const SystemParams& p, int n_max, double tol);

}  // namespace qpb
