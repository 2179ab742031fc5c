#include "qpb/observables.hpp"

#include <cmath>

namespace qpb {

TruncationReport truncation_converged(const SystemParams& p, int n_max, double tol) {
    TruncationReport rep;
    const auto coarse = steady_state(build_liouvillian(p, make_space(n_max)));
    const auto fine = steady_state(build_liouvillian(p, make_space(n_max + 2)));
    rep.g2_coarse = g2_zero(coarse);
    rep.g2_fine = g2_zero(fine);
    rep.rel_diff = std::abs(rep.g2_coarse - rep.g2_fine) / std::abs(rep.g2_fine);
    rep.top_population = photon_stats(coarse).pop_by_n[n_max];
    rep.converged = rep.rel_diff <= tol && rep.top_population < 1e-10;
    return rep;
}

}  // namespace qpb
