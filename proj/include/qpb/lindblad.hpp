// lindblad.hpp — Liouvillian superoperator, steady-state solve, and a
// fourth-order time integrator used to cross-validate it
//
// Density matrices are vectorized by column stacking, so the superoperator
// matrix acts on Eigen's native memory order directly. The steady state is
// obtained by replacing one row of the superoperator with the trace
// constraint and solving the square system; an excitation-number
// rescaling keeps the weakly populated photon sectors accurate in relative
// terms down to machine precision.

#pragma once

#include <Eigen/Dense>

#include "qpb/hilbert.hpp"
#include "qpb/model.hpp"

namespace qpb {

struct DensityMatrix {
    HilbertSpace space;
    Matrix rho;
};

struct Liouvillian {
    HilbertSpace space;
    SystemParams params;
    Matrix matrix;  // dim² x dim², acts on column-stacked density matrices
};

// dρ/dt = -i[H, ρ] + (kappa/2) L[a] ρ + (gamma/2) L[s-] ρ,
// L[o] ρ = 2 o ρ o† - o†o ρ - ρ o†o.
Liouvillian build_liouvillian(const SystemParams& p, const HilbertSpace& space);

// Superoperator action unstacked back to a matrix.
Matrix apply(const Liouvillian& liou, const Matrix& rho);

struct SteadyStateOptions {
    bool validate = false;  // kernel-dimension check via singular values
};

// Hermitian, trace-one, positive stationary state. Throws
// SingularSteadyState when the solve degenerates (or, in validate mode,
// when the kernel is not one-dimensional) and NonPositive when the smallest
// eigenvalue drops below -1e-6.
DensityMatrix steady_state(const Liouvillian& liou, const SteadyStateOptions& opts = {});

// Classic fixed-step RK4 on the vectorized master equation. The caller picks
// dt (stable_step gives a safe value); trace drift beyond 1e-6 aborts.
DensityMatrix evolve(const Liouvillian& liou, const DensityMatrix& rho0,
                     double t_final, double dt);

// Step size inside the RK4 stability region, from a power-iteration estimate
// of the superoperator's spectral radius.
double stable_step(const Liouvillian& liou);

namespace detail {
// Real parametrization of the Hermitian subspace: [diagonal; Re upper; Im upper].
Eigen::VectorXd pack_hermitian(const Matrix& rho);
Matrix unpack_hermitian(const Eigen::VectorXd& u, int dim);
}  // namespace detail

// Steady-state solver specialized for parameter sweeps. The superoperator is
// assembled in a real basis of the Hermitian subspace from cached
// parameter-independent pieces, so one solve costs a single real LU of size
// dim². Results match steady_state to solver precision.
class SteadySolver {
  public:
    explicit SteadySolver(const HilbertSpace& space);

    DensityMatrix solve(const SystemParams& p) const;

    const HilbertSpace& space() const { return space_; }

  private:
    HilbertSpace space_;
    int size_ = 0;  // dim²
    // Parameter-independent pieces; solve() combines them with coefficients
    // that carry the parameters and the excitation rescaling.
    Eigen::MatrixXd piece_sz_, piece_n_, piece_g_, piece_alow_, piece_araise_,
        piece_jump_a_, piece_anti_a_, piece_jump_sm_, piece_anti_sm_;
};

}  // namespace qpb
