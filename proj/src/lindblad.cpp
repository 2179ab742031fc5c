#include "qpb/lindblad.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <string>
#include <vector>

namespace qpb {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// 2 conj(o) ⊗ o - I ⊗ o†o - (o†o)ᵀ ⊗ I, the column-stacked form of L[o].
Matrix dissipator_superop(const Matrix& o, const Matrix& eye) {
    const Matrix n = o.adjoint() * o;
    return 2.0 * kron(o.conjugate(), o) - kron(eye, n) - kron(n.transpose(), eye);
}

// eps^exc per basis state; identity when the drive is off. Dividing the
// density matrix by these weights keeps every excitation sector O(1).
std::vector<double> excitation_weights(double epsilon, int dim) {
    std::vector<double> w(dim, 1.0);
    if (epsilon > 0.0) {
        for (int k = 0; k < dim; ++k) w[k] = std::pow(epsilon, excitation(k));
    }
    return w;
}

void check_positivity(const Matrix& rho, const char* who) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < -1e-6) {
        throw NonPositive(std::string(who) + ": eigenvalue " + std::to_string(lo) +
                          " below positivity floor");
    }
}

}  // namespace

Liouvillian build_liouvillian(const SystemParams& p, const HilbertSpace& space) {
    validate_params(p);
    const Matrix eye = Matrix::Identity(space.dim, space.dim);
    const Matrix h = build_hamiltonian(p, space).mat;
    const Matrix a = annihilation(space).mat;
    const Matrix sm = sigma_minus(space).mat;

    Matrix m = Complex(0, -1) * (kron(eye, h) - kron(h.transpose(), eye));
    m += (p.kappa / 2.0) * dissipator_superop(a, eye);
    m += (p.gamma / 2.0) * dissipator_superop(sm, eye);
    return {space, p, std::move(m)};
}

Matrix apply(const Liouvillian& liou, const Matrix& rho) {
    const int d = liou.space.dim;
    Vector v = liou.matrix * Eigen::Map<const Vector>(rho.data(), d * d);
    return Eigen::Map<const Matrix>(v.data(), d, d);
}

DensityMatrix steady_state(const Liouvillian& liou, const SteadyStateOptions& opts) {
    const int d = liou.space.dim;
    const int size = d * d;

    if (opts.validate) {
        Eigen::BDCSVD<Matrix> svd(liou.matrix);
        const auto& sv = svd.singularValues();
        const double top = sv(0);
        int kernel = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (top == 0.0 || sv(i) < 1e-10 * top) ++kernel;
        }
        if (kernel != 1) {
            throw SingularSteadyState("steady_state: kernel dimension " +
                                      std::to_string(kernel));
        }
    }

    // Similarity-rescale by excitation count (rho = W rho' W) so the drive
    // hierarchy cannot push the few-photon sectors under the LU noise floor.
    const auto w = excitation_weights(liou.params.epsilon, d);
    Matrix sys = liou.matrix;
    for (int col = 0; col < size; ++col) {
        const double dcol = w[col % d] * w[col / d];
        for (int row = 0; row < size; ++row) {
            sys(row, col) *= dcol / (w[row % d] * w[row / d]);
        }
    }
    // Row 0 (the vacuum-population equation) becomes the trace constraint.
    sys.row(0).setZero();
    for (int k = 0; k < d; ++k) sys(0, k * d + k) = w[k] * w[k];
    Vector rhs = Vector::Zero(size);
    rhs(0) = 1.0;

    Vector sol = Eigen::PartialPivLU<Matrix>(sys).solve(rhs);
    if (!sol.allFinite()) {
        throw SingularSteadyState("steady_state: solve produced non-finite entries");
    }

    Matrix rho = Eigen::Map<const Matrix>(sol.data(), d, d);
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) rho(j, k) *= w[j] * w[k];
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double tr = rho.trace().real();
    if (!(std::abs(tr) > 0.0) || !std::isfinite(tr)) {
        throw SingularSteadyState("steady_state: trace vanished");
    }
    rho /= tr;

    check_positivity(rho, "steady_state");
    return {liou.space, std::move(rho)};
}

DensityMatrix evolve(const Liouvillian& liou, const DensityMatrix& rho0,
                     double t_final, double dt) {
    if (!(rho0.space == liou.space)) {
        throw DimensionMismatch("evolve: state and Liouvillian spaces differ");
    }
    const int d = liou.space.dim;
    if (t_final <= 0.0) return rho0;

    Vector v = Eigen::Map<const Vector>(rho0.rho.data(), d * d);
    Vector k1(d * d), k2(d * d), k3(d * d), k4(d * d), tmp(d * d);

    double t = 0.0;
    while (t < t_final) {
        const double h = std::min(dt, t_final - t);
        k1.noalias() = liou.matrix * v;
        tmp = v + (h / 2.0) * k1;
        k2.noalias() = liou.matrix * tmp;
        tmp = v + (h / 2.0) * k2;
        k3.noalias() = liou.matrix * tmp;
        tmp = v + h * k3;
        k4.noalias() = liou.matrix * tmp;
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;

        Complex tr = 0.0;
        for (int k = 0; k < d; ++k) tr += v(k * d + k);
        if (!(std::abs(tr - 1.0) <= 1e-6)) {
            throw IntegrationDiverged("evolve: trace drifted to " +
                                      std::to_string(std::abs(tr)) + " at t = " +
                                      std::to_string(t));
        }
    }
    Matrix rho = Eigen::Map<const Matrix>(v.data(), d, d);
    return {liou.space, std::move(rho)};
}

double stable_step(const Liouvillian& liou) {
    const int size = liou.space.dim * liou.space.dim;
    Vector v = Vector::Ones(size).normalized();
    double radius = 0.0;
    for (int it = 0; it < 25; ++it) {
        v = liou.matrix * v;
        radius = v.norm();
        if (radius == 0.0) break;
        v /= radius;
    }
    if (radius <= 0.0) return 0.1;
    return 2.0 / radius;  // RK4 imaginary-axis limit is ~2.83
}

// ------------------------- real Hermitian parametrization --------------------

namespace detail {

Eigen::VectorXd pack_hermitian(const Matrix& rho) {
    const int d = int(rho.rows());
    const int m = d * (d - 1) / 2;
    Eigen::VectorXd u(d + 2 * m);
    for (int j = 0; j < d; ++j) u(j) = rho(j, j).real();
    int idx = 0;
    for (int k = 1; k < d; ++k) {
        for (int j = 0; j < k; ++j, ++idx) {
            u(d + idx) = rho(j, k).real();
            u(d + m + idx) = rho(j, k).imag();
        }
    }
    return u;
}

Matrix unpack_hermitian(const Eigen::VectorXd& u, int dim) {
    const int m = dim * (dim - 1) / 2;
    Matrix rho(dim, dim);
    for (int j = 0; j < dim; ++j) rho(j, j) = u(j);
    int idx = 0;
    for (int k = 1; k < dim; ++k) {
        for (int j = 0; j < k; ++j, ++idx) {
            const Complex z(u(dim + idx), u(dim + m + idx));
            rho(j, k) = z;
            rho(k, j) = std::conj(z);
        }
    }
    return rho;
}

}  // namespace detail

namespace {

// Matrix of a Hermiticity-preserving map in the packed real basis.
template <typename Action>
Eigen::MatrixXd real_superop(int dim, Action&& act) {
    const int size = dim * dim;
    Eigen::MatrixXd out(size, size);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(size);
    for (int col = 0; col < size; ++col) {
        e(col) = 1.0;
        out.col(col) = detail::pack_hermitian(act(detail::unpack_hermitian(e, dim)));
        e(col) = 0.0;
    }
    return out;
}

}  // namespace

SteadySolver::SteadySolver(const HilbertSpace& space)
    : space_(space), size_(space.dim * space.dim) {
    const int d = space.dim;
    const Matrix a = annihilation(space).mat;
    const Matrix ad = a.adjoint();
    const Matrix n = ad * a;
    const Matrix sm = sigma_minus(space).mat;
    const Matrix sp = sm.adjoint();
    const Matrix pe = sp * sm;
    const Matrix coupling = sp * a + sm * ad;
    const Complex mi(0, -1);

    piece_sz_ = real_superop(d, [&](const Matrix& r) { return Matrix(mi * (pe * r - r * pe)); });
    piece_n_ = real_superop(d, [&](const Matrix& r) { return Matrix(mi * (n * r - r * n)); });
    piece_g_ = real_superop(d, [&](const Matrix& r) {
        return Matrix(mi * (coupling * r - r * coupling));
    });
    piece_alow_ = real_superop(d, [&](const Matrix& r) { return Matrix(mi * (a * r - r * ad)); });
    piece_araise_ = real_superop(d, [&](const Matrix& r) { return Matrix(mi * (ad * r - r * a)); });
    piece_jump_a_ = real_superop(d, [&](const Matrix& r) { return Matrix(a * r * ad); });
    piece_anti_a_ = real_superop(d, [&](const Matrix& r) { return Matrix(-0.5 * (n * r + r * n)); });
    piece_jump_sm_ = real_superop(d, [&](const Matrix& r) { return Matrix(sm * r * sp); });
    piece_anti_sm_ =
        real_superop(d, [&](const Matrix& r) { return Matrix(-0.5 * (pe * r + r * pe)); });
}

DensityMatrix SteadySolver::solve(const SystemParams& p) const {
    validate_params(p);
    const int d = space_.dim;
    const bool scaled = p.epsilon > 0.0;
    // Excitation-rescaled frame: the drive splits into a raising leg of unit
    // weight and a lowering leg of weight eps², and the quantum-jump feeds
    // carry eps² (they refill a sector that is larger by eps^-2). Everything
    // else is untouched by the rescaling.
    const double c_low = scaled ? p.epsilon * p.epsilon : p.epsilon;
    const double c_high = scaled ? 1.0 : p.epsilon;
    const double c_jump = scaled ? p.epsilon * p.epsilon : 1.0;

    Eigen::MatrixXd sys = p.delta0 * piece_sz_;
    sys.noalias() += p.delta_a * piece_n_;
    sys.noalias() += p.g * piece_g_;
    sys.noalias() += c_low * piece_alow_;
    sys.noalias() += c_high * piece_araise_;
    sys.noalias() += (p.kappa * c_jump) * piece_jump_a_;
    sys.noalias() += p.kappa * piece_anti_a_;
    sys.noalias() += (p.gamma * c_jump) * piece_jump_sm_;
    sys.noalias() += p.gamma * piece_anti_sm_;

    const auto w = excitation_weights(p.epsilon, d);
    sys.row(0).setZero();
    for (int k = 0; k < d; ++k) sys(0, k) = w[k] * w[k];
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(size_);
    rhs(0) = 1.0;

    Eigen::VectorXd u = Eigen::PartialPivLU<Eigen::MatrixXd>(sys).solve(rhs);
    const double resid = (sys * u - rhs).lpNorm<Eigen::Infinity>();
    if (!u.allFinite() || resid > 1e-8 * (1.0 + u.lpNorm<Eigen::Infinity>())) {
        throw SingularSteadyState("SteadySolver: defective system (residual " +
                                  std::to_string(resid) + ")");
    }

    Matrix rho = detail::unpack_hermitian(u, d);
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) rho(j, k) *= w[j] * w[k];
    }
    rho /= rho.trace().real();
    check_positivity(rho, "SteadySolver");
    return {space_, std::move(rho)};
}

}  // namespace qpb
