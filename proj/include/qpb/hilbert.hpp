// hilbert.hpp — truncated Fock⊗qubit space and the elementary operators on it
//
// Basis ordering is photon-major with the atom fastest: flat index 2n + s,
// where n = 0..n_max is the photon number and s = 0 (ground) / 1 (excited).
// Photon blocks stay contiguous, which the truncation-convergence slicing
// relies on.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>

#include "qpb/errors.hpp"

namespace qpb {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct HilbertSpace {
    int n_max = 0;  // largest retained photon number
    int dim = 0;    // 2 * (n_max + 1)

    friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;
};

struct StateIndex {
    int n = 0;  // photon number
    int s = 0;  // 0 = |g>, 1 = |e>
};

inline int flat_index(const StateIndex& ix) { return 2 * ix.n + ix.s; }
inline int flat_index(int n, int s) { return 2 * n + s; }
inline StateIndex state_at(int flat) { return {flat / 2, flat % 2}; }

// Excitation quantum count n + s; grades the weak-drive hierarchy.
inline int excitation(int flat) { return flat / 2 + flat % 2; }

inline HilbertSpace make_space(int n_max) {
    if (n_max < 2) {
        throw TruncationTooSmall("make_space: n_max must be >= 2, got " +
                                 std::to_string(n_max));
    }
    return {n_max, 2 * (n_max + 1)};
}

// ------------------------------ Operator ------------------------------------

// Square complex matrix tied to its space so mismatched algebra is caught.
struct Operator {
    HilbertSpace space;
    Matrix mat;

    Operator() = default;
    Operator(const HilbertSpace& sp, Matrix m) : space(sp), mat(std::move(m)) {}
};

inline void require_same_space(const Operator& a, const Operator& b,
                               const char* what) {
    if (!(a.space == b.space)) {
        throw DimensionMismatch(std::string(what) + ": operands on different spaces (n_max " +
                                std::to_string(a.space.n_max) + " vs " +
                                std::to_string(b.space.n_max) + ")");
    }
}

inline Operator operator+(const Operator& a, const Operator& b) {
    require_same_space(a, b, "operator+");
    return {a.space, a.mat + b.mat};
}

inline Operator operator-(const Operator& a, const Operator& b) {
    require_same_space(a, b, "operator-");
    return {a.space, a.mat - b.mat};
}

inline Operator operator*(const Operator& a, const Operator& b) {
    require_same_space(a, b, "operator*");
    return {a.space, a.mat * b.mat};
}

inline Operator operator*(const Complex& c, const Operator& a) {
    return {a.space, c * a.mat};
}

inline Operator operator*(double c, const Operator& a) {
    return {a.space, c * a.mat};
}

inline Operator dagger(const Operator& a) {
    return {a.space, a.mat.adjoint()};
}

inline Complex trace(const Operator& a) { return a.mat.trace(); }

inline Operator commutator(const Operator& a, const Operator& b) {
    require_same_space(a, b, "commutator");
    return {a.space, a.mat * b.mat - b.mat * a.mat};
}

// -------------------------- elementary operators -----------------------------

inline Operator identity(const HilbertSpace& sp) {
    return {sp, Matrix::Identity(sp.dim, sp.dim)};
}

// a |n,s> = sqrt(n) |n-1,s>; the top Fock level is a hard cutoff, so
// dagger(a) annihilates |n_max,s> and dagger(a)*a stays diagonal.
inline Operator annihilation(const HilbertSpace& sp) {
    Matrix m = Matrix::Zero(sp.dim, sp.dim);
    for (int n = 1; n <= sp.n_max; ++n) {
        for (int s = 0; s < 2; ++s) {
            m(flat_index(n - 1, s), flat_index(n, s)) = std::sqrt(double(n));
        }
    }
    return {sp, std::move(m)};
}

inline Operator creation(const HilbertSpace& sp) { return dagger(annihilation(sp)); }

// sigma_- |n,e> = |n,g>
inline Operator sigma_minus(const HilbertSpace& sp) {
    Matrix m = Matrix::Zero(sp.dim, sp.dim);
    for (int n = 0; n <= sp.n_max; ++n) {
        m(flat_index(n, 0), flat_index(n, 1)) = 1.0;
    }
    return {sp, std::move(m)};
}

inline Operator sigma_plus(const HilbertSpace& sp) { return dagger(sigma_minus(sp)); }

inline Operator number_operator(const HilbertSpace& sp) {
    Matrix m = Matrix::Zero(sp.dim, sp.dim);
    for (int k = 0; k < sp.dim; ++k) m(k, k) = double(k / 2);
    return {sp, std::move(m)};
}

// Projector onto the atomic excited subspace, sigma_+ sigma_-.
inline Operator excited_projector(const HilbertSpace& sp) {
    Matrix m = Matrix::Zero(sp.dim, sp.dim);
    for (int n = 0; n <= sp.n_max; ++n) m(flat_index(n, 1), flat_index(n, 1)) = 1.0;
    return {sp, std::move(m)};
}

}  // namespace qpb
