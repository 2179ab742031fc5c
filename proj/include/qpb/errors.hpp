// errors.hpp — exception types shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace qpb {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fock truncation cannot represent two-photon states (n_max < 2).
struct TruncationTooSmall : Error {
    using Error::Error;
};

// Operands live on different Hilbert spaces.
struct DimensionMismatch : Error {
    using Error::Error;
};

// Dressed-level eigenvalues coincide; branch labels would be arbitrary.
struct DegenerateBranch : Error {
    using Error::Error;
};

struct ZeroCavityDetuning : Error {
    using Error::Error;
};

// Mean photon number below the underflow threshold; g2 is undefined.
struct NoExcitation : Error {
    using Error::Error;
};

struct ZeroOnePhotonAmplitude : Error {
    using Error::Error;
};

struct SingularDenominator : Error {
    using Error::Error;
};

// Liouvillian kernel is not one-dimensional.
struct SingularSteadyState : Error {
    using Error::Error;
};

// Steady state has an eigenvalue below the hard positivity floor.
struct NonPositive : Error {
    using Error::Error;
};

struct IntegrationDiverged : Error {
    using Error::Error;
};

struct InvalidSweepSpec : Error {
    using Error::Error;
};

}  // namespace qpb
