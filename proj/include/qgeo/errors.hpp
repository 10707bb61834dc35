#pragma once

#include <stdexcept>
#include <string>

namespace qgeo {

/// Base class for all qgeo domain and numerical errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad user input (flags, grids, config files).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Raised internally when --help was printed; maps to exit code 0.
class HelpRequested : public Error {
public:
    using Error::Error;
};

// geometry
class DegenerateMetric : public Error {
public:
    using Error::Error;
};
class DomainViolation : public Error {
public:
    using Error::Error;
};
class GridTooSmall : public Error {
public:
    using Error::Error;
};

// phase handling (Dicke and LMG)
class WrongPhase : public Error {
public:
    using Error::Error;
};
class AngleSingular : public Error {
public:
    using Error::Error;
};
class CriticalPoint : public Error {
public:
    using Error::Error;
};

// exact diagonalization
class SolverFailure : public Error {
public:
    using Error::Error;
};
class DegenerateGroundState : public Error {
public:
    using Error::Error;
};
class ProbeDegenerate : public Error {
public:
    using Error::Error;
};
class DeltaTooLarge : public Error {
public:
    using Error::Error;
};

// torus-average oracle
class IllConditionedProjection : public Error {
public:
    using Error::Error;
};
class DcLeakage : public Error {
public:
    using Error::Error;
};

// fitting
class SingularFit : public Error {
public:
    using Error::Error;
};
class NoBracket : public Error {
public:
    using Error::Error;
};

} // namespace qgeo
