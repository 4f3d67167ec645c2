/// @file errors.hpp
/// @brief Exception taxonomy shared by all pqginv modules.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pqg {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two fields were combined but live on different grids.
class GridMismatch : public Error {
public:
    using Error::Error;
};

/// A mean-zero field was required (H^-1 norms, inverse Laplacian, PV data).
class NotMeanZero : public Error {
public:
    using Error::Error;
};

/// A centered mollifier was required but the profile has nonzero first moment.
class NotCentered : public Error {
public:
    using Error::Error;
};

/// An operation defined only for unit physical constants received others.
class ConstantsNotUnit : public Error {
public:
    using Error::Error;
};

/// Grid periods incompatible with a closed-form construction.
class BadPeriod : public Error {
public:
    using Error::Error;
};

/// The 1D solution recipe needs mean-zero vorticity data.
class NonzeroMeanPV : public Error {
public:
    using Error::Error;
};

/// The sharpness-family profile violates its sign/slope preconditions.
class SignConditionViolated : public Error {
public:
    using Error::Error;
};

/// A requested ball radius exceeds the admissible range on the torus.
class RadiiOutOfRange : public Error {
public:
    using Error::Error;
};

/// Invalid solver / sweep / CLI configuration; message names the offending key.
class ConfigInvalid : public Error {
public:
    using Error::Error;
};

/// Unknown plot-data figure name.
class UnknownFigure : public Error {
public:
    using Error::Error;
};

/// A tabulated function failed one or more required analytic properties.
/// Each entry of failures() names one violated condition.
class PropertyViolated : public Error {
public:
    PropertyViolated(const std::string& what, std::vector<std::string> failures)
        : Error(what), failures_(std::move(failures)) {}
    const std::vector<std::string>& failures() const { return failures_; }

private:
    std::vector<std::string> failures_;
};

} // namespace pqg
