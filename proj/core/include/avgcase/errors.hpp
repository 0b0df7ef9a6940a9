#pragma once

#include <stdexcept>
#include <string>

namespace avgcase {

// Base class for every condition the library rejects at runtime.  Each
// rejected condition gets its own type so callers (and the CLI) can map
// failures to stable messages and exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Spectrum does not have a finite trace (algebraic decay with alpha <= 1).
class NonSummableError : public Error {
    using Error::Error;
};

// Evaluation point outside [0,1]^d.
class OutOfDomainError : public Error {
    using Error::Error;
};

// Sample set was drawn for a different mixture order than the design requests.
class DensityMismatchError : public Error {
    using Error::Error;
};

// Sampling density vanished at a point (cannot weight the design row).
class DegeneratePointError : public Error {
    using Error::Error;
};

// Least-squares factorization detected numerical rank below m.
class RankDeficientError : public Error {
    using Error::Error;
};

// Every outer Monte Carlo trial failed the admissibility threshold.
class NoAdmissibleDesignError : public Error {
    using Error::Error;
};

// delta outside the domain of the requested bound or schedule.
class DeltaOutOfRangeError : public Error {
    using Error::Error;
};

// Tractability classification needs at least 4 eps values and 3 dimensions.
class GridTooSmallError : public Error {
    using Error::Error;
};

// Two tables that must share a grid do not.
class GridMismatchError : public Error {
    using Error::Error;
};

// Configuration file rejected; the message names the offending field.
class ConfigInvalidError : public Error {
    using Error::Error;
};

}  // namespace avgcase
