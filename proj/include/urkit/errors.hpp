#pragma once

#include <stdexcept>
#include <string>

namespace urkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// regression-core
struct RankDeficient : Error {
    using Error::Error;
};
struct InsufficientObservations : Error {
    using Error::Error;
};
struct InsufficientRegressors : Error {
    using Error::Error;
};
struct ZeroStandardError : Error {
    using Error::Error;
};

// deterministics
struct InvalidBreakDate : Error {
    using Error::Error;
};

// simulation
struct NonStationaryErrorPolynomial : Error {
    using Error::Error;
};

// unitroot
struct DegenerateResidualVariance : Error {
    using Error::Error;
};
struct DegenerateDof : Error {
    using Error::Error;
};

// montecarlo
struct MissingCriticalValue : Error {
    using Error::Error;
};
struct UnreliableTable : Error {
    using Error::Error;
};

// io / config
struct ParseError : Error {
    using Error::Error;
};

}  // namespace urkit
