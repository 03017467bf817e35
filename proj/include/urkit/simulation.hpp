#pragma once

#include <vector>

#include "urkit/deterministics.hpp"
#include "urkit/rng.hpp"

namespace urkit {

// Parameters of the data generating process: deterministic component with
// coefficients gamma, AR(1) root alpha on the stochastic part, and an
// optional finite-AR error driving process.
struct DgpConfig {
    enum class Innovations { Gaussian, StudentT };

    std::vector<double> gamma;      // length = det.column_count()
    DetSpec det = DetSpec::none();
    double alpha = 1.0;
    std::vector<double> error_ar;   // b_1..b_k; empty = iid innovations
    double sigma = 1.0;
    double z0 = 0.0;
    long burn_in = 0;
    Innovations innovations = Innovations::Gaussian;
    int student_df = 5;

    // Throws NonStationaryErrorPolynomial / Error on bad parameters.
    void validate() const;
};

// True when 1 - b_1 L - ... - b_k L^k has all roots outside the unit
// circle (checked via the Levinson step-down recursion).
bool ar_polynomial_stationary(const std::vector<double>& b);

// One path of length T. Pure function of (config, T, seed); identical
// inputs give bit-identical output.
std::vector<double> simulate(const DgpConfig& config, long T, SeedSpec seed);

}  // namespace urkit
