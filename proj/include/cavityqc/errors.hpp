// errors.hpp — Exception types shared by every cavityqc module.
//
// Each type maps onto one failure class the command-line front end reports
// through its exit code (usage/config = 1, numerical = 2, resource cap = 3).

#pragma once

#include <stdexcept>
#include <string>

namespace cavityqc {

// Bad argument values, dimension mismatches, malformed input files.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Valid inputs that describe a configuration the model does not cover
// (open-boundary dispersion, detuned polaritons, ...).
class UnsupportedConfiguration : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Hilbert-space dimension above the configured cap.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-convergence, tolerance breach, or failed decomposition.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The effective-coupling fit could not identify the polariton doublet.
class FitFailure : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

// A forced measurement outcome selected a branch of (numerically) zero weight.
class DegenerateBranch : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

}  // namespace cavityqc
