#pragma once

#include <stdexcept>
#include <string>

namespace winprob {

// Malformed or unusable input data (CSV parse failures, single-arm datasets,
// arms with no observed events). CLI maps this to exit code 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical routine failed to converge (quadrature segment budget exhausted,
// non-finite values in a sampler). CLI maps this to exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace winprob
