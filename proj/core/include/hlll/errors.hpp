#ifndef HLLL_ERRORS_HPP
#define HLLL_ERRORS_HPP

#include <stdexcept>

namespace hlll {

// Malformed serialized sketch. Inputs are rejected, never repaired.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Merge attempted between sketches with different structural parameters
// (register count, kappa, or hash configuration).
class IncompatibleSketchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hlll

#endif
