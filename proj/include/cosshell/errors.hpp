#pragma once

#include <stdexcept>
#include <string>

namespace cosshell {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Chart fails the immersion test at the queried point.
struct DegenerateChart : Error {
    using Error::Error;
};

/// |det(a - x3 b)| below threshold; x3 outside the focal range.
struct SingularShifter : Error {
    using Error::Error;
};

/// Binary tensor operation with operands on different frames.
struct FrameMismatch : Error {
    using Error::Error;
};

struct NotSkew : Error {
    using Error::Error;
};

struct NotSymmetric : Error {
    using Error::Error;
};

struct GridTooSmall : Error {
    using Error::Error;
};

struct DegenerateDeformedSurface : Error {
    using Error::Error;
};

/// Configuration violates the Kirchhoff-Love constraint d3 = deformed normal.
struct KLViolated : Error {
    using Error::Error;
};

/// Malformed scenario/config input; message carries location info.
struct SchemaError : Error {
    using Error::Error;
};

} // namespace cosshell
