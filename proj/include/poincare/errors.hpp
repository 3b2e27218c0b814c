#pragma once

#include <stdexcept>
#include <string>

namespace poincare {

// Base for everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller passed something malformed (bad parameter, vertex not in graph, ...).
struct input_error : error {
    using error::error;
};

// The finite window is too small to answer the query exactly.
struct window_error : error {
    using error::error;
};

// A function value is missing on the halo of a region.
struct halo_error : error {
    using error::error;
};

// A theorem hypothesis does not hold for the given instance.
struct precondition_error : error {
    using error::error;
};

// The instance exceeds a configured size/enumeration budget.
struct size_error : error {
    using error::error;
};

} // namespace poincare
