#pragma once

#include <stdexcept>
#include <string>

namespace fibwalk {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A walk specification violates one of its structural invariants.
struct validation_error : error {
    using error::error;
};

/// A coefficient offset was requested outside the range it was derived on.
struct offset_error : error {
    using error::error;
};

/// An operation was asked for an order beyond its configured capacity.
struct capacity_error : error {
    using error::error;
};

/// A required denominator (some p_i or q_i) is zero, so the product-form
/// path cannot be evaluated for this walk.
struct degenerate_error : error {
    using error::error;
};

/// The walk is not absorbed almost surely; arrival counts and absorption
/// times diverge.
struct divergence_error : error {
    using error::error;
};

/// The tridiagonal system is numerically singular.
struct singular_error : error {
    using error::error;
};

}  // namespace fibwalk
