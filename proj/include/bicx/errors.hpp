#ifndef BICX_ERRORS_HPP
#define BICX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bicx {

/// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed textual input (scalar, matrix, document, catalog).
struct parse_error : error {
    explicit parse_error(const std::string& msg) : error(msg) {}
};

/// Ambient dimensions of two objects do not match.
struct dimension_error : error {
    explicit dimension_error(const std::string& msg) : error(msg) {}
};

/// Quotient requested by a subspace that is not contained in the numerator.
struct not_a_subquotient : error {
    explicit not_a_subquotient(const std::string& msg) : error(msg) {}
};

/// Structural defect in a complex: matrix shapes inconsistent with the
/// declared dimensions.  Distinct from an algebraic validation failure,
/// which is reported, not thrown.
struct malformed_complex : error {
    explicit malformed_complex(const std::string& msg) : error(msg) {}
};

/// Structure equations whose extension does not square to zero.
struct inconsistent_equations : error {
    explicit inconsistent_equations(const std::string& msg) : error(msg) {}
};

/// A computation was asked to run on a complex that fails validation.
struct invalid_complex : error {
    explicit invalid_complex(const std::string& msg) : error(msg) {}
};

/// An internal invariant failed; indicates a bug, never bad user input.
struct internal_error : error {
    explicit internal_error(const std::string& msg) : error(msg) {}
};

} // namespace bicx

#endif
