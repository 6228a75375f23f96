#pragma once

#include <stdexcept>
#include <string>

namespace mtsfm {

/// The ACF has no interior local minimum, so no mainlobe null exists
/// (e.g. the triangular ACF of an unmodulated pulse).
class NoMainlobeNull : public std::runtime_error {
public:
    explicit NoMainlobeNull(const std::string& what) : std::runtime_error(what) {}
};

/// The mainlobe quadratic form is not positive definite (|rho_norm| ~ 1).
class DegenerateEllipse : public std::runtime_error {
public:
    explicit DegenerateEllipse(const std::string& what) : std::runtime_error(what) {}
};

/// A design constraint cannot be met by any coefficient choice.
class InfeasibleConstraint : public std::runtime_error {
public:
    explicit InfeasibleConstraint(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mtsfm
