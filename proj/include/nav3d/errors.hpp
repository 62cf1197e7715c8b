#pragma once

#include <stdexcept>
#include <string>

namespace nav3d {

// Base class for all library errors.
struct NavError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// rotation_about() requires a unit axis.
struct NonUnitAxis : NavError {
    explicit NonUnitAxis(double norm)
        : NavError("rotation axis is not a unit vector (norm = " + std::to_string(norm) + ")") {}
};

// tangent_projector() requires a nonzero axis.
struct ZeroAxis : NavError {
    ZeroAxis() : NavError("projector axis is numerically zero") {}
};

// Avoidance field is undefined when the robot center coincides with its
// projection on the obstacle set.
struct DegenerateProjection : NavError {
    DegenerateProjection() : NavError("robot center coincides with its obstacle projection") {}
};

// Axis selection is undefined at the target itself.
struct ZeroState : NavError {
    ZeroState() : NavError("cannot pick an avoidance plane for x = 0") {}
};

struct EmptyCloud : NavError {
    EmptyCloud() : NavError("operation requires a non-empty boundary cloud") {}
};

// Malformed shape, world or scenario description.
struct ScenarioError : NavError {
    using NavError::NavError;
};

}  // namespace nav3d
