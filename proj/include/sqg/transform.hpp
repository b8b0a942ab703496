#pragma once

#include "sqg/field.hpp"
#include "sqg/geometry.hpp"

namespace sqg {

// Forward/backward spherical-harmonic transforms and spectral differential
// operators.  All functions are pure; concurrent calls are safe.

SpectralField analyze(const PhysicalField& f);
PhysicalField synthesize(const SpectralField& a, std::shared_ptr<const Grid> grid);

// Frame components of grad_g f, exact at the nodes for band-limited f.
VelocityField surface_gradient(const SpectralField& a, std::shared_ptr<const Grid> grid);

// n x grad_g f; divergence-free, pointwise orthogonal to the gradient.
VelocityField perp_gradient(const SpectralField& a, std::shared_ptr<const Grid> grid);

// Rotation generator about the given axis (1, 2, 3), coefficient-space
// ladder action; axis 3 is a_{lm} -> i m a_{lm}.
SpectralField angular_momentum(const SpectralField& a, int axis);

// Discrete divergence of a frame-component field, evaluated spectrally.
PhysicalField divergence(const VelocityField& u);

// Pointwise evaluation of sum a_{lm} Y_{lm} at an arbitrary point.
double point_evaluate(const SpectralField& a, const UnitVector& p);

// (L_1 f, L_2 f, L_3 f)(p): the rotation-generator triple whose Euclidean
// norm equals |grad_g f| pointwise.
std::array<double, 3> point_rotation_gradient(const SpectralField& a, const UnitVector& p);

// De-aliased product: synthesized on a grid resolving deg(a) + deg(b).
SpectralField multiply(const SpectralField& a, const SpectralField& b);

// Zeroes all modes with l > cutoff.
void truncate_above(SpectralField& a, int cutoff);

}  // namespace sqg
