#pragma once
#include "frontprop/grid.hpp"

namespace frontprop {

// Linear (zero-padded) convolution of a field with a kernel patch sampled
// at the same spacing on its own odd-extent grid centered at 0:
//   out(x) = h^N * sum_y kernel(x - y) * f(y),
// evaluated on f's grid with f extended by zero outside it (R^N
// semantics, no periodic wrap). Spectral implementation.
ScalarField convolve(const ScalarField& f, const ScalarField& kernel);

// Direct-summation reference, O(n * k). Test oracle for convolve().
ScalarField convolve_direct(const ScalarField& f, const ScalarField& kernel);

// Sampled heat kernel G(., s) on a patch of the given spacing, normalized
// to unit discrete mass so that convolution with an all-ones field is 1.
ScalarField gaussian_kernel(double s, double h, int dim, double radius_sigmas = 6.0);

}  // namespace frontprop
