#pragma once

#include <complex>
#include <vector>

#include "swlift/grid.hpp"

namespace swlift {

using cvector = std::vector<std::complex<double>>;

// Spectral engine on a Grid4: exact derivatives of band-limited trigonometric
// interpolants via FFT. Transforms act on interleaved multi-component arrays
// laid out site-major (value[site * ncomp + c]).
namespace spectral {

// In-place unnormalized forward DFT / normalized (1/volume) inverse DFT.
void forward(const Grid4& g, cvector& data, int ncomp);
void inverse(const Grid4& g, cvector& data, int ncomp);

// Partial derivative along one axis (0..3) of every component.
// The Nyquist mode is zeroed, which is exact for inputs band-limited below it.
cvector partial(const Grid4& g, const cvector& data, int ncomp, int axis);

// Derivative applied in place to a spectrum (forward-transformed data).
void apply_ik(const Grid4& g, cvector& spectrum, int ncomp, int axis);

}

}
