#pragma once

#include "qoc1d/core/types.hpp"

namespace qoc1d::fft {

// Unnormalized forward transform, inverse carries the 1/n factor. Plans are
// cached per thread; working buffers are per-plan, so concurrent transforms
// from different threads are safe.

void forward(CVec& v);
void inverse(CVec& v);

/// 2D transform of a row-major flattened n0 x n1 array.
void forward_2d(CVec& v, int n0, int n1);
void inverse_2d(CVec& v, int n0, int n1);

} // namespace qoc1d::fft
