#pragma once

// Tensor completion by tensor-ring nuclear norm minimization: circular
// unfoldings, the weighted TR nuclear norm, and an ADMM solver with
// singular value thresholding, plus the data plumbing around them.

#include "trc/artifacts.hpp"
#include "trc/image_io.hpp"
#include "trc/linalg.hpp"
#include "trc/mask.hpp"
#include "trc/matrix.hpp"
#include "trc/metrics.hpp"
#include "trc/rng.hpp"
#include "trc/solver.hpp"
#include "trc/tensor.hpp"
#include "trc/tensorize.hpp"
#include "trc/tr_format.hpp"
#include "trc/unfold.hpp"
