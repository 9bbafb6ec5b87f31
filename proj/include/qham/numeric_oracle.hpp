#pragma once

#include <vector>

#include "qham/hamming.hpp"
#include "qham/spectral.hpp"
#include "qham/terwilliger.hpp"

namespace qham {

/// Eigenvalues of the adjacency matrix from a floating-point symmetric
/// eigensolver, ascending.
std::vector<double> float_spectrum(const FullBipartiteGraph& g);

/// The exact spectrum, expanded by trace multiplicities, must match the
/// numeric one element by element within tol.
CheckResult verify_float_spectrum(const TerwilligerContext& ctx, const SpectralData& sd,
                                  double tol = 1e-9);

}  // namespace qham
