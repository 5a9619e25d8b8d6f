#pragma once

#include <vector>

#include "qest/matrix.hpp"

namespace qest {

/// Spectral decomposition M = Q diag(eigenvalues) Q^dag with eigenvalues
/// ascending and each eigenvector's first significant component phase-fixed
/// real-positive, so output is deterministic for a given input.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors; // columns
};

EigenDecomposition herm_eig(const ComplexMatrix& m, double herm_tol = 1e-10);

} // namespace qest
