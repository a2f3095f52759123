#pragma once

#include "netid/linalg.hpp"

/// Data-parallel kernels. Each OpenMP kernel has a serial reference with the
/// same contract; tests compare the two and bench/ times them.
namespace netid::kernels {

/// Columns per TSQR block (at least 4 * rows of the input).
inline constexpr Index kMinBlockColumns = 256;

/**
 * Compress a wide matrix x (rows <= cols) into a square lower-triangular
 * factor L with L * L^T == x * x^T, so x and L share singular values and
 * left singular vectors. Computed as the transposed R factor of a
 * Householder QR of x^T.
 *
 * Matrices with fewer columns than rows are returned unchanged.
 */
Matrix row_compress_serial(const Matrix& x);

/// Same as row_compress_serial, computed by tall-skinny QR: x is cut into
/// column blocks of a fixed size, each block is factored on its own thread,
/// and the stacked triangles are factored once more. Block boundaries do
/// not depend on the thread count.
Matrix row_compress(const Matrix& x);

/// Singular values and left vectors of x via row_compress + svd. The
/// right_vectors member belongs to the compressed factor, not to x.
SvdResult left_svd(const Matrix& x);

} // namespace netid::kernels
