#include "netid/kernels.hpp"

#include <algorithm>
#include <vector>

namespace netid::kernels {

namespace {

Matrix r_factor(const Matrix& tall)
{
    Eigen::HouseholderQR<Matrix> qr(tall);
    const Index k = std::min(tall.rows(), tall.cols());
    Matrix r = Matrix::Zero(k, tall.cols());
    r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    return r;
}

} // namespace

Matrix row_compress_serial(const Matrix& x)
{
    if (x.cols() < x.rows())
        return x;
    return r_factor(x.transpose()).transpose();
}

Matrix row_compress(const Matrix& x)
{
    const Index m = x.rows();
    const Index d = x.cols();
    if (d < m)
        return x;

    const Index block = std::max(kMinBlockColumns, 4 * m);
    const Index blocks = (d + block - 1) / block;
    if (blocks == 1)
        return row_compress_serial(x);

    std::vector<Matrix> partial(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(static)
    for (Index b = 0; b < blocks; ++b) {
        const Index start = b * block;
        const Index width = std::min(block, d - start);
        partial[b] = r_factor(x.middleCols(start, width).transpose());
    }

    Index stacked_rows = 0;
    for (const auto& r : partial)
        stacked_rows += r.rows();
    Matrix stacked(stacked_rows, m);
    Index at = 0;
    for (const auto& r : partial) {
        stacked.middleRows(at, r.rows()) = r;
        at += r.rows();
    }
    return r_factor(stacked).transpose();
}

SvdResult left_svd(const Matrix& x)
{
    return svd(row_compress(x));
}

} // namespace netid::kernels
