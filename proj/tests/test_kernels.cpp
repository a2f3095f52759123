#include <doctest.h>

#include <random>

#include <omp.h>

#include "netid/kernels.hpp"

using namespace netid;

namespace {

Matrix random_matrix(Index rows, Index cols, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix a(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            a(i, j) = n(rng);
    return a;
}

bool lower_triangular(const Matrix& l)
{
    for (Index i = 0; i < l.rows(); ++i)
        for (Index j = i + 1; j < l.cols(); ++j)
            if (l(i, j) != 0.0)
                return false;
    return true;
}

} // namespace

TEST_CASE("row compression preserves the Gram matrix")
{
    for (Index d : {Index{3}, Index{6}, Index{255}, Index{256}, Index{257}, Index{1000}, Index{5000}}) {
        const Matrix x = random_matrix(6, d, static_cast<std::uint64_t>(d));
        const Matrix gram = x * x.transpose();
        const Matrix serial = kernels::row_compress_serial(x);
        const Matrix parallel = kernels::row_compress(x);
        if (d < 6) {
            CHECK(serial == x);
            CHECK(parallel == x);
            continue;
        }
        CHECK(serial.rows() == 6);
        CHECK(serial.cols() == 6);
        CHECK(lower_triangular(serial));
        CHECK(lower_triangular(parallel));
        CHECK((serial * serial.transpose() - gram).norm() / gram.norm() < 1e-12);
        CHECK((parallel * parallel.transpose() - gram).norm() / gram.norm() < 1e-12);
    }
}

TEST_CASE("left_svd matches a direct svd")
{
    const Matrix x = random_matrix(6, 3000, 11);
    const SvdResult direct = svd(x);
    const SvdResult fast = kernels::left_svd(x);
    CHECK((direct.singular_values - fast.singular_values).norm() / direct.singular_values.norm() <
          1e-12);
    CHECK((direct.left_vectors - fast.left_vectors).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("row compression does not depend on the thread count")
{
    const Matrix x = random_matrix(8, 4000, 5);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const Matrix one = kernels::row_compress(x);
    omp_set_num_threads(4);
    const Matrix four = kernels::row_compress(x);
    omp_set_num_threads(saved);
    CHECK(one == four);
}
