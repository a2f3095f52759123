#include "netid/orient.hpp"

#include <cmath>
#include <deque>

#include "netid/error.hpp"

namespace netid {

OrientationResult orient(const BinaryMatrix& pattern, const DataMatrix& data, double coeff_limit)
{
    validate(data);
    const Index n = static_cast<Index>(pattern.rows());
    const Index m = static_cast<Index>(pattern.cols());
    if (m != data.variables())
        throw Error(ErrorKind::InvalidArgument, "pattern has " + std::to_string(m) +
                                                    " columns but data has " +
                                                    std::to_string(data.variables()) + " variables");
    if (!(coeff_limit > 0.0))
        throw Error(ErrorKind::InvalidArgument, "coefficient limit must be positive");

    OrientationResult out;
    Matrix a = Matrix::Zero(n, m);
    out.regression_residuals.assign(n, 0.0);
    out.coefficient_deviations.assign(n, 0.0);
    const Index d = data.scenarios();

    for (Index i = 0; i < n; ++i) {
        std::vector<Index> support;
        for (Index k = 0; k < m; ++k)
            if (pattern.get(i, k))
                support.push_back(k);
        if (support.empty())
            throw Error(ErrorKind::Validation, "row " + std::to_string(i) + " of the pattern is empty");
        const Index r = support.front();
        a(i, r) = 1.0;
        if (support.size() == 1)
            continue;

        Matrix regressors(d, static_cast<Index>(support.size()) - 1);
        for (std::size_t j = 1; j < support.size(); ++j)
            regressors.col(static_cast<Index>(j) - 1) = data.values.row(support[j]).transpose();
        const Vector target = data.values.row(r).transpose();
        const Vector beta = least_squares(regressors, target);

        double worst = 0.0;
        for (Index j = 0; j < beta.size(); ++j) {
            const double dev = std::abs(std::abs(beta(j)) - 1.0);
            worst = std::max(worst, dev);
            if (dev > coeff_limit)
                throw CoefficientNotUnitError(i, support[static_cast<std::size_t>(j) + 1], beta(j));
            a(i, support[static_cast<std::size_t>(j) + 1]) = beta(j) > 0 ? -1.0 : 1.0;
        }
        out.coefficient_deviations[i] = worst;
        out.regression_residuals[i] = (target - regressors * beta).norm() / std::sqrt(double(d));
    }

    // Rows sharing an edge must give it opposite signs.
    std::vector<std::vector<std::pair<Index, Index>>> links(n); // (other row, column)
    for (Index c = 0; c < m; ++c) {
        std::vector<Index> rows;
        for (Index i = 0; i < n; ++i)
            if (a(i, c) != 0.0)
                rows.push_back(i);
        if (rows.size() == 2) {
            links[rows[0]].emplace_back(rows[1], c);
            links[rows[1]].emplace_back(rows[0], c);
        }
    }

    std::vector<int> sign(n, 0);
    for (Index root = 0; root < n; ++root) {
        if (sign[root] != 0)
            continue;
        sign[root] = 1;
        out.row_sign_choices.push_back(root);
        std::deque<Index> queue{root};
        while (!queue.empty()) {
            const Index i = queue.front();
            queue.pop_front();
            for (const auto& [k, c] : links[i]) {
                const int wanted = -sign[i] * static_cast<int>(a(i, c)) * static_cast<int>(a(k, c));
                if (sign[k] == 0) {
                    sign[k] = wanted;
                    queue.push_back(k);
                } else if (sign[k] != wanted) {
                    throw SignConflictError(c);
                }
            }
        }
    }
    for (Index i = 0; i < n; ++i)
        a.row(i) *= sign[i];

    std::vector<std::string> nodes;
    for (Index i = 0; i < n; ++i)
        nodes.push_back("N" + std::to_string(i + 1));
    out.network = make_network(std::move(nodes), data.variable_labels, std::move(a));
    return out;
}

} // namespace netid
