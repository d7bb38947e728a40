#include "webts/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include "webts/errors.hpp"

namespace webts {

void DesignMatrix::add_column(std::string name, std::vector<double> values) {
    column_names.push_back(std::move(name));
    columns.push_back(std::move(values));
}

void DesignMatrix::validate() const {
    if (columns.empty()) throw configuration_error("design matrix has no columns");
    if (column_names.size() != columns.size())
        throw configuration_error("design matrix name/column count mismatch");
    const std::size_t rows = columns.front().size();
    if (rows == 0) throw insufficient_observations_error("design matrix has no rows");
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows)
            throw configuration_error("design column '" + column_names[j] + "' length mismatch");
        for (double v : columns[j])
            if (!std::isfinite(v))
                throw domain_error("non-finite value in design column '" + column_names[j] + "'");
    }
}

LeastSquaresSolution least_squares_solve(const DesignMatrix& X, const std::vector<double>& y) {
    X.validate();
    const std::size_t n = X.n();
    const std::size_t k = X.k();
    if (y.size() != n) throw configuration_error("response length differs from design rows");
    if (n <= k)
        throw insufficient_observations_error("need n > k, got n=" + std::to_string(n) +
                                              " k=" + std::to_string(k));

    // Dense copy, row-major, with the response appended as column k.
    std::vector<double> a(n * (k + 1));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) a[i * (k + 1) + j] = X.columns[j][i];
    for (std::size_t i = 0; i < n; ++i) a[i * (k + 1) + k] = y[i];

    // Column norms for the rank test scale.
    std::vector<double> col_scale(k);
    for (std::size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += X.columns[j][i] * X.columns[j][i];
        col_scale[j] = std::sqrt(s);
    }

    // Householder triangularization applied to [X | y].
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * (k + 1) + j]; };
    for (std::size_t j = 0; j < k; ++j) {
        double norm = 0.0;
        for (std::size_t i = j; i < n; ++i) norm += at(i, j) * at(i, j);
        norm = std::sqrt(norm);
        const double tol = 1e-12 * (col_scale[j] > 0.0 ? col_scale[j] : 1.0);
        if (norm <= tol)
            throw singular_design_error("design matrix is rank deficient at column '" +
                                        X.column_names[j] + "'");
        if (at(j, j) > 0.0) norm = -norm;
        // v = x - norm*e1, applied without forming Q
        std::vector<double> v(n - j);
        v[0] = at(j, j) - norm;
        for (std::size_t i = j + 1; i < n; ++i) v[i - j] = at(i, j);
        double vtv = 0.0;
        for (double t : v) vtv += t * t;
        if (vtv == 0.0)
            throw singular_design_error("design matrix is rank deficient at column '" +
                                        X.column_names[j] + "'");
        for (std::size_t c = j; c <= k; ++c) {
            double dot = 0.0;
            for (std::size_t i = j; i < n; ++i) dot += v[i - j] * at(i, c);
            const double f = 2.0 * dot / vtv;
            for (std::size_t i = j; i < n; ++i) at(i, c) -= f * v[i - j];
        }
        at(j, j) = norm;
    }

    // Secondary rank check on the triangle's diagonal.
    for (std::size_t j = 0; j < k; ++j) {
        const double tol = 1e-10 * (col_scale[j] > 0.0 ? col_scale[j] : 1.0);
        if (std::abs(at(j, j)) <= tol)
            throw singular_design_error("design matrix is rank deficient at column '" +
                                        X.column_names[j] + "'");
    }

    LeastSquaresSolution sol;
    sol.beta.assign(k, 0.0);
    for (std::size_t jj = k; jj-- > 0;) {
        double s = at(jj, k);
        for (std::size_t c = jj + 1; c < k; ++c) s -= at(jj, c) * sol.beta[c];
        sol.beta[jj] = s / at(jj, jj);
    }

    // (X'X)^-1 = R^-1 R^-T. Build R^-1 by back substitution per unit column.
    std::vector<std::vector<double>> rinv(k, std::vector<double>(k, 0.0));
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t jj = k; jj-- > 0;) {
            double s = (jj == c) ? 1.0 : 0.0;
            for (std::size_t m = jj + 1; m < k; ++m) s -= at(jj, m) * rinv[m][c];
            rinv[jj][c] = s / at(jj, jj);
        }
    }
    sol.xtx_inverse.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            double s = 0.0;
            for (std::size_t m = 0; m < k; ++m) s += rinv[i][m] * rinv[j][m];
            sol.xtx_inverse[i][j] = s;
        }
    return sol;
}

}  // namespace webts
