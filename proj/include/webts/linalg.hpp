#pragma once

#include <string>
#include <vector>

namespace webts {

// Column-major regressor matrix. Solvers require full column rank; a
// rank-deficient design is an error, never a silent pseudo-inverse.
struct DesignMatrix {
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> columns;  // each of length n

    std::size_t n() const { return columns.empty() ? 0 : columns.front().size(); }
    std::size_t k() const { return columns.size(); }

    void add_column(std::string name, std::vector<double> values);
    void validate() const;  // shape + finiteness; throws
};

struct LeastSquaresSolution {
    std::vector<double> beta;
    std::vector<std::vector<double>> xtx_inverse;  // k x k, inverse Gram matrix
};

// Householder-QR least squares. Throws singular_design_error on rank
// deficiency and insufficient_observations_error when n <= k.
LeastSquaresSolution least_squares_solve(const DesignMatrix& X, const std::vector<double>& y);

}  // namespace webts
