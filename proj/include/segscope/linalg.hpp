#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "segscope/core.hpp"

namespace segscope {

/// Dense row-major real matrix. All entries must stay finite.
struct RealMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    static RealMatrix zeros(std::size_t rows, std::size_t cols) {
        return RealMatrix{rows, cols, std::vector<double>(rows * cols, 0.0)};
    }

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Unit-norm direction with its variance. Sign convention: the entry of
/// largest magnitude is positive; among equal magnitudes the lowest index
/// decides.
struct PrincipalComponent {
    double eigenvalue = 0.0;
    std::vector<double> vector;
};

struct Centered {
    RealMatrix centered;
    std::vector<double> mean;
};

/// Subtracts the column means. Requires at least 2 rows.
Centered column_center(const RealMatrix& m);

/// C = (1/n) M^T M over a column-centered M (divisor n, not n-1).
RealMatrix covariance(const RealMatrix& centered);

/// Top-m eigenpairs of a symmetric matrix, eigenvalue-descending, pairwise
/// orthogonal, each with residual ||Cv - lv||_inf <= 1e-9. Solver is cyclic
/// Jacobi: fixed (p,q) sweep order, stops when the off-diagonal Frobenius
/// norm falls to 1e-12 or after 100 sweeps, so output is bit-deterministic.
std::vector<PrincipalComponent> principal_components(const RealMatrix& c, std::size_t m);

/// (x - mean) . v
double project(std::span<const double> x, std::span<const double> mean,
               const PrincipalComponent& pc);

}  // namespace segscope
