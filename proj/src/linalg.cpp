#include "segscope/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace segscope {

Centered column_center(const RealMatrix& m) {
    if (m.rows < 2) fail(Errc::TooFewRows, "column_center needs at least 2 rows");

    Centered out;
    out.mean.assign(m.cols, 0.0);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c) out.mean[c] += m.at(r, c);
    for (double& v : out.mean) v /= static_cast<double>(m.rows);

    out.centered = RealMatrix::zeros(m.rows, m.cols);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c)
            out.centered.at(r, c) = m.at(r, c) - out.mean[c];
    return out;
}

RealMatrix covariance(const RealMatrix& centered) {
    const std::size_t n = centered.rows;
    const std::size_t k = centered.cols;
    RealMatrix c = RealMatrix::zeros(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            double sum = 0.0;
            for (std::size_t r = 0; r < n; ++r) sum += centered.at(r, i) * centered.at(r, j);
            const double v = n > 0 ? sum / static_cast<double>(n) : 0.0;
            c.at(i, j) = v;
            c.at(j, i) = v;
        }
    }
    return c;
}

namespace {

constexpr double kOffDiagonalTolerance = 1e-12;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const RealMatrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            if (i != j) sum += a.at(i, j) * a.at(i, j);
    return std::sqrt(sum);
}

// One cyclic sweep of Jacobi rotations; V accumulates eigenvectors as columns.
void jacobi_sweep(RealMatrix& a, RealMatrix& v) {
    const std::size_t n = a.rows;
    for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            const double apq = a.at(p, q);
            if (apq == 0.0) continue;

            const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
            const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                             (std::abs(theta) + std::sqrt(theta * theta + 1.0));
            const double c = 1.0 / std::sqrt(t * t + 1.0);
            const double s = t * c;

            for (std::size_t i = 0; i < n; ++i) {
                const double aip = a.at(i, p);
                const double aiq = a.at(i, q);
                a.at(i, p) = c * aip - s * aiq;
                a.at(i, q) = s * aip + c * aiq;
            }
            for (std::size_t i = 0; i < n; ++i) {
                const double api = a.at(p, i);
                const double aqi = a.at(q, i);
                a.at(p, i) = c * api - s * aqi;
                a.at(q, i) = s * api + c * aqi;
            }
            for (std::size_t i = 0; i < n; ++i) {
                const double vip = v.at(i, p);
                const double viq = v.at(i, q);
                v.at(i, p) = c * vip - s * viq;
                v.at(i, q) = s * vip + c * viq;
            }
        }
    }
}

void apply_sign_rule(std::vector<double>& vec) {
    std::size_t pivot = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < vec.size(); ++i) {
        const double mag = std::abs(vec[i]);
        if (mag > best) {
            best = mag;
            pivot = i;
        }
    }
    if (vec[pivot] < 0.0)
        for (double& x : vec) x = -x;
}

}  // namespace

std::vector<PrincipalComponent> principal_components(const RealMatrix& c, std::size_t m) {
    if (c.rows != c.cols || c.rows == 0)
        fail(Errc::InvalidArgument, "principal_components requires a square matrix");
    const std::size_t n = c.rows;
    if (m < 1 || m > n)
        fail(Errc::InvalidArgument, "component count m must lie in [1, cols]");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(c.at(i, j) - c.at(j, i)) > 1e-9)
                fail(Errc::AsymmetricMatrix, "input matrix is not symmetric within 1e-9");

    RealMatrix a = c;
    // Symmetrize exactly so rotations preserve symmetry bit-for-bit.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double avg = 0.5 * (a.at(i, j) + a.at(j, i));
            a.at(i, j) = avg;
            a.at(j, i) = avg;
        }

    RealMatrix v = RealMatrix::zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) v.at(i, i) = 1.0;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= kOffDiagonalTolerance) break;
        jacobi_sweep(a, v);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a.at(x, x) > a.at(y, y); });

    std::vector<PrincipalComponent> out;
    out.reserve(m);
    for (std::size_t rank = 0; rank < m; ++rank) {
        const std::size_t col = order[rank];
        PrincipalComponent pc;
        pc.eigenvalue = a.at(col, col);
        if (pc.eigenvalue < 0.0 && pc.eigenvalue > -1e-10) pc.eigenvalue = 0.0;
        pc.vector.resize(n);
        for (std::size_t i = 0; i < n; ++i) pc.vector[i] = v.at(i, col);
        apply_sign_rule(pc.vector);
        out.push_back(std::move(pc));
    }
    return out;
}

double project(std::span<const double> x, std::span<const double> mean,
               const PrincipalComponent& pc) {
    if (x.size() != mean.size() || x.size() != pc.vector.size())
        fail(Errc::LengthMismatch, "project: vector lengths disagree");
    double score = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) score += (x[i] - mean[i]) * pc.vector[i];
    return score;
}

}  // namespace segscope
