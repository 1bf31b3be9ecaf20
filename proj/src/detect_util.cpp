#include "detect_util.hpp"

#include <algorithm>
#include <cmath>

namespace segscope::detail {

std::vector<double> feature_doubles(const Individual& ind) {
    std::vector<double> x(ind.features.bits.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(ind.features.bits[i]);
    return x;
}

double quantile_linear(std::vector<double> values, double q) {
    if (values.empty()) fail(Errc::InvalidArgument, "quantile of empty set");
    std::sort(values.begin(), values.end());
    if (values.size() == 1) return values.front();
    const double h = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

namespace {

void standardize_columns(RealMatrix& rows, const std::vector<double>& weights, double total,
                         std::vector<double>& scale) {
    scale.assign(rows.cols, 1.0);
    for (std::size_t c = 0; c < rows.cols; ++c) {
        double ss = 0.0;
        for (std::size_t r = 0; r < rows.rows; ++r) {
            const double w = weights.empty() ? 1.0 : weights[r];
            ss += w * rows.at(r, c) * rows.at(r, c);
        }
        const double sd = std::sqrt(ss / total);
        if (sd > 0.0) {
            scale[c] = sd;
            for (std::size_t r = 0; r < rows.rows; ++r) rows.at(r, c) /= sd;
        }
    }
}

}  // namespace

ComponentBasis extract_basis(const RealMatrix& aggregate, const std::vector<double>& weights,
                             std::size_t m, bool standardize) {
    ComponentBasis basis;
    RealMatrix rows;
    RealMatrix cov;
    double total = static_cast<double>(aggregate.rows);

    if (weights.empty()) {
        Centered centered = column_center(aggregate);
        basis.mean = std::move(centered.mean);
        rows = std::move(centered.centered);
        if (standardize) standardize_columns(rows, weights, total, basis.scale);
        cov = covariance(rows);
    } else {
        if (weights.size() != aggregate.rows)
            fail(Errc::LengthMismatch, "one weight per aggregate row required");
        if (aggregate.rows < 2) fail(Errc::TooFewRows, "need at least 2 aggregate rows");
        total = 0.0;
        for (double w : weights) {
            if (w <= 0.0) fail(Errc::InvalidArgument, "row weights must be positive");
            total += w;
        }
        basis.mean.assign(aggregate.cols, 0.0);
        for (std::size_t r = 0; r < aggregate.rows; ++r)
            for (std::size_t c = 0; c < aggregate.cols; ++c)
                basis.mean[c] += weights[r] * aggregate.at(r, c);
        for (double& v : basis.mean) v /= total;

        rows = RealMatrix::zeros(aggregate.rows, aggregate.cols);
        for (std::size_t r = 0; r < aggregate.rows; ++r)
            for (std::size_t c = 0; c < aggregate.cols; ++c)
                rows.at(r, c) = aggregate.at(r, c) - basis.mean[c];
        if (standardize) standardize_columns(rows, weights, total, basis.scale);

        cov = RealMatrix::zeros(aggregate.cols, aggregate.cols);
        for (std::size_t i = 0; i < aggregate.cols; ++i)
            for (std::size_t j = i; j < aggregate.cols; ++j) {
                double sum = 0.0;
                for (std::size_t r = 0; r < aggregate.rows; ++r)
                    sum += weights[r] * rows.at(r, i) * rows.at(r, j);
                cov.at(i, j) = cov.at(j, i) = sum / total;
            }
    }

    double total_variance = 0.0;
    for (std::size_t i = 0; i < cov.cols; ++i) total_variance += cov.at(i, i);
    if (total_variance <= 1e-12)
        fail(Errc::DegenerateSegregation,
             "aggregated rows are all identical; no direction of variation to extract");

    basis.components = principal_components(cov, m);
    return basis;
}

GroupAssignment classify(const Population& pop, const ComponentBasis& basis,
                         const ThresholdPolicy& policy, const std::string& method) {
    const std::size_t m = basis.components.size();
    if (m > 30) fail(Errc::InvalidArgument, "group ids overflow int beyond 30 components");

    // Per-component scores in population order.
    std::vector<std::vector<double>> scores(m, std::vector<double>(pop.individuals.size()));
    for (std::size_t i = 0; i < pop.individuals.size(); ++i) {
        std::vector<double> x = feature_doubles(pop.individuals[i]);
        if (!basis.scale.empty())
            for (std::size_t j = 0; j < x.size(); ++j)
                x[j] = basis.mean[j] + (x[j] - basis.mean[j]) / basis.scale[j];
        for (std::size_t c = 0; c < m; ++c)
            scores[c][i] = project(x, basis.mean, basis.components[c]);
    }

    std::vector<double> thresholds(m, 0.0);
    if (policy.kind == ThresholdPolicy::Kind::Quantile)
        for (std::size_t c = 0; c < m; ++c)
            thresholds[c] = quantile_linear(scores[c], policy.quantile);

    GroupAssignment out;
    out.provenance.method = method;
    out.provenance.threshold_policy = policy.str();
    out.provenance.thresholds = thresholds;
    out.provenance.mean = basis.mean;
    out.provenance.scale = basis.scale;
    for (const auto& pc : basis.components) {
        out.provenance.component_eigenvalues.push_back(pc.eigenvalue);
        out.provenance.component_vectors.push_back(pc.vector);
    }

    for (std::size_t i = 0; i < pop.individuals.size(); ++i) {
        int group = 0;
        for (std::size_t c = 0; c < m; ++c)
            if (scores[c][i] > thresholds[c]) group |= 1 << c;
        out.group_of[pop.individuals[i].id] = group;
    }
    return out;
}

}  // namespace segscope::detail
