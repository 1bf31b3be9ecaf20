#include "segscope/fairness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace segscope {

PredictionSet build_predictions(std::vector<Prediction> items, std::optional<double> threshold) {
    if (items.empty()) fail(Errc::InvalidArgument, "prediction set must be non-empty");
    std::set<std::string> seen;
    for (const auto& p : items) {
        if (!seen.insert(p.id).second)
            fail(Errc::DuplicateId, "duplicate prediction id '" + p.id + "'");
        if (p.y_true != 0 && p.y_true != 1)
            fail(Errc::InvalidArgument, "y_true outside {0,1} for '" + p.id + "'");
        if (p.y_hat != 0 && p.y_hat != 1)
            fail(Errc::InvalidArgument, "y_hat outside {0,1} for '" + p.id + "'");
        if (!(p.score >= 0.0 && p.score <= 1.0))
            fail(Errc::InvalidArgument, "score outside [0,1] for '" + p.id + "'");
    }
    return PredictionSet{std::move(items), threshold};
}

namespace {

struct GroupTally {
    std::size_t count = 0;
    std::size_t predicted_positive = 0;
    std::size_t actual_positive = 0;
    std::size_t true_positive = 0;
};

std::map<int, GroupTally> tally_groups(const PredictionSet& preds, const GroupAssignment& a) {
    std::map<int, GroupTally> tallies;
    for (int g : a.group_ids()) tallies[g] = GroupTally{};
    for (const auto& p : preds.items) {
        auto it = a.group_of.find(p.id);
        if (it == a.group_of.end())
            fail(Errc::UnassignedNode, "prediction id '" + p.id + "' has no group assignment");
        auto& t = tallies[it->second];
        t.count += 1;
        if (p.y_hat == 1) t.predicted_positive += 1;
        if (p.y_true == 1) {
            t.actual_positive += 1;
            if (p.y_hat == 1) t.true_positive += 1;
        }
    }
    return tallies;
}

double max_pairwise_gap(const std::vector<double>& rates) {
    const auto [lo, hi] = std::minmax_element(rates.begin(), rates.end());
    return *hi - *lo;
}

}  // namespace

std::vector<GroupRate> group_rates(const PredictionSet& preds, const GroupAssignment& a) {
    std::vector<GroupRate> out;
    for (const auto& [g, t] : tally_groups(preds, a)) {
        GroupRate rate;
        rate.group = g;
        rate.count = t.count;
        rate.predicted_positive = t.predicted_positive;
        rate.actual_positive = t.actual_positive;
        rate.positive_rate =
            t.count > 0 ? static_cast<double>(t.predicted_positive) / t.count : 0.0;
        if (t.actual_positive > 0)
            rate.tpr = static_cast<double>(t.true_positive) / t.actual_positive;
        out.push_back(std::move(rate));
    }
    return out;
}

double dp_gap(const PredictionSet& preds, const GroupAssignment& a) {
    std::vector<double> rates;
    for (const auto& [g, t] : tally_groups(preds, a)) {
        if (t.count == 0)
            fail(Errc::EmptyGroup,
                 "group " + std::to_string(g) + " has no predicted members");
        rates.push_back(static_cast<double>(t.predicted_positive) / t.count);
    }
    return max_pairwise_gap(rates);
}

double eo_gap(const PredictionSet& preds, const GroupAssignment& a) {
    std::vector<double> tprs;
    for (const auto& [g, t] : tally_groups(preds, a)) {
        if (t.actual_positive == 0)
            fail(Errc::NoPositives,
                 "group " + std::to_string(g) + " has no positive outcomes");
        tprs.push_back(static_cast<double>(t.true_positive) / t.actual_positive);
    }
    return max_pairwise_gap(tprs);
}

FtuReport ftu_check(const ModelManifest& manifest, const std::set<std::string>& protected_names) {
    FtuReport report;
    for (const auto& name : manifest.inputs)
        if (protected_names.count(name)) report.offenders.push_back(name);
    std::sort(report.offenders.begin(), report.offenders.end());
    report.offenders.erase(std::unique(report.offenders.begin(), report.offenders.end()),
                           report.offenders.end());
    report.ok = report.offenders.empty();
    return report;
}

EoAdjustment eo_adjust(const PredictionSet& preds, const GroupAssignment& a, double tolerance) {
    // Candidate thresholds: observed distinct scores plus the endpoints.
    std::vector<double> grid;
    grid.reserve(preds.items.size() + 2);
    for (const auto& p : preds.items) grid.push_back(p.score);
    grid.push_back(0.0);
    grid.push_back(1.0);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // Per group: positives' scores, and every achievable (tpr, threshold).
    std::map<int, std::vector<double>> positive_scores;
    for (int g : a.group_ids()) positive_scores[g];
    for (const auto& p : preds.items) {
        auto it = a.group_of.find(p.id);
        if (it == a.group_of.end())
            fail(Errc::UnassignedNode, "prediction id '" + p.id + "' has no group assignment");
        if (p.y_true == 1) positive_scores[it->second].push_back(p.score);
    }

    struct Achievable {
        double tpr;
        double threshold;  // largest grid value realizing this tpr
    };
    std::map<int, std::vector<Achievable>> options;
    for (auto& [g, scores] : positive_scores) {
        if (scores.empty())
            fail(Errc::NoPositives, "group " + std::to_string(g) + " has no positive outcomes");
        std::sort(scores.begin(), scores.end());
        std::vector<Achievable>& list = options[g];
        for (double t : grid) {
            const auto above = scores.end() -
                               std::upper_bound(scores.begin(), scores.end(), t);
            const double tpr = static_cast<double>(above) / static_cast<double>(scores.size());
            if (!list.empty() && list.back().tpr == tpr)
                list.back().threshold = t;  // same behavior, keep the largest threshold
            else
                list.push_back({tpr, t});
        }
        std::sort(list.begin(), list.end(),
                  [](const Achievable& x, const Achievable& y) { return x.tpr < y.tpr; });
    }

    // Minimum-range window over one achievable TPR per group (equivalent to
    // the exhaustive threshold-tuple sweep). Ties prefer the highest window.
    struct Tagged {
        double tpr;
        int group;
        std::size_t index;
    };
    std::vector<Tagged> all;
    for (const auto& [g, list] : options)
        for (std::size_t i = 0; i < list.size(); ++i) all.push_back({list[i].tpr, g, i});
    std::sort(all.begin(), all.end(), [](const Tagged& x, const Tagged& y) {
        if (x.tpr != y.tpr) return x.tpr < y.tpr;
        return x.group < y.group;
    });

    const std::size_t group_count = options.size();
    std::map<int, std::size_t> in_window;
    std::size_t covered = 0;
    double best_range = 2.0;
    double best_low = -1.0;
    double best_high = -1.0;
    std::size_t left = 0;
    for (std::size_t right = 0; right < all.size(); ++right) {
        if (in_window[all[right].group]++ == 0) ++covered;
        while (covered == group_count) {
            const double range = all[right].tpr - all[left].tpr;
            if (range < best_range ||
                (range == best_range && all[left].tpr > best_low)) {
                best_range = range;
                best_low = all[left].tpr;
                best_high = all[right].tpr;
            }
            if (--in_window[all[left].group] == 0) --covered;
            ++left;
        }
    }

    EoAdjustment result;
    result.gap_before = eo_gap(preds, a);

    std::vector<double> chosen;
    for (const auto& [g, list] : options) {
        // Largest achievable TPR inside the best window.
        const Achievable* pick = nullptr;
        for (const auto& opt : list)
            if (opt.tpr >= best_low && opt.tpr <= best_high) pick = &opt;
        result.thresholds[g] = pick->threshold;
        chosen.push_back(pick->tpr);
    }
    result.gap_after = max_pairwise_gap(chosen);

    result.adjusted = preds;
    result.adjusted.threshold.reset();
    for (auto& p : result.adjusted.items)
        p.y_hat = p.score > result.thresholds.at(a.group_of.at(p.id)) ? 1 : 0;
    result.within_tolerance = result.gap_after <= tolerance + 1e-12;
    return result;
}

namespace {

std::map<int, std::size_t> dense_index(const std::set<int>& labels) {
    std::map<int, std::size_t> index;
    for (int l : labels) index.emplace(l, index.size());
    return index;
}

}  // namespace

double alignment_score(const GroupAssignment& a, const std::map<std::string, int>& reference) {
    if (a.group_of.empty()) fail(Errc::InvalidArgument, "empty assignment");

    std::set<int> a_labels;
    std::set<int> r_labels;
    for (const auto& [id, g] : a.group_of) {
        auto it = reference.find(id);
        if (it == reference.end())
            fail(Errc::MissingReference, "no reference label for '" + id + "'");
        a_labels.insert(g);
        r_labels.insert(it->second);
    }

    const auto a_index = dense_index(a_labels);
    const auto r_index = dense_index(r_labels);
    const std::size_t ka = a_index.size();
    const std::size_t kr = r_index.size();
    const std::size_t k = std::max(ka, kr);
    if (k > 8)
        fail(Errc::InvalidArgument,
             "alignment supports at most 8 distinct groups per side, got " + std::to_string(k));

    std::vector<std::vector<std::size_t>> counts(ka, std::vector<std::size_t>(kr, 0));
    std::vector<std::size_t> ref_totals(kr, 0);
    for (const auto& [id, g] : a.group_of) {
        const std::size_t ai = a_index.at(g);
        const std::size_t ri = r_index.at(reference.at(id));
        counts[ai][ri] += 1;
        ref_totals[ri] += 1;
    }

    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 0.0;
    do {
        double bacc = 0.0;
        for (std::size_t ai = 0; ai < ka; ++ai) {
            const std::size_t target = perm[ai];
            if (target < kr)
                bacc += static_cast<double>(counts[ai][target]) /
                        static_cast<double>(ref_totals[target]);
        }
        best = std::max(best, bacc / static_cast<double>(kr));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

double alignment_score(const GroupAssignment& a, const Population& pop) {
    if (!pop.has_latent())
        fail(Errc::MissingReference, "population carries no latent reference labels");
    std::map<std::string, int> reference;
    for (const auto& ind : pop.individuals) reference[ind.id] = *ind.latent_group;
    return alignment_score(a, reference);
}

}  // namespace segscope
