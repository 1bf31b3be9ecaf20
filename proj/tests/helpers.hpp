#pragma once

// Small builders shared across test files.

#include <unistd.h>

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "segscope/core.hpp"

namespace testutil {

/// Per-process scratch directory for tests that touch the filesystem.
inline std::string scratch_dir() {
    static const std::string dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("segscope_tests_" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d.string();
    }();
    return dir;
}

inline std::string scratch_file(const std::string& name) {
    return scratch_dir() + "/" + name;
}

/// Population from raw bit rows; ids are p0, p1, ... and every feature is a
/// phenotype named x0, x1, ...
inline segscope::Population pop_of(const std::vector<std::vector<int>>& rows,
                                   const std::vector<int>& latent = {}) {
    using namespace segscope;
    std::vector<FeatureSchema::Feature> features;
    for (std::size_t j = 0; j < rows.at(0).size(); ++j)
        features.push_back({"phenotype_x" + std::to_string(j), FeatureCategory::Phenotype});
    std::vector<Individual> inds;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Individual ind;
        ind.id = "p" + std::to_string(i);
        for (int b : rows[i]) ind.features.bits.push_back(static_cast<std::uint8_t>(b));
        if (!latent.empty()) ind.latent_group = latent.at(i);
        inds.push_back(std::move(ind));
    }
    return build_population(make_schema(std::move(features)), std::move(inds));
}

inline segscope::TractMap tracts_of(
    const std::vector<std::pair<std::string, std::string>>& pairs,
    const segscope::Population& pop) {
    return segscope::make_tract_map(pop, pairs);
}

inline segscope::GroupAssignment groups_of(
    const std::vector<std::pair<std::string, int>>& pairs) {
    return segscope::make_assignment(pairs);
}

/// Runs f, which must throw a segscope::Error, and returns its kind.
template <typename F>
segscope::Errc thrown_kind(F&& f) {
    try {
        std::forward<F>(f)();
    } catch (const segscope::Error& e) {
        return e.kind();
    }
    throw std::logic_error("expected a segscope::Error");
}

}  // namespace testutil
