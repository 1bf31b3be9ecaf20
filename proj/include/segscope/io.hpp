#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "segscope/core.hpp"
#include "segscope/fairness.hpp"

namespace segscope {

// CSV layer. All files are headered, comma-separated, no quoting; parse
// errors carry 1-based line numbers.
//
//   individuals:  id[,latent_group],f_<name>...   feature columns are prefixed
//                 "f_" and the name's leading word is its category
//   tracts:       id,tract_id
//   edges:        source,target
//   groups:       id,group
//   predictions:  id,y_true,score,y_hat

Population read_individuals(const std::string& path);
void write_individuals(const std::string& path, const Population& pop);

std::vector<std::pair<std::string, std::string>> read_tracts(const std::string& path);
void write_tracts(const std::string& path, const TractMap& map);

std::vector<std::pair<std::string, std::string>> read_edges(const std::string& path);
void write_edges(const std::string& path, const SocialGraph& graph);

std::vector<std::pair<std::string, int>> read_groups(const std::string& path);
void write_groups(const std::string& path, const GroupAssignment& assignment);

PredictionSet read_predictions(const std::string& path);
void write_predictions(const std::string& path, const PredictionSet& preds);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& content);

/// Shortest text for a finite double that keeps 12 significant digits; used
/// for every number a report emits so reruns are byte-identical.
std::string format_double(double value);

/// Minimal JSON document builder. Objects keep insertion order; dump() emits a
/// stable 2-space-indented rendering with format_double for all numbers.
class Json {
public:
    static Json object();
    static Json array();
    static Json str(std::string value);
    static Json num(double value);
    static Json integer(long long value);
    static Json uint(std::uint64_t value);
    static Json boolean(bool value);

    Json& set(std::string key, Json value);  // object only; keys must be fresh
    Json& push(Json value);                  // array only

    std::string dump() const;  // trailing newline included

private:
    enum class Kind { Object, Array, String, Number, Integer, Uint, Bool };

    Kind kind_ = Kind::Object;
    double number_ = 0.0;
    long long integer_ = 0;
    std::uint64_t uint_ = 0;
    bool bool_ = false;
    std::string string_;
    std::vector<std::pair<std::string, Json>> members_;
    std::vector<Json> elements_;

    void render(std::string& out, int depth) const;
};

}  // namespace segscope
