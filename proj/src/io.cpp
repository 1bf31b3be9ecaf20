#include "segscope/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace segscope {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::vector<std::string> read_lines(const std::string& path) {
    std::string text = read_text(path);
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        std::size_t end = nl == std::string::npos ? text.size() : nl;
        std::size_t len = end - start;
        if (len > 0 && text[start + len - 1] == '\r') --len;
        lines.push_back(text.substr(start, len));
        if (nl == std::string::npos) break;
        start = nl + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no,
                             const std::string& what) {
    fail(Errc::ParseError, path + ":" + std::to_string(line_no) + ": " + what);
}

int parse_int(const std::string& text, const std::string& path, std::size_t line_no) {
    try {
        std::size_t used = 0;
        int value = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        parse_fail(path, line_no, "expected an integer, got '" + text + "'");
    }
}

double parse_number(const std::string& text, const std::string& path, std::size_t line_no) {
    try {
        std::size_t used = 0;
        double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        parse_fail(path, line_no, "expected a number, got '" + text + "'");
    }
}

struct Table {
    std::string path;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // field counts already checked
};

Table read_table(const std::string& path) {
    Table table;
    table.path = path;
    std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) parse_fail(path, 1, "missing header");
    table.header = split_fields(lines[0]);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) parse_fail(path, i + 1, "blank line");
        std::vector<std::string> fields = split_fields(lines[i]);
        if (fields.size() != table.header.size())
            parse_fail(path, i + 1,
                       "expected " + std::to_string(table.header.size()) + " fields, got " +
                           std::to_string(fields.size()));
        table.rows.push_back(std::move(fields));
    }
    return table;
}

void expect_header(const Table& table, const std::vector<std::string>& names) {
    if (table.header != names) {
        std::string want;
        for (std::size_t i = 0; i < names.size(); ++i)
            want += (i ? "," : "") + names[i];
        parse_fail(table.path, 1, "expected header '" + want + "'");
    }
}

std::string join_csv(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + fields[i];
    line += '\n';
    return line;
}

/// Full-precision rendering for data files (scores survive a round trip).
std::string format_data_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::vector<std::pair<std::string, std::string>> read_string_pairs(
    const std::string& path, const std::vector<std::string>& header) {
    Table table = read_table(path);
    expect_header(table, header);
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(table.rows.size());
    for (auto& row : table.rows) pairs.emplace_back(std::move(row[0]), std::move(row[1]));
    return pairs;
}

}  // namespace

Population read_individuals(const std::string& path) {
    Table table = read_table(path);
    if (table.header.empty() || table.header[0] != "id")
        parse_fail(path, 1, "first column must be 'id'");
    bool has_latent = table.header.size() > 1 && table.header[1] == "latent_group";
    std::size_t first_feature = has_latent ? 2 : 1;

    std::vector<FeatureSchema::Feature> features;
    for (std::size_t c = first_feature; c < table.header.size(); ++c) {
        const std::string& column = table.header[c];
        if (column.rfind("f_", 0) != 0)
            parse_fail(path, 1, "feature column '" + column + "' must start with 'f_'");
        std::string name = column.substr(2);
        std::string head = name.substr(0, name.find('_'));
        std::optional<FeatureCategory> cat = parse_category(head);
        if (!cat)
            parse_fail(path, 1, "feature column '" + column + "' has unknown category '" +
                                    head + "'");
        features.push_back({std::move(name), *cat});
    }
    if (features.empty()) parse_fail(path, 1, "no feature columns");

    std::vector<Individual> rows;
    rows.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::vector<std::string>& row = table.rows[r];
        Individual ind;
        ind.id = row[0];
        if (has_latent) ind.latent_group = parse_int(row[1], path, r + 2);
        for (std::size_t c = first_feature; c < row.size(); ++c) {
            if (row[c] == "0" || row[c] == "1") {
                ind.features.bits.push_back(row[c] == "1" ? 1 : 0);
            } else {
                fail(Errc::NonBinaryFeature,
                     path + ":" + std::to_string(r + 2) + ": feature '" +
                         table.header[c] + "' value '" + row[c] + "' is not 0 or 1");
            }
        }
        rows.push_back(std::move(ind));
    }
    return build_population(make_schema(std::move(features)), std::move(rows));
}

void write_individuals(const std::string& path, const Population& pop) {
    std::string out;
    std::vector<std::string> header{"id"};
    if (pop.has_latent()) header.push_back("latent_group");
    for (const auto& f : pop.schema.features) header.push_back("f_" + f.name);
    out += join_csv(header);
    for (const Individual& ind : pop.individuals) {
        std::vector<std::string> row{ind.id};
        if (pop.has_latent()) row.push_back(std::to_string(*ind.latent_group));
        for (std::uint8_t bit : ind.features.bits) row.push_back(bit ? "1" : "0");
        out += join_csv(row);
    }
    write_text(path, out);
}

std::vector<std::pair<std::string, std::string>> read_tracts(const std::string& path) {
    return read_string_pairs(path, {"id", "tract_id"});
}

void write_tracts(const std::string& path, const TractMap& map) {
    std::string out = join_csv({"id", "tract_id"});
    for (const auto& [id, tract] : map.tract_of) out += join_csv({id, tract});
    write_text(path, out);
}

std::vector<std::pair<std::string, std::string>> read_edges(const std::string& path) {
    return read_string_pairs(path, {"source", "target"});
}

void write_edges(const std::string& path, const SocialGraph& graph) {
    std::string out = join_csv({"source", "target"});
    for (const auto& [u, v] : graph.edges) out += join_csv({u, v});
    write_text(path, out);
}

std::vector<std::pair<std::string, int>> read_groups(const std::string& path) {
    Table table = read_table(path);
    expect_header(table, {"id", "group"});
    std::vector<std::pair<std::string, int>> pairs;
    pairs.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r)
        pairs.emplace_back(table.rows[r][0], parse_int(table.rows[r][1], path, r + 2));
    return pairs;
}

void write_groups(const std::string& path, const GroupAssignment& assignment) {
    std::string out = join_csv({"id", "group"});
    for (const auto& [id, group] : assignment.group_of)
        out += join_csv({id, std::to_string(group)});
    write_text(path, out);
}

PredictionSet read_predictions(const std::string& path) {
    Table table = read_table(path);
    expect_header(table, {"id", "y_true", "score", "y_hat"});
    std::vector<Prediction> items;
    items.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        Prediction p;
        p.id = row[0];
        p.y_true = parse_int(row[1], path, r + 2);
        p.score = parse_number(row[2], path, r + 2);
        p.y_hat = parse_int(row[3], path, r + 2);
        items.push_back(std::move(p));
    }
    return build_predictions(std::move(items));
}

void write_predictions(const std::string& path, const PredictionSet& preds) {
    std::string out = join_csv({"id", "y_true", "score", "y_hat"});
    for (const Prediction& p : preds.items)
        out += join_csv({p.id, std::to_string(p.y_true), format_data_double(p.score),
                         std::to_string(p.y_hat)});
    write_text(path, out);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::ParseError, "cannot open '" + path + "': " + std::strerror(errno));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::InvalidArgument, "cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) fail(Errc::InvalidArgument, "write failed for '" + path + "'");
}

std::string format_double(double value) {
    if (!std::isfinite(value)) fail(Errc::InvalidArgument, "non-finite value in report");
    if (value == 0.0) value = 0.0;  // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

Json Json::object() {
    Json j;
    j.kind_ = Kind::Object;
    return j;
}

Json Json::array() {
    Json j;
    j.kind_ = Kind::Array;
    return j;
}

Json Json::str(std::string value) {
    Json j;
    j.kind_ = Kind::String;
    j.string_ = std::move(value);
    return j;
}

Json Json::num(double value) {
    Json j;
    j.kind_ = Kind::Number;
    j.number_ = value;
    return j;
}

Json Json::integer(long long value) {
    Json j;
    j.kind_ = Kind::Integer;
    j.integer_ = value;
    return j;
}

Json Json::uint(std::uint64_t value) {
    Json j;
    j.kind_ = Kind::Uint;
    j.uint_ = value;
    return j;
}

Json Json::boolean(bool value) {
    Json j;
    j.kind_ = Kind::Bool;
    j.bool_ = value;
    return j;
}

Json& Json::set(std::string key, Json value) {
    if (kind_ != Kind::Object) fail(Errc::InvalidArgument, "set() on non-object");
    for (const auto& [k, _] : members_)
        if (k == key) fail(Errc::InvalidArgument, "duplicate report key '" + key + "'");
    members_.emplace_back(std::move(key), std::move(value));
    return *this;
}

Json& Json::push(Json value) {
    if (kind_ != Kind::Array) fail(Errc::InvalidArgument, "push() on non-array");
    elements_.push_back(std::move(value));
    return *this;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
}

}  // namespace

void Json::render(std::string& out, int depth) const {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
    switch (kind_) {
        case Kind::Object: {
            if (members_.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            for (std::size_t i = 0; i < members_.size(); ++i) {
                out += inner;
                append_escaped(out, members_[i].first);
                out += ": ";
                members_[i].second.render(out, depth + 1);
                out += i + 1 < members_.size() ? ",\n" : "\n";
            }
            out += pad + "}";
            return;
        }
        case Kind::Array: {
            if (elements_.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < elements_.size(); ++i) {
                out += inner;
                elements_[i].render(out, depth + 1);
                out += i + 1 < elements_.size() ? ",\n" : "\n";
            }
            out += pad + "]";
            return;
        }
        case Kind::String: append_escaped(out, string_); return;
        case Kind::Number: out += format_double(number_); return;
        case Kind::Integer: out += std::to_string(integer_); return;
        case Kind::Uint: out += std::to_string(uint_); return;
        case Kind::Bool: out += bool_ ? "true" : "false"; return;
    }
}

std::string Json::dump() const {
    std::string out;
    render(out, 0);
    out += '\n';
    return out;
}

}  // namespace segscope
