#include "farsee/dataset.hpp"

#include "farsee/errors.hpp"
#include "farsee/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace farsee {

bool ProjectRecord::complete() const {
    return std::all_of(efforts.begin(), efforts.end(),
                       [](const auto& e) { return e.has_value(); });
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_effort(const std::string& field, const std::string& row_id,
                    std::string_view column) {
    double value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
        throw SchemaError("row '" + row_id + "', column " + std::string(column) +
                          ": not a number: '" + field + "'");
    }
    if (value < 0) {
        throw SchemaError("row '" + row_id + "', column " + std::string(column) +
                          ": negative effort " + field);
    }
    return value;
}

std::string format_double(double v) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

} // namespace

Dataset parse_dataset(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("empty CSV input");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

    // Header: project_id plus the six stage codes, any order, no extras.
    auto header = split_fields(line);
    int id_col = -1;
    std::array<int, kStageCount> stage_col;
    stage_col.fill(-1);
    for (std::size_t c = 0; c < header.size(); ++c) {
        const std::string name = trim(header[c]);
        if (name == "project_id") {
            if (id_col >= 0) throw SchemaError("duplicate column 'project_id'");
            id_col = static_cast<int>(c);
            continue;
        }
        bool matched = false;
        for (Stage s : all_stages()) {
            if (name == stage_code(s)) {
                int& slot = stage_col[ordinal(s) - 1];
                if (slot >= 0) throw SchemaError("duplicate column '" + name + "'");
                slot = static_cast<int>(c);
                matched = true;
                break;
            }
        }
        if (!matched) throw SchemaError("unknown column '" + name + "'");
    }
    if (id_col < 0) throw SchemaError("missing column 'project_id'");
    for (Stage s : all_stages()) {
        if (stage_col[ordinal(s) - 1] < 0) {
            throw SchemaError("missing column '" + std::string(stage_code(s)) + "'");
        }
    }

    Dataset d;
    std::set<std::string> seen_ids;
    std::size_t row_no = 1;
    while (std::getline(in, line)) {
        ++row_no;
        if (trim(line).empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw SchemaError("row " + std::to_string(row_no) + ": expected " +
                              std::to_string(header.size()) + " fields, got " +
                              std::to_string(fields.size()));
        }
        ProjectRecord rec;
        rec.project_id = trim(fields[static_cast<std::size_t>(id_col)]);
        if (rec.project_id.empty()) {
            throw SchemaError("row " + std::to_string(row_no) + ": empty project_id");
        }
        if (!seen_ids.insert(rec.project_id).second) {
            throw SchemaError("duplicate project_id '" + rec.project_id + "'");
        }
        for (Stage s : all_stages()) {
            const std::string field =
                trim(fields[static_cast<std::size_t>(stage_col[ordinal(s) - 1])]);
            if (field.empty()) continue; // missing effort
            rec.effort(s) = parse_effort(field, rec.project_id, stage_code(s));
        }
        d.records.push_back(std::move(rec));
    }
    return d;
}

std::string to_csv(const Dataset& d) {
    std::string out = "project_id";
    for (Stage s : all_stages()) {
        out += ',';
        out += stage_code(s);
    }
    out += '\n';
    for (const auto& rec : d.records) {
        out += rec.project_id;
        for (Stage s : all_stages()) {
            out += ',';
            if (rec.effort(s)) out += format_double(*rec.effort(s));
        }
        out += '\n';
    }
    return out;
}

Dataset filter_complete(const Dataset& d) {
    Dataset out;
    out.unit_label = d.unit_label;
    for (const auto& rec : d.records) {
        if (rec.complete()) out.records.push_back(rec);
    }
    if (out.records.empty()) {
        throw DataError("no complete records remain after filtering");
    }
    return out;
}

OutlierResult remove_outliers(const Dataset& d, const OutlierPolicy& policy) {
    if (policy.kind == OutlierPolicy::Kind::none) return {d, {}};

    for (const auto& rec : d.records) {
        if (!rec.complete()) {
            throw ParameterError("remove_outliers requires a complete dataset (record '" +
                                 rec.project_id + "' has missing efforts)");
        }
    }
    if (d.records.size() < 4) {
        throw DataError("iqr outlier policy needs at least 4 records, got " +
                        std::to_string(d.records.size()));
    }

    std::array<double, kStageCount> lo_fence{}, hi_fence{};
    for (Stage s : all_stages()) {
        std::vector<double> column;
        column.reserve(d.records.size());
        for (const auto& rec : d.records) column.push_back(*rec.effort(s));
        const Quartiles q = quartiles(column);
        lo_fence[ordinal(s) - 1] = q.q1 - policy.k * q.iqr();
        hi_fence[ordinal(s) - 1] = q.q3 + policy.k * q.iqr();
    }

    OutlierResult result;
    result.dataset.unit_label = d.unit_label;
    for (const auto& rec : d.records) {
        DroppedRecord drop{rec.project_id, {}};
        for (Stage s : all_stages()) {
            const double v = *rec.effort(s);
            if (v < lo_fence[ordinal(s) - 1] || v > hi_fence[ordinal(s) - 1]) {
                drop.stages.push_back(s);
            }
        }
        if (drop.stages.empty()) {
            result.dataset.records.push_back(rec);
        } else {
            result.dropped.push_back(std::move(drop));
        }
    }
    return result;
}

} // namespace farsee
