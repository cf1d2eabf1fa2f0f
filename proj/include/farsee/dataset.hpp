#pragma once

#include "farsee/stage.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace farsee {

// One project's recorded effort per lifecycle stage. Values share one
// dataset-wide unit (man-months, hours, ...); the pipeline never interprets
// it. A stage without a record is absent rather than zero.
struct ProjectRecord {
    std::string project_id;
    std::array<std::optional<double>, kStageCount> efforts{};

    const std::optional<double>& effort(Stage s) const { return efforts[ordinal(s) - 1]; }
    std::optional<double>& effort(Stage s) { return efforts[ordinal(s) - 1]; }
    bool complete() const;

    bool operator==(const ProjectRecord&) const = default;
};

struct Dataset {
    std::vector<ProjectRecord> records;
    std::string unit_label;

    bool operator==(const Dataset&) const = default;
};

// Parses CSV text with a header naming project_id and the six stage codes in
// any order. Empty fields are missing efforts. Throws SchemaError for header
// problems and ParameterError-free row diagnostics as SchemaError naming the
// row and column.
Dataset parse_dataset(const std::string& csv_text);

// Serializes in canonical column order (project_id, EP..EI) with shortest
// round-trip numeric formatting, so parse(serialize(d)) == d.
std::string to_csv(const Dataset& d);

// Keeps only records with all six efforts present, preserving order.
// Throws DataError when nothing survives.
Dataset filter_complete(const Dataset& d);

struct OutlierPolicy {
    enum class Kind { none, iqr };
    Kind kind = Kind::none;
    double k = 1.5; // fence multiplier for the iqr policy

    static OutlierPolicy none() { return {}; }
    static OutlierPolicy iqr(double k = 1.5) { return {Kind::iqr, k}; }
};

struct DroppedRecord {
    std::string project_id;
    std::vector<Stage> stages; // stages whose value fell outside the fences
};

struct OutlierResult {
    Dataset dataset;
    std::vector<DroppedRecord> dropped;
};

// Removes records with any stage effort outside [Q1 - k*IQR, Q3 + k*IQR],
// quartiles computed per stage over the input. Policy none is the identity.
// Requires a complete dataset; the iqr policy needs at least 4 records.
OutlierResult remove_outliers(const Dataset& d, const OutlierPolicy& policy);

} // namespace farsee
