#include "farsee/stage.hpp"

#include "farsee/errors.hpp"

namespace farsee {

namespace {

constexpr std::array<std::string_view, kStageCount> kCodes = {
    "EP", "ES", "ED", "EB", "ET", "EI"};

constexpr std::array<std::string_view, kStageCount> kNames = {
    "Planning", "Specification", "Design", "Building", "Testing", "Implementation"};

} // namespace

std::string_view stage_code(Stage s) { return kCodes[ordinal(s) - 1]; }

std::string_view stage_name(Stage s) { return kNames[ordinal(s) - 1]; }

Stage stage_from_code(std::string_view code) {
    for (int i = 0; i < kStageCount; ++i) {
        if (kCodes[i] == code) return static_cast<Stage>(i + 1);
    }
    throw SchemaError("unknown stage code: '" + std::string(code) + "'");
}

Stage stage_from_ordinal(int ord) {
    if (ord < 1 || ord > kStageCount) {
        throw ParameterError("stage ordinal out of range: " + std::to_string(ord));
    }
    return static_cast<Stage>(ord);
}

const std::array<Stage, kStageCount>& all_stages() {
    static const std::array<Stage, kStageCount> stages = {
        Stage::Planning, Stage::Specification, Stage::Design,
        Stage::Building, Stage::Testing, Stage::Implementation};
    return stages;
}

std::vector<Stage> prior_stages(Stage target) {
    std::vector<Stage> out;
    for (int i = 1; i < ordinal(target); ++i) out.push_back(static_cast<Stage>(i));
    return out;
}

} // namespace farsee
