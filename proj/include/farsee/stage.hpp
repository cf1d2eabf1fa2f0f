#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace farsee {

// The six lifecycle stages, in pipeline order. The underlying value is the
// stage ordinal (1-based), so comparisons follow pipeline order directly.
enum class Stage : std::uint8_t {
    Planning = 1,       // EP
    Specification = 2,  // ES
    Design = 3,         // ED
    Building = 4,       // EB
    Testing = 5,        // ET
    Implementation = 6, // EI
};

inline constexpr int kStageCount = 6;

constexpr int ordinal(Stage s) { return static_cast<int>(s); }

// Two-letter effort code (EP, ES, ED, EB, ET, EI).
std::string_view stage_code(Stage s);

// Display name ("Planning", "Specification", ...).
std::string_view stage_name(Stage s);

// Parses a stage code; throws SchemaError on anything else.
Stage stage_from_code(std::string_view code);

Stage stage_from_ordinal(int ord);

// All six stages in pipeline order.
const std::array<Stage, kStageCount>& all_stages();

// Stages strictly before `target` in pipeline order (empty for Planning).
std::vector<Stage> prior_stages(Stage target);

} // namespace farsee
