#include "farsee/config.hpp"

#include "farsee/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace farsee {

void PipelineConfig::validate() const {
    for (Stage s : all_stages()) {
        if (intervals_for(s) < 1) {
            throw SchemaError("intervals." + std::string(stage_code(s)) + " must be >= 1");
        }
        const PaddingPolicy& pad = padding_for(s);
        if (pad.mode == PaddingPolicy::Mode::fraction && !(pad.fraction > 0)) {
            throw SchemaError("padding." + std::string(stage_code(s)) +
                              ".fraction must be positive");
        }
        if (pad.mode == PaddingPolicy::Mode::explicit_pads && (!(pad.d1 > 0) || !(pad.d2 > 0))) {
            throw SchemaError("padding." + std::string(stage_code(s)) +
                              ".d1/.d2 must be positive");
        }
    }
    if (!(min_support > 0 && min_support <= 1)) {
        throw SchemaError("mining.min_support must be in (0, 1]");
    }
    if (!(min_confidence > 0 && min_confidence <= 1)) {
        throw SchemaError("mining.min_confidence must be in (0, 1]");
    }
    if (outlier_policy.kind == OutlierPolicy::Kind::iqr && !(outlier_policy.k > 0)) {
        throw SchemaError("preprocessing.outlier_k must be positive");
    }
}

namespace {

std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    double out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw SchemaError("config key '" + key + "': not a number: '" + value + "'");
    }
    return out;
}

int parse_int(const std::string& key, const std::string& value) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw SchemaError("config key '" + key + "': not an integer: '" + value + "'");
    }
    return out;
}

void apply_key(PipelineConfig& cfg, const std::string& key, const std::string& value) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : key) {
        if (c == '.') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);

    if (parts.size() == 2 && parts[0] == "intervals") {
        cfg.intervals_for(stage_from_code(parts[1])) = parse_int(key, value);
        return;
    }
    if (parts.size() == 3 && parts[0] == "padding") {
        PaddingPolicy& pad = cfg.padding_for(stage_from_code(parts[1]));
        if (parts[2] == "mode") {
            if (value == "fraction") {
                pad.mode = PaddingPolicy::Mode::fraction;
            } else if (value == "explicit") {
                pad.mode = PaddingPolicy::Mode::explicit_pads;
            } else {
                throw SchemaError("config key '" + key + "': unknown mode '" + value + "'");
            }
        } else if (parts[2] == "fraction") {
            pad.fraction = parse_number(key, value);
        } else if (parts[2] == "d1") {
            pad.d1 = parse_number(key, value);
        } else if (parts[2] == "d2") {
            pad.d2 = parse_number(key, value);
        } else {
            throw SchemaError("unknown config key '" + key + "'");
        }
        return;
    }
    if (parts.size() == 2 && parts[0] == "mining") {
        if (parts[1] == "min_support") {
            cfg.min_support = parse_number(key, value);
        } else if (parts[1] == "min_confidence") {
            cfg.min_confidence = parse_number(key, value);
        } else {
            throw SchemaError("unknown config key '" + key + "'");
        }
        return;
    }
    if (parts.size() == 2 && parts[0] == "preprocessing") {
        if (parts[1] == "outlier_policy") {
            if (value == "none") {
                cfg.outlier_policy.kind = OutlierPolicy::Kind::none;
            } else if (value == "iqr") {
                cfg.outlier_policy.kind = OutlierPolicy::Kind::iqr;
            } else {
                throw SchemaError("config key '" + key + "': unknown policy '" + value + "'");
            }
        } else if (parts[1] == "outlier_k") {
            cfg.outlier_policy.k = parse_number(key, value);
        } else {
            throw SchemaError("unknown config key '" + key + "'");
        }
        return;
    }
    if (parts.size() == 2 && parts[0] == "prediction" && parts[1] == "fallback") {
        if (value == "error") {
            cfg.fallback = PipelineConfig::FallbackKind::error;
        } else if (value == "median") {
            cfg.fallback = PipelineConfig::FallbackKind::dataset_median;
        } else {
            throw SchemaError("config key '" + key + "': unknown fallback '" + value + "'");
        }
        return;
    }
    if (parts.size() == 2 && parts[0] == "dataset" && parts[1] == "unit") {
        cfg.unit_label = value;
        return;
    }
    throw SchemaError("unknown config key '" + key + "'");
}

} // namespace

PipelineConfig parse_config(const std::string& text, PipelineConfig base) {
    PipelineConfig cfg = base;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trimmed(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw SchemaError("config line " + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        apply_key(cfg, trimmed(stripped.substr(0, eq)), trimmed(stripped.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

PipelineConfig load_config_file(const std::string& path, PipelineConfig base) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), base);
}

} // namespace farsee
