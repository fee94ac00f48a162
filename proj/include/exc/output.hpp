#pragma once

#include <map>
#include <string>
#include <vector>

#include "exc/exact.hpp"

#include <json.hpp>

namespace exc {

enum class Format { Table, Json, Csv };
Format parse_format(const std::string& s);  // throws on unknown

// A value is either exact (a surd, serialized losslessly as strings plus a
// float rendering) or float-only. Exact values in the q*(2pi)^(e/2) form are
// tagged twopi_half_power; general surds carry the two half-power fields.
struct OutputValue {
    bool exact = false;
    SurdScalar surd;
    double floating = 0;

    static OutputValue from_surd(const SurdScalar& s);
    static OutputValue from_double(double v);
    nlohmann::json to_json() const;
    static OutputValue from_json(const nlohmann::json& j);
    std::string render_exact() const;  // "" when float-only
    double as_double() const { return exact ? surd.to_double() : floating; }
};

struct OutputEntry {
    MultiIndex index;   // may be empty for scalar fields
    std::string label;  // e.g. "u_c"; empty for table rows keyed by index
    OutputValue value;
};

struct OutputRecord {
    std::string kind;
    std::map<std::string, std::string> context;
    std::vector<OutputEntry> entries;

    nlohmann::json to_json() const;
    static OutputRecord from_json(const nlohmann::json& j);
    std::string render(Format f) const;
};

std::string render_double(double v);  // shortest round-trip rendering

}  // namespace exc
