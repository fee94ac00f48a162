#include "exc/output.hpp"

#include <cstdio>
#include <sstream>

namespace exc {

Format parse_format(const std::string& s) {
    if (s == "table") return Format::Table;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    throw error("unknown format: " + s + " (expected table, json, or csv)");
}

std::string render_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

OutputValue OutputValue::from_surd(const SurdScalar& s) {
    OutputValue v;
    v.exact = true;
    v.surd = s;
    v.floating = s.to_double();
    return v;
}

OutputValue OutputValue::from_double(double d) {
    OutputValue v;
    v.exact = false;
    v.floating = d;
    return v;
}

nlohmann::json OutputValue::to_json() const {
    nlohmann::json j;
    if (exact) {
        j["rational"] = to_string(surd.coeff());
        if (surd.is_twopi_form()) {
            j["twopi_half_power"] = surd.twopi_half_power();
        } else {
            j["pow2_half_power"] = surd.pow2_half();
            j["pi_half_power"] = surd.powpi_half();
        }
    }
    j["float"] = as_double();
    return j;
}

OutputValue OutputValue::from_json(const nlohmann::json& j) {
    OutputValue v;
    if (j.contains("rational")) {
        Rational c = parse_rational(j.at("rational").get<std::string>());
        if (j.contains("twopi_half_power")) {
            v.surd = SurdScalar::twopi_power(c, j.at("twopi_half_power").get<int>());
        } else {
            v.surd = SurdScalar::make(c, j.value("pow2_half_power", 0),
                                      j.value("pi_half_power", 0));
        }
        v.exact = true;
        v.floating = v.surd.to_double();
    } else {
        v.exact = false;
        v.floating = j.at("float").get<double>();
    }
    return v;
}

std::string OutputValue::render_exact() const {
    if (!exact) return "";
    return surd.to_string();
}

namespace {

std::string index_string(const MultiIndex& k) {
    if (k.empty()) return "";
    std::string s = "(";
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(k[i]);
    }
    return s + ")";
}

}  // namespace

nlohmann::json OutputRecord::to_json() const {
    nlohmann::json j;
    j["kind"] = kind;
    j["context"] = context;
    j["entries"] = nlohmann::json::array();
    for (const auto& e : entries) {
        nlohmann::json je;
        if (!e.index.empty()) je["index"] = e.index;
        if (!e.label.empty()) je["label"] = e.label;
        je["value"] = e.value.to_json();
        j["entries"].push_back(je);
    }
    return j;
}

OutputRecord OutputRecord::from_json(const nlohmann::json& j) {
    OutputRecord r;
    r.kind = j.value("kind", "");
    if (j.contains("context"))
        r.context = j.at("context").get<std::map<std::string, std::string>>();
    for (const auto& je : j.at("entries")) {
        OutputEntry e;
        if (je.contains("index")) e.index = je.at("index").get<MultiIndex>();
        e.label = je.value("label", "");
        e.value = OutputValue::from_json(je.at("value"));
        r.entries.push_back(std::move(e));
    }
    return r;
}

std::string OutputRecord::render(Format f) const {
    std::ostringstream os;
    switch (f) {
        case Format::Json:
            os << to_json().dump(2) << "\n";
            break;
        case Format::Csv: {
            os << "index,label,exact,float\n";
            for (const auto& e : entries) {
                os << index_string(e.index) << "," << e.label << ","
                   << e.value.render_exact() << "," << render_double(e.value.as_double())
                   << "\n";
            }
            break;
        }
        case Format::Table: {
            os << "# " << kind;
            for (const auto& [k, v] : context) os << "  " << k << "=" << v;
            os << "\n";
            for (const auto& e : entries) {
                std::string key = e.label.empty() ? index_string(e.index)
                                                  : (e.index.empty() ? e.label
                                                                     : e.label + index_string(e.index));
                os << key << "\t";
                std::string ex = e.value.render_exact();
                if (!ex.empty()) os << ex << "\t";
                os << render_double(e.value.as_double()) << "\n";
            }
            break;
        }
    }
    return os.str();
}

}  // namespace exc
