#pragma once

// Deterministic JSON and CSV emitters for command output. Numbers are printed
// with 17 significant digits; non-finite numbers become JSON null.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace gmlcs {

using ordered_json = nlohmann::ordered_json;

inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    ordered_json to_json() const {
        ordered_json arr = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json obj = ordered_json::object();
            for (std::size_t i = 0; i < header.size() && i < row.size(); ++i) {
                obj[header[i]] = row[i];
            }
            arr.push_back(std::move(obj));
        }
        return arr;
    }
};

struct OutputRecord {
    std::string command;
    ordered_json inputs = ordered_json::object();
    ordered_json results = ordered_json::object();
    std::vector<std::string> diagnostics;
    std::string schema_version = "1";

    ordered_json to_json() const {
        ordered_json j = ordered_json::object();
        j["schema_version"] = schema_version;
        j["command"] = command;
        j["inputs"] = inputs;
        j["results"] = results;
        j["diagnostics"] = diagnostics;
        return j;
    }
};

namespace detail {

inline void write_indent(std::ostream& os, int depth) {
    for (int i = 0; i < depth; ++i) {
        os << "  ";
    }
}

inline void write_json_value(std::ostream& os, const ordered_json& j, int depth) {
    switch (j.type()) {
        case ordered_json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            std::size_t i = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++i) {
                write_indent(os, depth + 1);
                os << ordered_json(it.key()).dump() << ": ";
                write_json_value(os, it.value(), depth + 1);
                os << (i + 1 < j.size() ? ",\n" : "\n");
            }
            write_indent(os, depth);
            os << "}";
            return;
        }
        case ordered_json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                write_indent(os, depth + 1);
                write_json_value(os, j[i], depth + 1);
                os << (i + 1 < j.size() ? ",\n" : "\n");
            }
            write_indent(os, depth);
            os << "]";
            return;
        }
        case ordered_json::value_t::number_float: {
            const double v = j.get<double>();
            os << (std::isfinite(v) ? format_number(v) : "null");
            return;
        }
        default:
            os << j.dump();
    }
}

}  // namespace detail

inline void write_json(std::ostream& os, const ordered_json& j) {
    detail::write_json_value(os, j, 0);
    os << '\n';
}

inline void write_json(std::ostream& os, const OutputRecord& rec) { write_json(os, rec.to_json()); }

/// Header row, comma separator, LF line endings.
inline void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        os << (i ? "," : "") << t.header[i];
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << format_number(row[i]);
        }
        os << '\n';
    }
}

}  // namespace gmlcs
