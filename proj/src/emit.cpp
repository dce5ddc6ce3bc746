#include "spindec/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace spindec {

std::string format_scientific(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.14e", v);
    return buf;
}

namespace {

std::string format_plain(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_cell(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::scientific: return format_scientific(c.num);
        case Cell::Kind::plain: return format_plain(c.num);
        case Cell::Kind::integer: return std::to_string(c.intval);
        case Cell::Kind::text: break;
    }
    return c.str; // column names never need quoting; free text stays raw
}

nlohmann::ordered_json json_cell(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::scientific:
        case Cell::Kind::plain:
            if (std::isnan(c.num)) return "nan";
            if (std::isinf(c.num)) return c.num > 0.0 ? "inf" : "-inf";
            return c.num;
        case Cell::Kind::integer: return c.intval;
        case Cell::Kind::text: break;
    }
    return c.str;
}

} // namespace

std::string render(const Table& table, EmitFormat format) {
    if (format == EmitFormat::csv) {
        std::string out;
        for (std::size_t j = 0; j < table.columns.size(); ++j) {
            if (j) out += ',';
            out += table.columns[j];
        }
        out += '\n';
        for (const auto& row : table.rows) {
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (j) out += ',';
                out += csv_cell(row[j]);
            }
            out += '\n';
        }
        return out;
    }

    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t j = 0; j < row.size(); ++j) {
            obj[table.columns[j]] = json_cell(row[j]);
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

void emit(const Table& table, EmitFormat format, std::ostream& out) {
    out << render(table, format);
}

void emit_to_file(const Table& table, EmitFormat format, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit: cannot open destination: " + path);
    f << render(table, format);
    f.flush();
    if (!f) throw std::runtime_error("emit: write failed: " + path);
}

} // namespace spindec
