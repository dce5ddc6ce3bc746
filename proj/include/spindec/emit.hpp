// emit.hpp — deterministic tabular output: CSV with fixed scientific
// formatting and JSON as an array of flat objects. Identical inputs must
// produce byte-identical bytes.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spindec {

struct Cell {
    enum class Kind { scientific, plain, integer, text };
    Kind kind = Kind::text;
    double num = 0.0;
    long long intval = 0;
    std::string str;

    static Cell sci(double v) { Cell c; c.kind = Kind::scientific; c.num = v; return c; }
    static Cell plain(double v) { Cell c; c.kind = Kind::plain; c.num = v; return c; }
    static Cell integer(long long v) { Cell c; c.kind = Kind::integer; c.intval = v; return c; }
    static Cell text(std::string v) { Cell c; c.kind = Kind::text; c.str = std::move(v); return c; }
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows; // each row has columns.size() cells
};

enum class EmitFormat { csv, json };

// 15 significant digits, 'e' notation, decimal point '.'; infinities are the
// words "inf"/"-inf", NaN is "nan".
std::string format_scientific(double v);

std::string render(const Table& table, EmitFormat format);
void emit(const Table& table, EmitFormat format, std::ostream& out);
void emit_to_file(const Table& table, EmitFormat format, const std::string& path);

} // namespace spindec
