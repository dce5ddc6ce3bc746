#include "spindec/presets.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace spindec {

Preset load_preset(const std::string& name_or_path) {
    if (name_or_path == "mn12") {
        return Preset{"mn12", SpinSystem(20, 7.5e-24, 1.7e-26),
                      BathParams(7.5e-24, 1.83e3, 2.0e3)};
    }
    if (name_or_path == "spm") {
        // B fixed at 1e-3 A exactly; B_int is 13 cm^-1 ~ 4.1e-23 J.
        return Preset{"spm", SpinSystem(6444, 2.57e-27, 2.57e-30),
                      BathParams(4.1e-23, 5.0e3, 3.0e3)};
    }
    std::ifstream f(name_or_path);
    if (!f) {
        throw std::invalid_argument("load_preset: unknown preset '" + name_or_path +
                                    "' (valid presets: mn12, spm; or a config file path)");
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_preset_text(ss.str(), name_or_path);
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& value, const std::string& origin, int line,
                    const std::string& key) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw std::invalid_argument(origin + ":" + std::to_string(line) +
                                    ": field '" + key + "': cannot parse number '" + value + "'");
    }
    return v;
}

std::string format_exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string serialize_preset(const Preset& preset) {
    std::string out;
    out += "name = " + preset.name + "\n";
    out += "s = " + format_exact(preset.sys.s()) + "\n";
    out += "A_J = " + format_exact(preset.sys.A) + "\n";
    out += "B_J = " + format_exact(preset.sys.B) + "\n";
    out += "Bint_J = " + format_exact(preset.bath.B_int) + "\n";
    out += "rho_kg_m3 = " + format_exact(preset.bath.rho) + "\n";
    out += "c_m_s = " + format_exact(preset.bath.c) + "\n";
    return out;
}

Preset parse_preset_text(const std::string& text, const std::string& origin) {
    std::map<std::string, std::pair<std::string, int>> values; // value, line
    std::string name = origin;

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string stripped = trim(raw);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(origin + ":" + std::to_string(line) +
                                        ": expected 'key = value', got '" + stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key == "name") {
            name = value;
            continue;
        }
        static const char* known[] = {"s", "A_J", "B_J", "Bint_J", "rho_kg_m3", "c_m_s"};
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) {
            throw std::invalid_argument(origin + ":" + std::to_string(line) +
                                        ": unknown field '" + key + "'");
        }
        if (values.count(key)) {
            throw std::invalid_argument(origin + ":" + std::to_string(line) +
                                        ": duplicate field '" + key + "'");
        }
        values[key] = {value, line};
    }

    for (const char* k : {"s", "A_J", "B_J", "Bint_J", "rho_kg_m3", "c_m_s"}) {
        if (!values.count(k)) {
            throw std::invalid_argument(origin + ": missing required field '" + std::string(k) +
                                        "'");
        }
    }

    auto get = [&](const char* k) {
        const auto& [value, at_line] = values[k];
        return parse_double(value, origin, at_line, k);
    };
    const SpinSystem sys = SpinSystem::from_s(get("s"), get("A_J"), get("B_J"));
    const BathParams bath(get("Bint_J"), get("rho_kg_m3"), get("c_m_s"));
    return Preset{name, sys, bath};
}

} // namespace spindec
