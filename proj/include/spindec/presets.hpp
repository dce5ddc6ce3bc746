// presets.hpp — built-in parameter sets for the Mn12 molecule and a typical
// superparamagnetic particle, plus flat key=value config files.

#pragma once

#include <string>

#include "spindec/bath.hpp"
#include "spindec/spin_system.hpp"

namespace spindec {

struct Preset {
    std::string name;
    SpinSystem sys;
    BathParams bath;
};

// "mn12", "spm", or a path to a key=value config file. Unknown names raise
// an error listing the valid options.
Preset load_preset(const std::string& name_or_path);

// Flat key=value text with keys matching the CSV column names
// (s, A_J, B_J, Bint_J, rho_kg_m3, c_m_s, plus name). Values round-trip
// bit-for-bit through serialize/parse.
std::string serialize_preset(const Preset& preset);
Preset parse_preset_text(const std::string& text, const std::string& origin);

} // namespace spindec
