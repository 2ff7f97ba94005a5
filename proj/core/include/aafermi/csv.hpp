#pragma once

// Text formats: 17-significant-digit numbers, flat key = value configs and
// the columnar echo-series file.

#include "aafermi/dephasing.hpp"
#include "aafermi/lattice.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace aafermi {

/// Shortest-safe round-trip form: %.17g semantics, locale independent.
std::string format_double(double v);
double parse_double(std::string_view text);
int parse_int(std::string_view text);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// Canonical one-line tag, e.g. "L=233 J=1 delta=2.5 ...". Parsable by
/// lattice_config_from_tag.
std::string lattice_config_tag(const LatticeConfig& config);
LatticeConfig lattice_config_from_tag(std::string_view tag);

/// Section name -> (key -> value). Keys outside any section live under "".
/// Lines are `key = value`; `#` and `;` start comments; `[name]` opens a section.
using IniDocument = std::map<std::string, std::map<std::string, std::string>>;
IniDocument parse_ini(std::istream& in);
IniDocument parse_ini_file(const std::string& path);

/// Header, metadata and rows `t,re_chi,im_chi,abs_chi,log10_abs_chi`.
void write_echo_series(std::ostream& out, const DecoherenceSeries& series);
void write_echo_series_file(const std::string& path, const DecoherenceSeries& series);

}  // namespace aafermi
