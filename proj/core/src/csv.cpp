#include "aafermi/csv.hpp"

#include "aafermi/version.hpp"

#include <array>
#include <charconv>
#include <limits>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aafermi {

std::string format_double(double v) {
  std::array<char, 40> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view text) {
  const std::string s = trim(text);
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

int parse_int(std::string_view text) {
  const std::string s = trim(text);
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an integer: '" + s + "'");
  }
  return v;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string lattice_config_tag(const LatticeConfig& c) {
  std::ostringstream os;
  os << "L=" << c.length << " J=" << format_double(c.hopping)
     << " delta=" << format_double(c.potential_strength)
     << " beta=" << format_double(c.incommensuration) << " phi=" << format_double(c.phase)
     << " epsilon=" << format_double(c.impurity_coupling) << " x=" << c.impurity_site
     << " boundary=" << to_string(c.boundary);
  return os.str();
}

LatticeConfig lattice_config_from_tag(std::string_view tag) {
  LatticeConfig c;
  for (const auto& field : split(trim(tag), ' ')) {
    if (field.empty()) continue;
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("malformed config tag field '" + field + "'");
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "L") c.length = parse_int(value);
    else if (key == "J") c.hopping = parse_double(value);
    else if (key == "delta") c.potential_strength = parse_double(value);
    else if (key == "beta") c.incommensuration = parse_double(value);
    else if (key == "phi") c.phase = parse_double(value);
    else if (key == "epsilon") c.impurity_coupling = parse_double(value);
    else if (key == "x") c.impurity_site = parse_int(value);
    else if (key == "boundary") c.boundary = boundary_from_string(value);
    else throw std::invalid_argument("unknown config tag key '" + key + "'");
  }
  return c;
}

IniDocument parse_ini(std::istream& in) {
  IniDocument doc;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    const std::string body = trim(std::string_view(line).substr(0, comment));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": unterminated section header");
      }
      section = trim(std::string_view(body).substr(1, body.size() - 2));
      doc[section];
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    if (key.empty()) throw std::invalid_argument("line " + std::to_string(lineno) + ": empty key");
    auto& slot = doc[section];
    if (slot.contains(key)) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    slot[key] = trim(std::string_view(body).substr(eq + 1));
  }
  return doc;
}

IniDocument parse_ini_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  try {
    return parse_ini(in);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_echo_series(std::ostream& out, const DecoherenceSeries& s) {
  out << "# aafermi echo series\n";
  out << "# version = " << kVersion << '\n';
  out << "# config = " << lattice_config_tag(s.config) << '\n';
  out << "# grid: t_max = " << format_double(s.t_max) << " samples = " << s.size() << '\n';
  out << "t,re_chi,im_chi,abs_chi,log10_abs_chi\n";
  for (std::size_t k = 0; k < s.size(); ++k) {
    out << format_double(s.times[k]) << ',' << format_double(s.chi[k].real()) << ','
        << format_double(s.chi[k].imag()) << ',' << format_double(s.magnitude[k]) << ','
        << format_double(s.log10_magnitude[k]) << '\n';
  }
}

void write_echo_series_file(const std::string& path, const DecoherenceSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_echo_series(out, series);
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace aafermi
