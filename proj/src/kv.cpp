#include "polegrad/kv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace polegrad {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

KvMap kv_parse(const std::string& text) {
  KvMap map;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("kv_parse: missing '=' on line " + std::to_string(lineno));
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw std::runtime_error("kv_parse: empty key on line " + std::to_string(lineno));
    }
    map[key] = value;
  }
  return map;
}

KvMap kv_load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("kv_load: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return kv_parse(buf.str());
}

std::string kv_serialize(const KvMap& map) {
  std::string out;
  for (const auto& [key, value] : map) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

void kv_save(const KvMap& map, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("kv_save: cannot open " + path);
  out << kv_serialize(map);
}

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  if (result.ec != std::errc()) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buf, result.ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end) {
    throw std::runtime_error("parse_double: bad number '" + text + "'");
  }
  return value;
}

long parse_long(const std::string& text) {
  long value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end) {
    throw std::runtime_error("parse_long: bad integer '" + text + "'");
  }
  return value;
}

}  // namespace polegrad
