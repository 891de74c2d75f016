#pragma once

#include <map>
#include <string>

namespace polegrad {

// Flat `key = value` text format used for env configs and run manifests.
using KvMap = std::map<std::string, std::string>;

KvMap kv_parse(const std::string& text);
KvMap kv_load(const std::string& path);
std::string kv_serialize(const KvMap& map);
void kv_save(const KvMap& map, const std::string& path);

// Shortest decimal representation that round-trips to the same double, so
// CSV and manifest re-ingestion is lossless.
std::string format_double(double value);

double parse_double(const std::string& text);
long parse_long(const std::string& text);

}  // namespace polegrad
