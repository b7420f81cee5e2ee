#pragma once

// Minimal key=value config file support: one pair per line, '#' comments,
// blank lines ignored, whitespace trimmed.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddforge {

std::map<std::string, std::string> load_kv_file(const std::string& path);
void save_kv_file(const std::string& path, const std::string& header_comment,
                  const std::vector<std::pair<std::string, std::string>>& pairs);

double kv_double(const std::map<std::string, std::string>& kv, const std::string& key,
                 double fallback);
long long kv_int(const std::map<std::string, std::string>& kv, const std::string& key,
                 long long fallback);
std::string kv_string(const std::map<std::string, std::string>& kv, const std::string& key,
                      const std::string& fallback);

} // namespace ddforge
