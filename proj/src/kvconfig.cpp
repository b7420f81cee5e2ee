#include "kvconfig.hpp"

#include <fstream>
#include <vector>

namespace ddforge {

namespace {
std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}
} // namespace

std::map<std::string, std::string> load_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("malformed config line in " + path + ": " + line);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw std::runtime_error("empty key in " + path);
        kv[key] = val;
    }
    return kv;
}

void save_kv_file(const std::string& path, const std::string& header_comment,
                  const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write config file: " + path);
    if (!header_comment.empty()) out << "# " << header_comment << "\n";
    for (const auto& [k, v] : pairs) out << k << " = " << v << "\n";
}

double kv_double(const std::map<std::string, std::string>& kv, const std::string& key,
                 double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw std::runtime_error("bad numeric value for key " + key + ": " + it->second);
    }
}

long long kv_int(const std::map<std::string, std::string>& kv, const std::string& key,
                 long long fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        return std::stoll(it->second);
    } catch (const std::exception&) {
        throw std::runtime_error("bad integer value for key " + key + ": " + it->second);
    }
}

std::string kv_string(const std::map<std::string, std::string>& kv, const std::string& key,
                      const std::string& fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

} // namespace ddforge
