#include "rzeta/report.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "rzeta/errors.hpp"

namespace rzeta {

void RunReport::add(const std::string& name, bool pass, const std::string& detail) {
    checks.push_back({name, pass, detail});
    if (!pass) exit_code = exit_code == 0 ? 1 : exit_code;
}

bool RunReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string RunReport::to_json_text() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["detail"] = c.detail;
        j["checks"].push_back(std::move(jc));
    }
    j["exit_code"] = exit_code;
    return j.dump(2) + "\n";
}

std::string RunReport::to_text() const {
    std::ostringstream out;
    out << "command: " << command << "\n";
    for (const auto& [path, digest] : inputs)
        out << "input: " << path << " (" << digest << ")\n";
    for (const auto& c : checks)
        out << (c.pass ? "[ ok ] " : "[FAIL] ") << c.name
            << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    out << "exit: " << exit_code << "\n";
    return out.str();
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read file: " + path);
    uint64_t h = 1469598103934665603ull;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!in) break;
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    return std::string(hex);
}

} // namespace rzeta
