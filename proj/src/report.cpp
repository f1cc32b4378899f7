#include "swlift/report.hpp"

#include <fstream>
#include <json.hpp>
#include <stdexcept>

#include "swlift/version.hpp"

namespace swlift {

std::string report_to_json(const Report& r) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["library_version"] = version_string;
    j["command"] = r.command;
    j["config"] = r.config;
    j["wall_ms"] = r.wall_ms;
    j["pass"] = r.pass();
    auto& arr = j["checks"] = nlohmann::json::array();
    for (const auto& c : r.checks)
        arr.push_back({{"name", c.name},
                       {"measured", c.measured},
                       {"threshold", c.threshold},
                       {"pass", c.pass}});
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

}
