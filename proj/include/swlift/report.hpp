#pragma once

#include <map>
#include <string>
#include <vector>

namespace swlift {

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

inline CheckResult make_check(const std::string& name, double measured, double threshold) {
    return CheckResult{name, measured, threshold, measured <= threshold};
}

// Top-level run report, serialized to versioned JSON.
struct Report {
    std::string command;
    std::map<std::string, std::string> config;
    std::vector<CheckResult> checks;
    double wall_ms = 0.0;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

std::string report_to_json(const Report& r);
void write_text_file(const std::string& path, const std::string& content);

}
