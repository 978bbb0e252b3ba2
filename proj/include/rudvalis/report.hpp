#pragma once

#include "json.hpp"

#include <string>
#include <vector>

namespace rudvalis {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::string module;
    std::vector<Check> checks;

    Check& add(std::string name, bool pass, std::string detail = {}) {
        checks.push_back({std::move(name), pass, std::move(detail)});
        return checks.back();
    }
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void merge(const Report& o) {
        for (const auto& c : o.checks) checks.push_back({o.module + "/" + c.name, c.pass, c.detail});
    }
    nlohmann::json to_json() const {
        nlohmann::json j;
        j["module"] = module;
        j["pass"] = pass();
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        return j;
    }
};

} // namespace rudvalis
