#pragma once

#include "report.hpp"
#include "resources.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <map>
#include <string>

namespace rudvalis {

// SHA-256 over (name, NUL, content, NUL) of every resource file in a fixed order
inline std::string data_version() {
    std::string blob;
    for (const auto& f : resource_files()) {
        blob += f;
        blob.push_back('\0');
        blob += read_resource(f);
        blob.push_back('\0');
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(blob.data(), blob.size(), md, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed");
    std::string hex;
    char buf[3];
    for (unsigned int k = 0; k < len; ++k) {
        std::snprintf(buf, sizeof buf, "%02x", md[k]);
        hex += buf;
    }
    return "sha256:" + hex;
}

struct RunReport {
    std::string command;
    std::string data_version;
    std::vector<Check> checks;
    std::map<std::string, double> timing_ms; // per check group
    nlohmann::json result;                   // command payload, null when absent

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void add(const Report& r, double ms) {
        for (const auto& c : r.checks) checks.push_back({r.module + "/" + c.name, c.pass, c.detail});
        timing_ms[r.module] += ms;
    }
    int exit_code() const { return pass() ? 0 : 1; }

    nlohmann::json to_json(bool with_timing = true) const {
        nlohmann::json j;
        j["command"] = command;
        j["data_version"] = data_version;
        j["pass"] = pass();
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks)
            j["checks"].push_back({{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"detail", c.detail}});
        if (with_timing) j["timing_ms"] = timing_ms;
        if (!result.is_null()) j["result"] = result;
        return j;
    }
};

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

inline std::string checks_to_csv(const RunReport& r) {
    std::string out = "name,status,detail\n";
    for (const auto& c : r.checks)
        out += csv_field(c.name) + "," + (c.pass ? "pass" : "fail") + "," + csv_field(c.detail) + "\n";
    return out;
}

} // namespace rudvalis
