#pragma once

#include "json.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef RUDVALIS_DATA_DIR
#define RUDVALIS_DATA_DIR "data"
#endif

namespace rudvalis {

struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kDelta = 28; // |Delta|; index 27 is infinity
inline constexpr int kInf = 27;

inline std::string& data_dir_ref() {
    static std::string dir = [] {
        if (const char* env = std::getenv("RUDVALIS_DATA")) return std::string(env);
        return std::string(RUDVALIS_DATA_DIR);
    }();
    return dir;
}
inline const std::string& data_dir() { return data_dir_ref(); }
inline void set_data_dir(std::string dir) { data_dir_ref() = std::move(dir); }

inline std::string read_resource(const std::string& name) {
    std::filesystem::path p = std::filesystem::path(data_dir()) / name;
    std::ifstream in(p, std::ios::binary);
    if (!in) throw data_error("cannot open resource " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline nlohmann::json load_json(const std::string& name) {
    try {
        return nlohmann::json::parse(read_resource(name));
    } catch (const nlohmann::json::exception& e) {
        throw data_error(name + ": " + e.what());
    }
}

// label 1..27 or "inf" -> index 0..27
inline int label_index(const nlohmann::json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kInf;
        return label_index(nlohmann::json(std::stoi(j.get<std::string>())));
    }
    if (!j.is_number_integer()) throw data_error("bad label " + j.dump());
    int v = j.get<int>();
    if (v < 1 || v > 27) throw data_error("label out of range " + j.dump());
    return v - 1;
}

inline std::string label_name(int idx) { return idx == kInf ? "inf" : std::to_string(idx + 1); }

inline const std::vector<std::string>& resource_files() {
    static const std::vector<std::string> files = {
        "cw_vectors.json", "dozens.json",     "frame_shapes.json",  "grid.json",
        "m_matrix.json",   "perm_generators.json", "rho_coeffs.json", "z_fixed_vectors.json", "character_table.json"};
    return files;
}

} // namespace rudvalis
