#pragma once

#include <cstdint>
#include <fstream>
#include <string>

#include <json.hpp>

#include "qig/errors.hpp"

namespace qig {

/// Run configuration echoed verbatim into every output artifact.
struct RunConfig {
    std::uint64_t seed = 0;
    double tol = 1e-4;
    double q_lo = 0.5, q_hi = 500.0;
    std::string output_format = "csv";  // csv | json
    std::string kappa_convention = "hs_kappa=0.5";
    int threads = 0;  // 0 = hardware default

    nlohmann::json to_json() const {
        return {{"seed", seed},        {"tol", tol},
                {"q_lo", q_lo},        {"q_hi", q_hi},
                {"output_format", output_format},
                {"kappa_convention", kappa_convention},
                {"threads", threads}};
    }
};

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open output file: " + path);
    os << text;
}

}  // namespace qig
