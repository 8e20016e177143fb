// Resumable tabulation state. The checkpoint is a small versioned text
// file; the output CSV offset is stored so a resume can truncate rows that
// were written after the last durable checkpoint and reproduce the stream
// byte for byte.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace multab {

struct TabulationCheckpoint {
    std::uint32_t version = 1;
    std::uint64_t n_max = 0;
    std::uint32_t wheel = 0;
    std::uint64_t last_k = 0;
    std::uint64_t delta_sum = 0;  // sum of delta(j), j <= last_k
    std::uint64_t out_bytes = 0;  // durable size of the output CSV
    std::string output_path;
};

inline void write_checkpoint(const std::string& path, const TabulationCheckpoint& cp) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write checkpoint: " + tmp);
        out << "mtab-checkpoint v" << cp.version << "\n"
            << "n_max " << cp.n_max << "\n"
            << "wheel " << cp.wheel << "\n"
            << "last_k " << cp.last_k << "\n"
            << "delta_sum " << cp.delta_sum << "\n"
            << "out_bytes " << cp.out_bytes << "\n"
            << "output " << cp.output_path << "\n";
        out.flush();
        if (!out) throw std::runtime_error("checkpoint write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

inline TabulationCheckpoint read_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read checkpoint: " + path);
    TabulationCheckpoint cp;
    std::string header;
    std::getline(in, header);
    if (header.rfind("mtab-checkpoint v", 0) != 0)
        throw std::runtime_error("not a checkpoint file: " + path);
    cp.version = static_cast<std::uint32_t>(std::stoul(header.substr(17)));
    if (cp.version != 1) throw std::runtime_error("unsupported checkpoint version");
    std::string key;
    while (in >> key) {
        if (key == "n_max") in >> cp.n_max;
        else if (key == "wheel") in >> cp.wheel;
        else if (key == "last_k") in >> cp.last_k;
        else if (key == "delta_sum") in >> cp.delta_sum;
        else if (key == "out_bytes") in >> cp.out_bytes;
        else if (key == "output") {
            in >> std::ws;
            std::getline(in, cp.output_path);
        } else {
            std::string skip;
            std::getline(in, skip);
        }
    }
    if (cp.last_k > cp.n_max) throw std::runtime_error("corrupt checkpoint: last_k > n_max");
    return cp;
}

}  // namespace multab
