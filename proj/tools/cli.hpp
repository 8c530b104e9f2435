#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace spun::cli {

enum class Format { Table, Csv, Json };

struct RunConfig {
    std::string command;
    std::filesystem::path input;
    Format format = Format::Table;
    std::optional<std::filesystem::path> nz;  // defaults to <stem>_nz.json beside the input
    std::string group = "kf";                 // orbits: kf | full | trivial
    std::vector<int> surfaces;                // certify
    bool strict = false;                      // certify: reject incompatible surfaces
    std::string path;                         // probe
    int samples = 4096;                       // probe
    std::filesystem::path vertices;           // verify
    unsigned threads = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitComputation = 3;
inline constexpr int kExitIo = 4;

const std::vector<std::string>& commands();

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv, reads SPUN_THREADS, then calls run().
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace spun::cli
