#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hhnet.h"

namespace hhcli {

// A failing library call; the status decides the exit code.
class ApiError : public std::runtime_error {
public:
    ApiError(hhnet_status status, const std::string &message) : std::runtime_error(message), status_(status) {}
    hhnet_status status() const { return status_; }

private:
    hhnet_status status_;
};

struct RunOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_path;
};

const std::vector<std::string> &command_names();

// Runs one command end to end. Throws ConfigError or ApiError.
void run_command(const std::string &command, const RunOptions &options);

// Shortest round-trip decimal form, as written to CSV cells.
std::string format_number(double value);

} // namespace hhcli
