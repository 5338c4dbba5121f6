// commands.hpp: Subcommands of the srotto tool

#pragma once

#include <optional>
#include <vector>

#include "manifest.hpp"
#include "srotto/config.hpp"

namespace srotto::cli {

struct CommandOptions {
    std::vector<int> atoms;               // ignition only; empty means protocol.N
    std::optional<double> work_output;    // cost only
};

void cmd_ignition(const RunConfig& config, const CommandOptions& opts, RunManifest& manifest);
void cmd_scaling(const RunConfig& config, RunManifest& manifest);
void cmd_otto(const RunConfig& config, RunManifest& manifest);
void cmd_decoherence(const RunConfig& config, RunManifest& manifest);
void cmd_dicke(const RunConfig& config, RunManifest& manifest);
void cmd_cost(const RunConfig& config, const CommandOptions& opts, RunManifest& manifest);

} // namespace srotto::cli
