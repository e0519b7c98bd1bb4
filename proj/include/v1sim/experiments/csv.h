#pragma once

#include <span>
#include <string>

#include "v1sim/experiments/experiments.h"

namespace v1sim::experiments {

inline constexpr int kSchemaVersion = 1;

// Every row leads with schema_version, config_hash and seed.
std::string fig3_csv(const ScenarioConfig& cfg, std::span<const Fig3Row> rows);
std::string fig4_series_csv(const ScenarioConfig& cfg, std::span<const Fig4Result> runs);
std::string fig4_summary_csv(const ScenarioConfig& cfg, std::span<const Fig4Result> runs);
std::string tab1_csv(const ScenarioConfig& cfg, std::span<const Tab1Row> rows);
std::string grants_csv(const ScenarioConfig& cfg, std::span<const pon::GrantLogEntry> log);

// Aligned plain-text tables for the terminal.
std::string fig3_summary_text(std::span<const Fig3Row> rows);
std::string fig4_summary_text(std::span<const Fig4Result> runs);
std::string tab1_summary_text(std::span<const Tab1Row> rows);

}  // namespace v1sim::experiments
