#ifndef GEVREY_BBM_CLI_INTERNAL_H_
#define GEVREY_BBM_CLI_INTERNAL_H_

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gevrey_bbm/cli.h"
#include "gevrey_bbm/initial_data.h"
#include "gevrey_bbm/multipliers.h"

namespace gevrey_bbm::cli {

using Json = nlohmann::json;

Grid grid_from(const KeyValueFile& v);
InitialData data_from(const KeyValueFile& v);
ModelParams params_from(const KeyValueFile& v);
std::vector<double> list_from(const KeyValueFile& v, const std::string& key);
// True when the key holds a non-empty value.
bool is_set(const KeyValueFile& v, const std::string& key);

std::filesystem::path output_dir(const KeyValueFile& v);
void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const Json& doc);

// {"command", "config", "seed"} header shared by every report.
Json report_header(const RunConfig& cfg);

// RFC 4180 field quoting and round-trip number formatting.
std::string csv_field(const std::string& s);
std::string csv_number(double v);

int cmd_simulate(const RunConfig& cfg, std::ostream& out);
int cmd_verify_identities(const RunConfig& cfg, std::ostream& out);
int cmd_conservation(const RunConfig& cfg, std::ostream& out);
int cmd_radius(const RunConfig& cfg, std::ostream& out);
int cmd_schedule(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);

}  // namespace gevrey_bbm::cli

#endif  // GEVREY_BBM_CLI_INTERNAL_H_
