#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "upslab/bounds.hpp"
#include "upslab/recovery.hpp"
#include "upslab/set_analytics.hpp"
#include "upslab/signal.hpp"

namespace upslab::io {

using json = nlohmann::json;

/// Shortest round-trip decimal representation.
std::string format_double(double x);

json signal_to_json(const Signal& s);
Signal signal_from_json(const json& j);

json index_set_to_json(const IndexSet& s);
IndexSet index_set_from_json(const json& j);

json masked_to_json(const MaskedSpectrum& m);
MaskedSpectrum masked_from_json(const json& j);

/// Set profile plus the brute-force cross-check of the energy when it was
/// computed (|S| within the brute-force cap).
json profile_to_json(const GridParams& grid, const SetProfile& p,
                     std::optional<std::int64_t> energy_bruteforce);

json condition_to_json(const ConditionVerdict& v);
json report_to_json(const RecoveryReport& r);
json audit_to_json(const UpAudit& a);

/// ASCII (P2) grayscale image, values clamped to [0, 255].
std::string pgm_p2(std::int64_t width, std::int64_t height, const std::vector<int>& pixels);

std::string read_text_file(const std::filesystem::path& path);

/// Writes to <path>.tmp in the same directory and renames into place, so a
/// failed run never leaves a partial file at the destination.
void write_text_file_atomic(const std::filesystem::path& path, const std::string& content);

/// dump(2) plus a trailing newline; key order is alphabetical and doubles are
/// shortest round-trip, so output bytes are deterministic.
std::string dump_json(const json& j);

}  // namespace upslab::io
