#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "gnmetric/gnmetric.hpp"

namespace gnmetric::cli {

using ojson = nlohmann::ordered_json;

ojson to_json(const Point& p);
ojson to_json(const Witness& w);
ojson to_json(const AxiomReport& r);
ojson to_json(const IterationTrace& t);
ojson to_json(const ConvergenceReport& r);
ojson to_json(const CauchyReport& r);
ojson to_json(const ContinuityProbeResult& r);

/// Serialize with floating-point numbers printed as %.17g so values
/// round-trip exactly; keys keep insertion order.
std::string dump_report(const ojson& doc, int indent = 2);

/// Wrap a deterministic payload in {"meta": ..., "payload": ...}. Only meta
/// carries the timestamp; byte-wise comparisons use the payload block.
ojson make_report(const std::string& command, ojson payload);

/// Render just the payload block of a report document (used for
/// determinism comparisons).
std::string dump_payload(const ojson& report_doc, int indent = 2);

/// Write-temp-then-rename so readers never observe a partial file.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace gnmetric::cli
