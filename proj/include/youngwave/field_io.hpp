#pragma once

#include <string>

#include <json.hpp>

#include "youngwave/grid.hpp"

namespace youngwave {

/// Sidecar of a field file: same path with the extension replaced by .json.
std::string sidecar_path(const std::string& csvPath);

/// Writes `s,t,value` rows (row-major, 17 significant digits) and the JSON
/// sidecar {domain, ns, nt, ...meta}.
void write_field_csv(const std::string& path, const GridField& f, const nlohmann::json& meta = nlohmann::json::object());

/// Reads a field written by write_field_csv; node coordinates in the file
/// must agree with the sidecar grid.
GridField read_field_csv(const std::string& path);

/// Reads the sidecar only.
nlohmann::json read_sidecar(const std::string& csvPath);

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace youngwave
