#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "tdsharp/sharpen.hpp"

namespace tdsharp {

using Json = nlohmann::ordered_json;

/// Indented JSON with arrays of scalars (and arrays of such arrays) kept on one line.
std::string pretty_json(const Json& j);

Json field_to_json(const Field& field);
Field field_from_json(const Json& j);

/// Prime fields: a bare integer; Q: a "num/den" string; extensions: an
/// array of k such encodings, little-endian in the generator.
Json scalar_to_json(const Field& field, const Scalar& s);
Scalar scalar_from_json(const Field& field, const Json& j);

Json matrix_to_json(const ExactMatrix& m);
ExactMatrix matrix_from_json(const Field& field, const Json& j, const std::string& name);
Json polynomial_to_json(const Polynomial& p);

struct Instance {
  Field field;
  ExactMatrix A, Astar;
  Json provenance = Json::object();
};

Instance parse_instance(const Json& doc);
Instance parse_instance_text(const std::string& text);
Instance load_instance(const std::filesystem::path& path);
Json instance_to_json(const Instance& instance);
/// Canonical text form (two-space indentation, trailing newline).
std::string emit_instance(const Instance& instance);
/// Hex SHA-256 of the canonical instance without its provenance block.
std::string instance_digest(const Instance& instance);

Json record_to_json(const TDSystemRecord& record);
Json failure_to_json(const VerificationFailure& failure);
Json certificate_to_json(const SharpeningCertificate& certificate);

/// Writes via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace tdsharp
