#include "tdsharp/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace tdsharp {

namespace {

std::string rational_string(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

Json base_to_json(const Field& base, const Scalar& s) {
  if (base.is_finite()) return s.mod[0];
  return rational_string(s.rat[0]);
}

Scalar base_from_json(const Field& base, const Json& j) {
  if (base.is_finite()) {
    if (!j.is_number_integer()) throw ParseError("expected an integer coefficient, got " + j.dump());
    const std::int64_t v = j.get<std::int64_t>();
    if (v < 0 || v >= base.characteristic())
      throw FieldError("coefficient out of range for p=" + std::to_string(base.characteristic()));
    return base.from_int(static_cast<long>(v));
  }
  mpq_class q;
  if (j.is_number_integer()) {
    q = mpq_class(mpz_class(std::to_string(j.get<std::int64_t>())));
  } else if (j.is_string()) {
    const std::string text = j.get<std::string>();
    if (text.empty() || q.set_str(text, 10) != 0) throw ParseError("malformed rational '" + text + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
    q.canonicalize();
  } else {
    throw ParseError("expected a \"num/den\" string, got " + j.dump());
  }
  return base.from_rational(q);
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw InternalError("SHA-256 computation failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

Json sequence_to_json(const Field& f, const std::vector<Scalar>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(scalar_to_json(f, s));
  return out;
}

Json matrices_to_json(const std::vector<ExactMatrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(matrix_to_json(m));
  return out;
}

Json certification_to_json(const FieldCertification& c) {
  Json out;
  out["verdict"] = c.verdict == Verdict::yes ? "field" : c.verdict == Verdict::no ? "not-a-field" : "inconclusive";
  if (c.certificate) {
    out["minpoly"] = polynomial_to_json(c.certificate->minpoly);
    out["primitive"] = matrix_to_json(c.certificate->primitive);
  }
  return out;
}

bool is_flat(const Json& j) {
  if (!j.is_array()) return !j.is_object();
  for (const auto& e : j)
    if (e.is_object() || (e.is_array() && !std::all_of(e.begin(), e.end(), [](const Json& x) { return x.is_primitive(); })))
      return false;
  return true;
}

void pretty(const Json& j, std::size_t indent, std::string& out) {
  const std::string pad(indent + 2, ' ');
  if (is_flat(j) || j.empty()) {
    out += j.dump();
    return;
  }
  const bool object = j.is_object();
  out += object ? "{\n" : "[\n";
  std::size_t i = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++i) {
    out += pad;
    if (object) out += Json(it.key()).dump() + ": ";
    pretty(*it, indent + 2, out);
    out += i + 1 < j.size() ? ",\n" : "\n";
  }
  out += std::string(indent, ' ') + (object ? "}" : "]");
}

}  // namespace

std::string pretty_json(const Json& j) {
  std::string out;
  pretty(j, 0, out);
  return out + "\n";
}

Json field_to_json(const Field& field) {
  Json out;
  out["kind"] = to_string(field.kind());
  out["p"] = field.characteristic();
  out["k"] = field.degree();
  Json modulus = Json::array();
  if (field.kind() == FieldKind::extension) {
    const Field base = field.prime_subfield();
    for (const auto& c : field.modulus()) modulus.push_back(base_to_json(base, c));
  }
  out["modulus"] = modulus;
  return out;
}

Field field_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("field must be an object");
  for (const char* key : {"kind", "p", "k"})
    if (!j.contains(key)) throw ParseError(std::string("field is missing '") + key + "'");
  if (!j["kind"].is_string()) throw ParseError("field kind must be a string");
  if (!j["p"].is_number_integer() || !j["k"].is_number_unsigned()) throw ParseError("field p and k must be integers");
  const FieldKind kind = field_kind_from_string(j["kind"].get<std::string>());
  const std::int64_t p = j["p"].get<std::int64_t>();
  const std::size_t k = j["k"].get<std::size_t>();
  std::optional<std::vector<mpq_class>> modulus;
  if (kind == FieldKind::extension && j.contains("modulus") && !j["modulus"].empty()) {
    if (!j["modulus"].is_array()) throw ParseError("modulus must be an array");
    const Field base = p == 0 ? Field::rational() : Field::prime(p);
    modulus.emplace();
    for (const auto& c : j["modulus"]) {
      const Scalar s = base_from_json(base, c);
      modulus->push_back(base.is_finite() ? mpq_class(static_cast<long>(s.mod[0])) : s.rat[0]);
    }
  }
  return field_create(kind, p, k, modulus);
}

Json scalar_to_json(const Field& field, const Scalar& s) {
  const Field base = field.prime_subfield();
  if (field.degree() == 1) return base_to_json(field, s);
  Json out = Json::array();
  for (const auto& c : field.coordinates(s)) out.push_back(base_to_json(base, c));
  return out;
}

Scalar scalar_from_json(const Field& field, const Json& j) {
  const Field base = field.prime_subfield();
  if (field.degree() == 1 && !j.is_array()) return base_from_json(field, j);
  if (!j.is_array() || j.size() != field.degree())
    throw ParseError("element of " + field.describe() + " must be an array of " + std::to_string(field.degree()) +
                     " coefficients, got " + j.dump());
  std::vector<Scalar> coords;
  for (const auto& c : j) coords.push_back(base_from_json(base, c));
  return field.from_coordinates(coords);
}

Json matrix_to_json(const ExactMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(sequence_to_json(m.field(), m.row(i)));
  return out;
}

ExactMatrix matrix_from_json(const Field& field, const Json& j, const std::string& name) {
  if (!j.is_array() || j.empty()) throw ParseError(name + " must be a nonempty array of rows");
  const std::size_t rows = j.size();
  for (const auto& r : j)
    if (!r.is_array()) throw ParseError(name + " rows must be arrays");
  const std::size_t cols = j[0].size();
  for (std::size_t i = 0; i < rows; ++i)
    if (j[i].size() != cols) throw ParseError(name + " row " + std::to_string(i) + " has the wrong length");
  if (rows != cols) throw DimensionError(name + " not square");
  ExactMatrix out(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string where = name + "[" + std::to_string(i) + "][" + std::to_string(c) + "]: ";
      try {
        out(i, c) = scalar_from_json(field, j[i][c]);
      } catch (const FieldError& e) {
        throw FieldError(where + e.what());
      } catch (const ParseError& e) {
        throw ParseError(where + e.what());
      }
    }
  return out;
}

Json polynomial_to_json(const Polynomial& p) { return sequence_to_json(p.field(), p.coefficients()); }

Instance parse_instance(const Json& doc) {
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  if (!doc.contains("version") || doc["version"] != 1) throw ParseError("unsupported or missing instance version");
  for (const char* key : {"field", "A", "Astar"})
    if (!doc.contains(key)) throw ParseError(std::string("instance is missing '") + key + "'");
  Field f = field_from_json(doc["field"]);
  ExactMatrix a = matrix_from_json(f, doc["A"], "A");
  ExactMatrix as = matrix_from_json(f, doc["Astar"], "A*");
  if (a.rows() != as.rows()) throw DimensionError("A and A* differ in size");
  Instance out{f, std::move(a), std::move(as), Json::object()};
  if (doc.contains("provenance")) out.provenance = doc["provenance"];
  return out;
}

Instance parse_instance_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what());
  }
  return parse_instance(doc);
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance_text(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Json instance_to_json(const Instance& instance) {
  Json out;
  out["version"] = 1;
  out["field"] = field_to_json(instance.field);
  out["A"] = matrix_to_json(instance.A);
  out["Astar"] = matrix_to_json(instance.Astar);
  if (!instance.provenance.empty()) out["provenance"] = instance.provenance;
  return out;
}

std::string emit_instance(const Instance& instance) { return pretty_json(instance_to_json(instance)); }

std::string instance_digest(const Instance& instance) {
  Instance bare = instance;
  bare.provenance = Json::object();
  return sha256_hex(instance_to_json(bare).dump());
}

Json record_to_json(const TDSystemRecord& record) {
  const Field& f = record.field;
  Json out;
  out["field"] = field_to_json(f);
  out["n"] = record.n();
  out["d"] = record.d;
  out["theta"] = sequence_to_json(f, record.theta);
  out["theta_star"] = sequence_to_json(f, record.theta_star);
  out["shape"] = record.shape;
  out["sharp"] = record.sharp;
  out["E"] = matrices_to_json(record.E);
  out["E_star"] = matrices_to_json(record.E_star);
  out["A"] = matrix_to_json(record.A);
  out["Astar"] = matrix_to_json(record.Astar);
  return out;
}

Json failure_to_json(const VerificationFailure& failure) {
  Json out;
  out["tag"] = to_string(failure.tag);
  out["detail"] = failure.detail;
  if (failure.minpoly_factor) out["minpoly_factor"] = polynomial_to_json(*failure.minpoly_factor);
  if (!failure.graph_edges.empty()) {
    Json edges = Json::array();
    for (const auto& [a, b] : failure.graph_edges) edges.push_back({a, b});
    out["graph_edges"] = edges;
  }
  if (failure.subspace) {
    out["subspace"] = matrix_to_json(failure.subspace->transpose());
    out["subspace_dim"] = failure.subspace->cols();
  }
  return out;
}

Json certificate_to_json(const SharpeningCertificate& c) {
  Json out;
  out["input"] = record_to_json(c.input);
  out["T_dim"] = c.T_dim;
  out["rho"] = c.rho;
  out["Z_minpoly"] = c.Z_certificate ? polynomial_to_json(c.Z_certificate->minpoly) : Json(nullptr);
  Json corners = Json::object();
  for (const auto& r : c.corners) {
    Json j;
    j["dim"] = r.dim;
    j["commutative"] = r.commutative;
    j["generated"] = r.generated;
    j["field"] = certification_to_json(r.certification);
    j["iso"] = {{"lands_in_corner", r.lands_in_corner}, {"multiplicative", r.multiplicative}, {"unital", r.unital},
                {"injective", r.injective},             {"surjective", r.surjective}};
    if (r.iso_matrix) j["iso_matrix"] = matrix_to_json(*r.iso_matrix);
    corners[r.name] = j;
  }
  out["corners"] = corners;
  out["dual_basis_n"] = c.dual ? Json(c.dual->n) : Json(nullptr);
  if (c.dual && c.dual->gram) out["gram"] = matrix_to_json(*c.dual->gram);
  out["surjectivity_samples"] = c.surjectivity_checked;
  if (c.module) {
    out["module"] = {{"v", sequence_to_json(c.input.field, c.module->v)},
                     {"dim_TE0", c.module->dim_TE0},
                     {"rank", c.module->rank_of_map}};
  }
  out["faithful"] = true;
  Json passes = Json::object();
  for (const auto& name : lemma_names())
    if (auto it = c.lemma_passes.find(name); it != c.lemma_passes.end()) passes[name] = it->second;
  out["lemma_passes"] = passes;
  if (!c.failed.empty()) out["failed"] = c.failed;
  if (c.sharpened && c.sharpened->record) {
    out["sharpened"] = record_to_json(*c.sharpened->record);
    out["round_trip"] = c.sharpened->round_trip;
  } else {
    out["sharpened"] = nullptr;
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write " + tmp.string());
    out << content;
    if (!out) throw ParseError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace tdsharp
