#include "quotlab/json_io.hpp"

#include <fstream>
#include <sstream>

namespace quotlab {

Json scalar_to_json(const Scalar& s) {
  if (s.field().isRational()) return s.str();
  return s.residue();
}

Scalar scalar_from_json(const Json& j, const Field& f) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>(), f);
  if (j.is_number_integer()) return Scalar::fromInt(j.get<long>(), f);
  throw InputError("scalar must be a string or an integer");
}

Json matrix_to_json(const ExactMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ExactMatrix matrix_from_json(const Json& j, const Field& f) {
  if (!j.is_array()) throw InputError("matrix must be an array of rows");
  int rows = static_cast<int>(j.size());
  int cols = rows == 0 ? 0 : static_cast<int>(j.at(0).size());
  ExactMatrix m = ExactMatrix::zeros(rows, cols, f);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw InputError("matrix row " + std::to_string(r + 1) + " has the wrong length");
    }
    for (int c = 0; c < cols; ++c) m.set(r, c, scalar_from_json(row.at(c), f));
  }
  return m;
}

Json field_to_json(const Field& f) {
  if (f.isRational()) return "rational";
  Json j;
  j["prime"] = f.prime;
  return j;
}

Field field_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "rational") return Field::rationals();
    throw InputError("unknown field tag \"" + j.get<std::string>() + "\"");
  }
  if (j.is_object() && j.contains("prime")) {
    long p = j["prime"].get<long>();
    if (p < 3) throw InputError("modulus must be an odd prime");
    return Field::mod(static_cast<std::uint64_t>(p));
  }
  throw InputError("field must be \"rational\" or {\"prime\": p}");
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

}  // namespace quotlab
