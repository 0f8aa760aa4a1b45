#include "bandlim/series_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bandlim {

namespace {

using nlohmann::json;

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

std::vector<Complex> parse_coeffs(const json& array, const char* field) {
  if (!array.is_array() || array.empty()) {
    throw ValidationError(std::string("'") + field + "' must be a non-empty array");
  }
  std::vector<Complex> out;
  out.reserve(array.size());
  for (const json& entry : array) {
    if (entry.is_number()) {
      out.emplace_back(entry.get<double>(), 0.0);
    } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() && entry[1].is_number()) {
      out.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    } else {
      throw ValidationError(std::string("entries of '") + field + "' must be [re, im] pairs");
    }
  }
  return out;
}

json coeffs_to_json(std::span<const Complex> coeffs) {
  json array = json::array();
  for (const Complex& c : coeffs) array.push_back(json::array({c.real(), c.imag()}));
  return array;
}

}  // namespace

AnySeries parse_series(std::string_view json_text) {
  const json doc = parse_document(json_text);
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string() || !doc.contains("coeffs")) {
    throw ValidationError("series document needs string 'kind' and array 'coeffs'");
  }
  const std::string kind = doc["kind"].get<std::string>();
  std::vector<Complex> coeffs = parse_coeffs(doc["coeffs"], "coeffs");
  if (kind == "legendre") return LegendreSeries(std::move(coeffs));
  if (kind == "bessel") return BesselSeries(std::move(coeffs));
  throw ValidationError("series kind must be \"legendre\" or \"bessel\", got \"" + kind + "\"");
}

std::string to_json(const LegendreSeries& series) {
  return json{{"kind", "legendre"}, {"coeffs", coeffs_to_json(series.coeffs())}}.dump();
}

std::string to_json(const BesselSeries& series) {
  return json{{"kind", "bessel"}, {"coeffs", coeffs_to_json(series.coeffs())}}.dump();
}

DifferentialOperator parse_operator(std::string_view json_text) {
  const json doc = parse_document(json_text);
  if (!doc.is_object() || !doc.contains("op")) throw ValidationError("operator document needs array 'op'");
  return DifferentialOperator(parse_coeffs(doc["op"], "op"));
}

std::string to_json(const DifferentialOperator& op) {
  return json{{"op", coeffs_to_json(op.coeffs())}}.dump();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return buffer.str();
}

}  // namespace bandlim
