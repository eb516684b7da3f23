#include "qrate/json_io.hpp"

#include <fstream>

#include "qrate/errors.hpp"

namespace qrate {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows)
    throw ParseError("matrix row count mismatch");
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != cols)
      throw ParseError("matrix column count mismatch");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError("matrix entry must be a [re, im] pair");
      m(i, c) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

json state_to_json(const DensityMatrix& rho) {
  return json{{"dim", rho.dim()}, {"mat", matrix_to_json(rho.mat())}};
}

DensityMatrix state_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("mat"))
    throw ParseError("state needs fields dim, mat");
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0)
    throw ParseError("dim must be a positive integer");
  const std::size_t d = j["dim"].get<std::size_t>();
  return DensityMatrix(matrix_from_json(j["mat"], d, d));
}

json channel_to_json(const QuantumChannel& n) {
  json kraus = json::array();
  for (const auto& k : n.kraus()) kraus.push_back(matrix_to_json(k));
  return json{
      {"dim_in", n.dim_in()}, {"dim_out", n.dim_out()}, {"kraus", kraus}};
}

QuantumChannel channel_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim_in") || !j.contains("dim_out") ||
      !j.contains("kraus"))
    throw ParseError("channel needs fields dim_in, dim_out, kraus");
  if (!j["dim_in"].is_number_integer() || !j["dim_out"].is_number_integer() ||
      j["dim_in"].get<long long>() <= 0 || j["dim_out"].get<long long>() <= 0)
    throw ParseError("channel dims must be positive integers");
  const std::size_t di = j["dim_in"].get<std::size_t>();
  const std::size_t dout = j["dim_out"].get<std::size_t>();
  if (di == 0 || dout == 0) throw ParseError("channel dims must be positive");
  const auto& kj = j["kraus"];
  if (!kj.is_array() || kj.empty()) throw ParseError("kraus must be a non-empty list");
  std::vector<ComplexMatrix> kraus;
  for (const auto& km : kj) kraus.push_back(matrix_from_json(km, dout, di));
  return QuantumChannel(di, dout, std::move(kraus));
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

DensityMatrix load_state(const std::string& path) {
  return state_from_json(load_json_file(path));
}

QuantumChannel load_channel(const std::string& path) {
  return channel_from_json(load_json_file(path));
}

}  // namespace qrate
