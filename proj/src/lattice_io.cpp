#include "k3lat/lattice_io.hpp"

#include <fstream>

#include "k3lat/error.hpp"

namespace k3lat {

using nlohmann::json;
using nlohmann::ordered_json;

LatticePtr lattice_from_json(const json& j) {
  require(j.is_object(), "lattice description must be a JSON object");
  require(j.contains("basis") && j.at("basis").is_array(), "lattice description needs a 'basis' array");
  require(j.contains("gram") && j.at("gram").is_array(), "lattice description needs a 'gram' array");

  std::optional<std::string> parameter;
  if (j.contains("parameter") && !j.at("parameter").is_null()) {
    require(j.at("parameter").is_string(), "'parameter' must be a string or null");
    parameter = j.at("parameter").get<std::string>();
    require(!parameter->empty(), "'parameter' must not be empty");
  }

  std::vector<std::string> names;
  for (const auto& n : j.at("basis")) {
    require(n.is_string(), "basis names must be strings");
    names.push_back(n.get<std::string>());
  }
  const auto& rows = j.at("gram");
  require(rows.size() == names.size(), "Gram matrix must have one row per basis element");
  Matrix<Scalar> gram(names.size(), names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    require(rows[i].is_array() && rows[i].size() == names.size(), "Gram matrix must be square");
    for (std::size_t k = 0; k < names.size(); ++k) {
      const auto& e = rows[i][k];
      if (e.is_number_integer()) {
        gram(i, k) = Scalar(Integer(e.dump()));
      } else if (e.is_string()) {
        const std::string text = e.get<std::string>();
        gram(i, k) = parse_scalar(text, parameter.value_or(""));
      } else {
        throw Error("Gram entries must be integers or strings");
      }
    }
  }
  return make_lattice(std::move(names), std::move(gram), std::move(parameter));
}

ordered_json scalar_to_json(const Scalar& s, std::string_view parameter_name) {
  if (s.is_integer()) {
    const Integer z = s.constant().get_num();
    if (z.fits_slong_p()) return ordered_json(z.get_si());
  }
  return ordered_json(s.to_string(parameter_name));
}

ordered_json lattice_to_json(const PicardLattice& lattice) {
  ordered_json out;
  out["basis"] = lattice.basis_names();
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < lattice.rank(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t k = 0; k < lattice.rank(); ++k) {
      row.push_back(scalar_to_json(lattice.gram()(i, k), lattice.parameter_name()));
    }
    rows.push_back(row);
  }
  out["gram"] = rows;
  out["parameter"] = lattice.parameter() ? ordered_json(*lattice.parameter()) : ordered_json(nullptr);
  return out;
}

LatticePtr read_lattice_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lattice file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error("invalid JSON in '" + path + "': " + e.what());
  }
  return lattice_from_json(j);
}

}  // namespace k3lat
