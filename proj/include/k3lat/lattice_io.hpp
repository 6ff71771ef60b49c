#pragma once

#include <json.hpp>

#include <string>

#include "k3lat/lattice.hpp"

namespace k3lat {

/// Lattice description:
///   { "basis": ["E","F","R"], "gram": [[0,2,1],[2,0,1],[1,1,-2]], "parameter": null }
/// Gram entries are JSON integers or strings holding a rational ("3/2") or a
/// polynomial in the parameter ("38 - 18*n + 2*n^2"). Non-symmetric Gram
/// matrices are rejected.
LatticePtr lattice_from_json(const nlohmann::json& j);
nlohmann::ordered_json lattice_to_json(const PicardLattice& lattice);

LatticePtr read_lattice_file(const std::string& path);

/// Integer constants become JSON numbers (when they fit in 64 bits); every
/// other scalar is emitted as its canonical string.
nlohmann::ordered_json scalar_to_json(const Scalar& s, std::string_view parameter_name);

}  // namespace k3lat
