#pragma once

// JSON formats for rings, complexes, chain maps, triangles and reports.
// Serialization is canonical: fixed field order, ascending indices, elements
// printed in lowest terms and degree-lex order, so reports are byte-stable.

#include <string>

#include <json.hpp>

#include "homforge/complex.hpp"
#include "homforge/resolutions.hpp"
#include "homforge/tate.hpp"

namespace homforge {

using Json = nlohmann::ordered_json;

AlgebraPtr ring_from_json(const Json& j);
Json ring_to_json(const AlgebraPtr& A);

/// Accepts either an inline ring object under "ring" or uses `fallback`.
AlgebraPtr ring_of(const Json& j, const AlgebraPtr& fallback);

MatrixOverA matrix_from_json(const AlgebraPtr& A, const Json& j, int rows, int cols);
Json matrix_to_json(const MatrixOverA& m);

struct ParsedComplex {
    AlgebraPtr algebra;
    std::map<int, FreeModule> terms;
    std::map<int, MatrixOverA> diffs;
    bool e_power = false;
    Complex checked() const;  // validates d^2 = 0
};

ParsedComplex complex_from_json(const Json& j, const AlgebraPtr& fallback = nullptr);
Json complex_to_json(const Complex& C, bool inline_ring = true);

ChainMap chain_map_from_json(const Json& j, const AlgebraPtr& fallback = nullptr);
Json chain_map_to_json(const ChainMap& f, bool with_complexes = true);

Triangle triangle_from_json(const Json& j, const AlgebraPtr& fallback = nullptr);
Json triangle_to_json(const Triangle& t);

ModulePresentation module_from_json(const Json& j, const AlgebraPtr& fallback = nullptr);

Json filtration_to_json(const DGAlgebra& X, const Filtration& F);
Filtration filtration_from_json(const DGAlgebra& X, const Json& j);

/// FNV-1a 64-bit digest of a file's bytes, as fixed-width hex.
std::string file_digest(const std::string& path);

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace homforge
