#pragma once

#include <optional>
#include <string>

#include "loopfact/laurent.hpp"
#include "loopfact/matrix_loop.hpp"
#include "loopfact/su2_factor.hpp"

namespace loopfact {

// Document format (JSON):
//   scalar loop  {"kind":"scalar_loop","coeffs":[[deg,re,im],...]}
//   matrix loop  {"kind":"matrix_loop","entries":[E00,E01,E10,E11]}
//                with each E a coeffs list as above (row-major entries)
//   factor input {"kind":"factor_input", any of
//                 "zeta":[[re,im],...], "eta":[[re,im],...],
//                 "chi":[[deg,re,im],...], "x":[[re,im],...]}
// Parsing failures raise ParseError with a location hint.

std::string scalar_loop_to_json(const LaurentPoly& p);
std::string matrix_loop_to_json(const MatrixLoop& m);

LaurentPoly scalar_loop_from_json(const std::string& text);
MatrixLoop matrix_loop_from_json(const std::string& text);

struct FactorInput {
    std::optional<ZetaCoords> zeta;
    std::optional<ZetaCoords> eta;
    std::optional<LaurentPoly> chi;
    std::optional<XCoords> x;
};
FactorInput factor_input_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace loopfact
