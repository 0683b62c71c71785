#include "loopfact/loop_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "loopfact/errors.hpp"

namespace loopfact {

using nlohmann::ordered_json;

namespace {

ordered_json coeffs_json(const LaurentPoly& p) {
    ordered_json arr = ordered_json::array();
    for (const auto& [d, v] : p.coeffs()) arr.push_back({d, v.real(), v.imag()});
    return arr;
}

LaurentPoly coeffs_parse(const ordered_json& arr, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + ": expected coefficient array");
    LaurentPoly p;
    for (size_t i = 0; i < arr.size(); ++i) {
        const auto& t = arr[i];
        if (!t.is_array() || t.size() != 3)
            throw ParseError(where + "[" + std::to_string(i) + "]: expected [deg, re, im]");
        p.add_to(t[0].get<int>(), cplx(t[1].get<double>(), t[2].get<double>()));
    }
    return p;
}

std::vector<cplx> pairs_parse(const ordered_json& arr, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + ": expected array of [re, im]");
    std::vector<cplx> out;
    for (size_t i = 0; i < arr.size(); ++i) {
        const auto& t = arr[i];
        if (!t.is_array() || t.size() != 2)
            throw ParseError(where + "[" + std::to_string(i) + "]: expected [re, im]");
        out.emplace_back(t[0].get<double>(), t[1].get<double>());
    }
    return out;
}

ordered_json parse_root(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("document: ") + e.what());
    }
}

}  // namespace

std::string scalar_loop_to_json(const LaurentPoly& p) {
    ordered_json j;
    j["kind"] = "scalar_loop";
    j["coeffs"] = coeffs_json(p);
    return j.dump();
}

std::string matrix_loop_to_json(const MatrixLoop& m) {
    ordered_json j;
    j["kind"] = "matrix_loop";
    ordered_json entries = ordered_json::array();
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) entries.push_back(coeffs_json(m.at(i, k)));
    j["entries"] = entries;
    return j.dump();
}

LaurentPoly scalar_loop_from_json(const std::string& text) {
    ordered_json j = parse_root(text);
    if (j.value("kind", "") != "scalar_loop")
        throw ParseError("document: kind must be \"scalar_loop\"");
    if (!j.contains("coeffs")) throw ParseError("document: missing \"coeffs\"");
    return coeffs_parse(j["coeffs"], "coeffs");
}

MatrixLoop matrix_loop_from_json(const std::string& text) {
    ordered_json j = parse_root(text);
    if (j.value("kind", "") != "matrix_loop")
        throw ParseError("document: kind must be \"matrix_loop\"");
    if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].size() != 4)
        throw ParseError("document: \"entries\" must hold 4 coefficient lists");
    MatrixLoop m;
    for (int i = 0; i < 4; ++i)
        m.at(i / 2, i % 2) =
            coeffs_parse(j["entries"][static_cast<size_t>(i)], "entries[" + std::to_string(i) + "]");
    return m;
}

FactorInput factor_input_from_json(const std::string& text) {
    ordered_json j = parse_root(text);
    if (j.value("kind", "") != "factor_input")
        throw ParseError("document: kind must be \"factor_input\"");
    FactorInput in;
    if (j.contains("zeta")) in.zeta = ZetaCoords{pairs_parse(j["zeta"], "zeta")};
    if (j.contains("eta")) in.eta = ZetaCoords{pairs_parse(j["eta"], "eta")};
    if (j.contains("chi")) in.chi = coeffs_parse(j["chi"], "chi");
    if (j.contains("x")) in.x = XCoords{pairs_parse(j["x"], "x")};
    return in;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << content;
}

}  // namespace loopfact
