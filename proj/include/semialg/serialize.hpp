#pragma once

// JSON serialization: field descriptors, algebras (the {field, dim, unit, sc}
// schema with canonical element strings), etale algebra descriptions, and
// construction recipes. nlohmann::json objects keep sorted keys, so dumps are
// canonical and usable as golden files.

#include <string>
#include <vector>

#include <json.hpp>

#include "semialg/construct.hpp"

namespace semialg {

using json = nlohmann::json;

inline json field_to_json(const Field& f) {
    json j;
    switch (f->kind()) {
        case FieldKind::prime:
            j["kind"] = "prime";
            j["p"] = f->p();
            break;
        case FieldKind::extension: {
            j["kind"] = "extension";
            j["p"] = f->p();
            j["k"] = f->k();
            j["modulus"] = f->modulus().coeffs();
            break;
        }
        case FieldKind::rational_function:
            j["kind"] = "rational-function";
            j["p"] = f->p();
            j["var"] = f->var();
            break;
    }
    return j;
}

inline Field field_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    std::uint32_t p = j.at("p").get<std::uint32_t>();
    if (kind == "prime") return FieldDescriptor::prime(p);
    if (kind == "extension") {
        std::uint32_t k = j.at("k").get<std::uint32_t>();
        if (j.contains("modulus")) {
            FpPoly m(p, j.at("modulus").get<std::vector<std::uint32_t>>());
            return FieldDescriptor::extension(p, k, &m);
        }
        return FieldDescriptor::extension(p, k);
    }
    if (kind == "rational-function")
        return FieldDescriptor::rational_function(p, j.value("var", "v"));
    throw std::invalid_argument("unknown field kind: " + kind);
}

inline json algebra_to_json(const AlgebraSC& a) {
    json j;
    j["field"] = field_to_json(a.field());
    j["dim"] = a.dim();
    std::vector<std::string> unit;
    for (const auto& x : a.unit()) unit.push_back(x.to_string());
    j["unit"] = unit;
    json sc = json::array();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        json row = json::array();
        for (std::size_t jdx = 0; jdx < a.dim(); ++jdx) {
            json col = json::array();
            for (std::size_t k = 0; k < a.dim(); ++k) col.push_back(a.c(i, jdx, k).to_string());
            row.push_back(std::move(col));
        }
        sc.push_back(std::move(row));
    }
    j["sc"] = std::move(sc);
    return j;
}

inline AlgebraSC algebra_from_json(const json& j) {
    Field f = field_from_json(j.at("field"));
    std::size_t dim = j.at("dim").get<std::size_t>();
    std::vector<FieldElement> unit;
    for (const auto& s : j.at("unit")) unit.push_back(FieldElement::parse(f, s.get<std::string>()));
    std::vector<FieldElement> sc;
    sc.reserve(dim * dim * dim);
    for (const auto& row : j.at("sc"))
        for (const auto& col : row)
            for (const auto& s : col) sc.push_back(FieldElement::parse(f, s.get<std::string>()));
    return AlgebraSC(f, dim, std::move(sc), std::move(unit));
}

inline json etale_to_json(const GaloisCnAlgebra& k) {
    json j;
    j["base"] = field_to_json(k.base());
    json comps = json::array();
    for (const auto& c : k.components()) comps.push_back(field_to_json(c));
    j["components"] = std::move(comps);
    j["perm"] = k.permutation();
    j["frob"] = k.frobenius_powers();
    return j;
}

}  // namespace semialg
