#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxalg/dynamics.hpp"
#include "maxalg/matrix.hpp"
#include "maxalg/polynomial.hpp"
#include "maxalg/spectral.hpp"

namespace maxalg::io {

using ordered_json = nlohmann::ordered_json;

// Matrix file: {"rows": n, "cols": m, "data": [["4","0.72","9/10"],...]}.
// Entries are strings (or JSON integers) parsed exactly; serialization always
// writes canonical strings so parse -> serialize -> parse is the identity.
Mat<Rat> matrix_from_json(const ordered_json& j, const std::string& ctx);
ordered_json matrix_to_json(const Mat<Rat>& m);

// Family file: {"matrices": {"name": <matrix body>, ...}}, file order kept.
Family<Rat> family_from_json(const ordered_json& j, const std::string& ctx);
ordered_json family_to_json(const Family<Rat>& f);

// Polynomial file: {"coeffs": [<matrix body>, ...]} in ascending degree.
Poly<Rat> poly_from_json(const ordered_json& j, const std::string& ctx);
ordered_json poly_to_json(const Poly<Rat>& p);

struct ScenarioOptions {
    Rat epsilon = Rat(1, 1'000'000'000'000L);
    unsigned max_iter = 10'000;
    unsigned horizon = 4;
    Norm norm = Norm::Sup;
};

// Scenario file: any of family / polys / word / x / vectors / options.
struct Scenario {
    std::optional<Family<Rat>> family;
    std::vector<Poly<Rat>> polys;
    std::optional<Word> word;
    std::optional<Mat<Rat>> x;
    std::vector<Mat<Rat>> vectors;  // user-supplied common-eigenvector candidates
    ScenarioOptions options;
};

Scenario scenario_from_json(const ordered_json& j, const std::string& ctx);
ordered_json scenario_to_json(const Scenario& s);

ordered_json read_json_file(const std::string& path);

// Generic round-trippable loader: a matrix, family, polynomial or scenario
// file all parse into a Scenario.
Scenario load_scenario(const std::string& path);

Norm norm_from_string(const std::string& s, const std::string& ctx);

// Backend conversion (exact inputs are parsed first, always).
Mat<Fl> to_float(const Mat<Rat>& m);
Family<Fl> to_float(const Family<Rat>& f);
Poly<Fl> to_float(const Poly<Rat>& p);

}  // namespace maxalg::io
