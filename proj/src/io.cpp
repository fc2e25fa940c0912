#include "maxalg/io.hpp"

#include <fstream>

#include "maxalg/errors.hpp"

namespace maxalg::io {

namespace {

Rat entry_from_json(const ordered_json& e, const std::string& ctx) {
    try {
        if (e.is_string()) return Rat::parse(e.get<std::string>());
        if (e.is_number_integer()) {
            const long long v = e.get<long long>();
            if (v < 0) throw error("negative entry");
            return Rat(static_cast<long>(v));
        }
    } catch (const std::exception& ex) {
        throw parse_error(ctx, ex.what());
    }
    throw parse_error(ctx, "entry must be a string (\"4\", \"0.72\", \"9/10\") or integer");
}

unsigned uint_field(const ordered_json& j, const char* key, unsigned fallback,
                    const std::string& ctx) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_unsigned() && !j[key].is_number_integer())
        throw parse_error(ctx + "." + key, "expected a nonnegative integer");
    const long long v = j[key].get<long long>();
    if (v < 0) throw parse_error(ctx + "." + key, "expected a nonnegative integer");
    return static_cast<unsigned>(v);
}

}  // namespace

Mat<Rat> matrix_from_json(const ordered_json& j, const std::string& ctx) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw parse_error(ctx, "matrix needs fields rows, cols, data");
    const unsigned rows = uint_field(j, "rows", 0, ctx);
    const unsigned cols = uint_field(j, "cols", 0, ctx);
    if (rows == 0 || cols == 0) throw parse_error(ctx, "rows/cols must be positive");
    const auto& data = j["data"];
    if (!data.is_array() || data.size() != rows)
        throw parse_error(ctx + ".data", "expected " + std::to_string(rows) + " rows");
    std::vector<Rat> entries;
    entries.reserve(static_cast<std::size_t>(rows) * cols);
    for (unsigned i = 0; i < rows; ++i) {
        const auto& row = data[i];
        if (!row.is_array() || row.size() != cols)
            throw parse_error(ctx + ".data[" + std::to_string(i) + "]",
                              "expected " + std::to_string(cols) + " entries");
        for (unsigned c = 0; c < cols; ++c)
            entries.push_back(entry_from_json(
                row[c], ctx + ".data[" + std::to_string(i) + "][" + std::to_string(c) + "]"));
    }
    return Mat<Rat>(rows, cols, std::move(entries));
}

ordered_json matrix_to_json(const Mat<Rat>& m) {
    ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    ordered_json data = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(i, c).str());
        data.push_back(std::move(row));
    }
    j["data"] = std::move(data);
    return j;
}

Family<Rat> family_from_json(const ordered_json& j, const std::string& ctx) {
    if (!j.is_object() || !j.contains("matrices") || !j["matrices"].is_object())
        throw parse_error(ctx, "family needs an object field 'matrices'");
    Family<Rat> f;
    for (const auto& [name, body] : j["matrices"].items()) {
        Mat<Rat> m = matrix_from_json(body, ctx + ".matrices." + name);
        if (!m.is_square()) throw parse_error(ctx + ".matrices." + name, "must be square");
        try {
            f.add(name, std::move(m));
        } catch (const shape_error& ex) {
            throw parse_error(ctx + ".matrices." + name, ex.what());
        }
    }
    if (f.size() == 0) throw parse_error(ctx + ".matrices", "family is empty");
    return f;
}

ordered_json family_to_json(const Family<Rat>& f) {
    ordered_json mats = ordered_json::object();
    for (std::size_t i = 0; i < f.size(); ++i) mats[f.names[i]] = matrix_to_json(f.mats[i]);
    ordered_json j;
    j["matrices"] = std::move(mats);
    return j;
}

Poly<Rat> poly_from_json(const ordered_json& j, const std::string& ctx) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array() ||
        j["coeffs"].empty())
        throw parse_error(ctx, "polynomial needs a nonempty array field 'coeffs'");
    std::vector<Mat<Rat>> coeffs;
    for (std::size_t i = 0; i < j["coeffs"].size(); ++i)
        coeffs.push_back(
            matrix_from_json(j["coeffs"][i], ctx + ".coeffs[" + std::to_string(i) + "]"));
    try {
        return Poly<Rat>(std::move(coeffs));
    } catch (const shape_error& ex) {
        throw parse_error(ctx + ".coeffs", ex.what());
    }
}

ordered_json poly_to_json(const Poly<Rat>& p) {
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(matrix_to_json(c));
    ordered_json j;
    j["coeffs"] = std::move(coeffs);
    return j;
}

Norm norm_from_string(const std::string& s, const std::string& ctx) {
    if (s == "linf") return Norm::Sup;
    if (s == "l1") return Norm::Sum;
    throw parse_error(ctx, "norm must be 'linf' or 'l1', got '" + s + "'");
}

Scenario scenario_from_json(const ordered_json& j, const std::string& ctx) {
    Scenario s;
    if (!j.is_object()) throw parse_error(ctx, "expected a JSON object");
    if (j.contains("rows")) {
        // bare matrix file: wrap as a one-member family
        Family<Rat> f;
        f.add("A", matrix_from_json(j, ctx));
        s.family = std::move(f);
        return s;
    }
    if (j.contains("coeffs")) {
        s.polys.push_back(poly_from_json(j, ctx));
        return s;
    }
    if (j.contains("matrices")) {
        s.family = family_from_json(j, ctx);
    }
    if (j.contains("family")) s.family = family_from_json(j["family"], ctx + ".family");
    if (j.contains("polys")) {
        if (!j["polys"].is_array()) throw parse_error(ctx + ".polys", "expected an array");
        for (std::size_t i = 0; i < j["polys"].size(); ++i)
            s.polys.push_back(
                poly_from_json(j["polys"][i], ctx + ".polys[" + std::to_string(i) + "]"));
    }
    if (j.contains("word")) {
        if (!j["word"].is_string()) throw parse_error(ctx + ".word", "expected a string");
        s.word = parse_word(j["word"].get<std::string>());
    }
    auto vec_from = [&](const ordered_json& arr, const std::string& vctx) {
        if (!arr.is_array() || arr.empty())
            throw parse_error(vctx, "expected a nonempty array of entries");
        std::vector<Rat> entries;
        for (std::size_t i = 0; i < arr.size(); ++i)
            entries.push_back(entry_from_json(arr[i], vctx + "[" + std::to_string(i) + "]"));
        return Mat<Rat>::column(std::move(entries));
    };
    if (j.contains("x")) s.x = vec_from(j["x"], ctx + ".x");
    if (j.contains("vectors")) {
        if (!j["vectors"].is_array())
            throw parse_error(ctx + ".vectors", "expected an array of vectors");
        for (std::size_t i = 0; i < j["vectors"].size(); ++i)
            s.vectors.push_back(
                vec_from(j["vectors"][i], ctx + ".vectors[" + std::to_string(i) + "]"));
    }
    if (j.contains("options")) {
        const auto& o = j["options"];
        if (!o.is_object()) throw parse_error(ctx + ".options", "expected an object");
        if (o.contains("epsilon")) {
            if (!o["epsilon"].is_string())
                throw parse_error(ctx + ".options.epsilon", "expected an exact string");
            try {
                s.options.epsilon = Rat::parse(o["epsilon"].get<std::string>());
            } catch (const std::exception& ex) {
                throw parse_error(ctx + ".options.epsilon", ex.what());
            }
        }
        s.options.max_iter = uint_field(o, "max_iter", s.options.max_iter, ctx + ".options");
        s.options.horizon = uint_field(o, "horizon", s.options.horizon, ctx + ".options");
        if (o.contains("norm")) {
            if (!o["norm"].is_string())
                throw parse_error(ctx + ".options.norm", "expected 'linf' or 'l1'");
            s.options.norm =
                norm_from_string(o["norm"].get<std::string>(), ctx + ".options.norm");
        }
    }
    return s;
}

ordered_json scenario_to_json(const Scenario& s) {
    ordered_json j = ordered_json::object();
    if (s.family) j["family"] = family_to_json(*s.family);
    if (!s.polys.empty()) {
        ordered_json polys = ordered_json::array();
        for (const auto& p : s.polys) polys.push_back(poly_to_json(p));
        j["polys"] = std::move(polys);
    }
    if (s.word) {
        std::string w;
        for (std::size_t i = 0; i < s.word->size(); ++i) {
            if (i) w += ",";
            w += (*s.word)[i];
        }
        j["word"] = w;
    }
    auto vec_json = [](const Mat<Rat>& v) {
        ordered_json arr = ordered_json::array();
        for (std::size_t i = 0; i < v.rows(); ++i) arr.push_back(v.vec(i).str());
        return arr;
    };
    if (s.x) j["x"] = vec_json(*s.x);
    if (!s.vectors.empty()) {
        ordered_json arr = ordered_json::array();
        for (const auto& v : s.vectors) arr.push_back(vec_json(v));
        j["vectors"] = std::move(arr);
    }
    ordered_json o = ordered_json::object();
    o["epsilon"] = s.options.epsilon.str();
    o["max_iter"] = s.options.max_iter;
    o["horizon"] = s.options.horizon;
    o["norm"] = norm_name(s.options.norm);
    j["options"] = std::move(o);
    return j;
}

ordered_json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path, "cannot open file");
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& ex) {
        throw parse_error(path, ex.what());
    }
}

Scenario load_scenario(const std::string& path) {
    return scenario_from_json(read_json_file(path), path);
}

Mat<Fl> to_float(const Mat<Rat>& m) {
    Mat<Fl> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Fl::from_rat(m(i, j));
    return r;
}

Family<Fl> to_float(const Family<Rat>& f) {
    Family<Fl> r;
    for (std::size_t i = 0; i < f.size(); ++i) r.add(f.names[i], to_float(f.mats[i]));
    return r;
}

Poly<Fl> to_float(const Poly<Rat>& p) {
    std::vector<Mat<Fl>> coeffs;
    for (const auto& c : p.coeffs()) coeffs.push_back(to_float(c));
    return Poly<Fl>(std::move(coeffs));
}

}  // namespace maxalg::io
