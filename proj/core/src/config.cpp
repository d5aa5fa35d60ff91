#include "simstab/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "simstab/errors.hpp"

namespace simstab {

namespace {

using nlohmann::json;

// numbers arrive as JSON numbers or as strings: decimals or exact
// rationals like "3169/165"
double parse_number(const json& v, const std::string& where) {
    if (v.is_number())
        return v.get<double>();
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        auto slash = s.find('/');
        try {
            if (slash != std::string::npos) {
                double num = std::stod(s.substr(0, slash));
                double den = std::stod(s.substr(slash + 1));
                if (den == 0.0)
                    throw InputError(where + ": rational with zero denominator '" + s + "'");
                return num / den;
            }
            size_t used = 0;
            double x = std::stod(s, &used);
            if (used != s.size())
                throw std::invalid_argument(s);
            return x;
        } catch (const std::exception&) {
            throw InputError(where + ": cannot parse number '" + s + "'");
        }
    }
    throw InputError(where + ": expected a number or a numeric string");
}

std::vector<double> parse_number_list(const json& v, const std::string& where) {
    if (!v.is_array())
        throw InputError(where + ": expected an array");
    std::vector<double> out;
    for (size_t i = 0; i < v.size(); ++i)
        out.push_back(parse_number(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<Complex> parse_root_list(const json& v, const std::string& where) {
    if (!v.is_array())
        throw InputError(where + ": expected an array of roots");
    std::vector<Complex> out;
    for (size_t i = 0; i < v.size(); ++i) {
        const auto& e = v[i];
        std::string at = where + "[" + std::to_string(i) + "]";
        if (e.is_array()) { // [re, im]
            if (e.size() != 2)
                throw InputError(at + ": complex root must be [re, im]");
            out.emplace_back(parse_number(e[0], at), parse_number(e[1], at));
        } else {
            out.emplace_back(parse_number(e, at), 0.0);
        }
    }
    return out;
}

RatFun parse_ratfun(const json& v, const std::string& where, double reduce_tol) {
    if (!v.is_object())
        throw InputError(where + ": expected an object");
    if (v.contains("zeros") || v.contains("poles") || v.contains("gain")) {
        auto zeros = v.contains("zeros") ? parse_root_list(v["zeros"], where + ".zeros")
                                         : std::vector<Complex>{};
        auto poles = v.contains("poles") ? parse_root_list(v["poles"], where + ".poles")
                                         : std::vector<Complex>{};
        double gain = v.contains("gain") ? parse_number(v["gain"], where + ".gain") : 1.0;
        return RatFun::from_factors(zeros, poles, gain, reduce_tol);
    }
    if (v.contains("num") && v.contains("den")) {
        RealPoly num(parse_number_list(v["num"], where + ".num"));
        RealPoly den(parse_number_list(v["den"], where + ".den"));
        if (den.is_zero())
            throw InputError(where + ".den: zero denominator");
        return RatFun::reduced(num, den, reduce_tol);
    }
    throw InputError(where + ": expected {zeros, poles, gain} or {num, den}");
}

} // namespace

PlantConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("config: JSON parse error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("plants"))
        throw InputError("config: missing top-level 'plants' object");

    PlantConfig cfg;
    if (doc.contains("tolerances")) {
        const auto& t = doc["tolerances"];
        if (!t.is_object())
            throw InputError("config.tolerances: expected an object");
        if (t.contains("reduce"))
            cfg.tol.reduce = parse_number(t["reduce"], "tolerances.reduce");
        if (t.contains("roots"))
            cfg.tol.roots = parse_number(t["roots"], "tolerances.roots");
        if (t.contains("solver"))
            cfg.tol.solver = parse_number(t["solver"], "tolerances.solver");
        if (t.contains("properness"))
            cfg.tol.properness = parse_number(t["properness"], "tolerances.properness");
        if (t.contains("stability"))
            cfg.tol.stability = parse_number(t["stability"], "tolerances.stability");
    }

    const auto& plants = doc["plants"];
    for (const char* key : {"x0", "y0", "x1", "y1"})
        if (!plants.contains(key))
            throw InputError(std::string("config.plants: missing '") + key + "'");
    RatFun x0 = parse_ratfun(plants["x0"], "plants.x0", cfg.tol.reduce);
    RatFun y0 = parse_ratfun(plants["y0"], "plants.y0", cfg.tol.reduce);
    RatFun x1 = parse_ratfun(plants["x1"], "plants.x1", cfg.tol.reduce);
    RatFun y1 = parse_ratfun(plants["y1"], "plants.y1", cfg.tol.reduce);
    cfg.plants = make_plant_pair(std::move(x0), std::move(y0), std::move(x1), std::move(y1));

    if (doc.contains("sigma")) {
        const auto& s = doc["sigma"];
        if (s.is_object() && s.contains("zero")) {
            cfg.sigma_zero = parse_number(s["zero"], "sigma.zero");
        } else if (s.is_object() && s.contains("zeros")) {
            auto roots = parse_root_list(s["zeros"], "sigma.zeros");
            cfg.sigma = RealPoly::from_roots(roots, 1.0);
        } else if (s.is_object() && s.contains("coefficients")) {
            cfg.sigma = RealPoly(parse_number_list(s["coefficients"], "sigma.coefficients"));
        } else {
            throw InputError("config.sigma: expected {zero}, {zeros} or {coefficients}");
        }
    }

    if (doc.contains("lambda_grid")) {
        cfg.lambda_grid = parse_number_list(doc["lambda_grid"], "lambda_grid");
        for (double l : cfg.lambda_grid)
            if (l < 0.0 || l > 1.0)
                throw InputError("config.lambda_grid: values must lie in [0, 1]");
        if (cfg.lambda_grid.empty() ||
            *std::min_element(cfg.lambda_grid.begin(), cfg.lambda_grid.end()) != 0.0 ||
            *std::max_element(cfg.lambda_grid.begin(), cfg.lambda_grid.end()) != 1.0)
            throw InputError("config.lambda_grid: grid must include 0 and 1");
    }
    return cfg;
}

PlantConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

RatFun parse_ratfun_file(const std::string& path, double reduce_tol) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open rational-function file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    json doc;
    try {
        doc = json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw InputError(std::string("ratfun file: JSON parse error: ") + e.what());
    }
    return parse_ratfun(doc, path, reduce_tol);
}

std::vector<double> parse_lambda_grid(const std::string& text) {
    std::vector<double> out;
    auto parse_one = [&](const std::string& tok) {
        try {
            size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size())
                throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw InputError("lambda grid: cannot parse '" + tok + "'");
        }
    };
    if (text.find(':') != std::string::npos) {
        // start:step:end
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ':'))
            parts.push_back(tok);
        if (parts.size() != 3)
            throw InputError("lambda grid: range form is start:step:end");
        double start = parse_one(parts[0]), step = parse_one(parts[1]), end = parse_one(parts[2]);
        if (step <= 0.0)
            throw InputError("lambda grid: step must be positive");
        for (double v = start; v <= end + 1e-12; v += step)
            out.push_back(std::min(v, end));
        if (out.empty() || out.back() != end)
            out.push_back(end);
    } else {
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty())
                out.push_back(parse_one(tok));
    }
    return out;
}

} // namespace simstab
