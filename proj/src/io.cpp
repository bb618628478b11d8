#include "liex/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace liex {

namespace {

Scalar scalar_from(const Json& j) {
    if (j.is_string()) {
        try {
            return Scalar::parse(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    if (j.is_number_integer()) return Scalar(j.get<long>());
    throw ParseError("expected a scalar string, got " + j.dump());
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

ExactVector vector_from(const Json& j, Index n) {
    if (!j.is_array() || static_cast<Index>(j.size()) != n) throw ParseError("covector has the wrong length");
    ExactVector v(n);
    for (Index k = 0; k < n; ++k) v(k) = scalar_from(j[k]);
    return v;
}

Json vector_json(const ExactVector& v) {
    Json a = Json::array();
    for (Index k = 0; k < v.size(); ++k) a.push_back(v(k).str());
    return a;
}

}  // namespace

Json to_json(const ExtensionTensor& t) {
    Json w = Json::array();
    for (Index l = 0; l < t.dim(); ++l) {
        Json rows = Json::array();
        for (Index m = 0; m < t.dim(); ++m) {
            Json row = Json::array();
            for (Index n = 0; n < t.dim(); ++n) row.push_back(t(l, m, n).str());
            rows.push_back(row);
        }
        w.push_back(rows);
    }
    return Json{{"n", t.order()}, {"semidirect", t.semidirect()}, {"w", w}};
}

Json to_json(const TensorDocument& doc) {
    Json out = doc.meta.is_object() ? doc.meta : Json::object();
    Json core = to_json(doc.tensor);
    for (const char* key : {"n", "semidirect", "w"}) out[key] = core[key];
    return out;
}

TensorDocument document_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("tensor document must be a JSON object");
    const Json& jn = field(j, "n");
    if (!jn.is_number_integer() || jn.get<long>() < 0) throw ParseError("\"n\" must be a nonnegative integer");
    const Json& js = field(j, "semidirect");
    if (!js.is_boolean()) throw ParseError("\"semidirect\" must be a boolean");
    const int n = jn.get<int>();
    const bool sd = js.get<bool>();
    const Json& w = field(j, "w");
    const auto dim = static_cast<std::size_t>(n + (sd ? 1 : 0));
    auto cubic = [&](const Json& a) { return a.is_array() && a.size() == dim; };
    if (!cubic(w)) throw DimensionMismatch("\"w\" must have " + std::to_string(dim) + " slices");
    TensorDocument doc{ExtensionTensor(n, sd), Json::object()};
    for (std::size_t l = 0; l < dim; ++l) {
        if (!cubic(w[l])) throw DimensionMismatch("tensor is not cubic");
        for (std::size_t m = 0; m < dim; ++m) {
            if (!cubic(w[l][m])) throw DimensionMismatch("tensor is not cubic");
            for (std::size_t k = 0; k < dim; ++k)
                doc.tensor(static_cast<Index>(l), static_cast<Index>(m), static_cast<Index>(k)) = scalar_from(w[l][m][k]);
        }
    }
    for (auto it = j.begin(); it != j.end(); ++it) doc.meta[it.key()] = it.value();
    return doc;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw ParseError(path + " is empty");
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

TensorDocument read_document(const std::string& path) { return document_from_json(read_json_file(path)); }

Json to_json(const ExactMatrix& m) {
    Json rows = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
        rows.push_back(row);
    }
    return rows;
}

ExactMatrix matrix_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("matrix must be an array of rows");
    const auto rows = static_cast<Index>(j.size());
    const Index cols = rows ? static_cast<Index>(j[0].size()) : 0;
    ExactMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<Index>(j[r].size()) != cols) throw ParseError("ragged matrix");
        for (Index c = 0; c < cols; ++c) m(r, c) = scalar_from(j[r][c]);
    }
    return m;
}

Json to_json(const BasisChange& b) { return Json{{"m", to_json(b.m())}, {"scale", b.scale().str()}}; }

BasisChange basis_change_from_json(const Json& j) {
    ExactMatrix m = matrix_from_json(field(j, "m"));
    if (m.rows() != m.cols()) throw DimensionMismatch("basis change must be square");
    Scalar scale = j.contains("scale") ? scalar_from(j.at("scale")) : Scalar(1);
    return BasisChange(m, scale);
}

Json to_json(const std::vector<BasisChange>& chain) {
    Json a = Json::array();
    for (const BasisChange& b : chain) a.push_back(to_json(b));
    return a;
}

std::vector<BasisChange> chain_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("witness chain must be an array");
    std::vector<BasisChange> out;
    for (const Json& b : j) out.push_back(basis_change_from_json(b));
    return out;
}

Json to_json(const CasimirFamily& fam) {
    Json args = Json::array();
    for (const ExactVector& u : fam.func.args) args.push_back(vector_json(u));
    Json terms = Json::array();
    for (const CasimirTerm& t : fam.terms) {
        Json poly = Json::array();
        for (const auto& [e, c] : t.poly.terms()) poly.push_back(Json::array({e, c.str()}));
        terms.push_back(Json{{"poly", poly}, {"func", fam.func.label}, {"args", args}, {"deriv", t.deriv}});
    }
    return Json{{"n", fam.order},
                {"semidirect", fam.semidirect},
                {"notation", to_notation(fam)},
                {"terms", terms}};
}

CasimirFamily family_from_json(const Json& j) {
    CasimirFamily fam;
    fam.order = field(j, "n").get<int>();
    fam.semidirect = field(j, "semidirect").get<bool>();
    const Index n = fam.dim();
    bool first = true;
    for (const Json& t : field(j, "terms")) {
        std::vector<ExactVector> args;
        for (const Json& a : field(t, "args")) args.push_back(vector_from(a, n));
        const std::string label = field(t, "func").get<std::string>();
        if (first) {
            fam.func = {label, args};
            first = false;
        } else if (label != fam.func.label || args != fam.func.args) {
            throw ParseError("terms of one family must share the arbitrary function");
        }
        CasimirTerm term{Poly(static_cast<int>(n)), field(t, "deriv").get<std::vector<int>>()};
        if (term.deriv.size() != args.size()) throw ParseError("derivative orders do not match the arguments");
        for (const Json& mono : field(t, "poly")) {
            if (!mono.is_array() || mono.size() != 2) throw ParseError("monomial must be [exponents, coefficient]");
            Exponents e = mono[0].get<Exponents>();
            if (static_cast<Index>(e.size()) != n) throw ParseError("exponent vector has the wrong length");
            term.poly.add_term(e, scalar_from(mono[1]));
        }
        fam.terms.push_back(std::move(term));
    }
    return fam;
}

std::string fixtures_dir() {
    if (const char* env = std::getenv("LIEX_FIXTURES"); env && *env) return env;
#ifdef LIEX_DEFAULT_FIXTURES
    return LIEX_DEFAULT_FIXTURES;
#else
    return "fixtures";
#endif
}

}  // namespace liex
