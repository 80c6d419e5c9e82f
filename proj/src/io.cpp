#include "homforge/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace homforge {

namespace {

Monomial monomial_from_string(const AlgebraPtr& A, const std::string& s) {
    std::string err;
    auto p = parse_polynomial(A, s, &err);
    if (!p) throw UserError("bad monomial '" + s + "': " + err);
    if (p->terms().size() != 1 || !A->field().is_one(p->terms().begin()->second))
        throw UserError("relation must be a single monomial with coefficient 1: " + s);
    return p->terms().begin()->first;
}

}  // namespace

AlgebraPtr ring_from_json(const Json& j) {
    if (!j.is_object()) throw UserError("ring definition must be an object");
    Field field = Field::rationals();
    if (!j.contains("field")) throw UserError("ring definition needs a field");
    if (j["field"].is_string()) {
        if (j["field"] != "Q") throw UserError("unknown field: " + j["field"].dump());
    } else if (j["field"].is_object() && j["field"].contains("Fp")) {
        field = Field::prime(j["field"]["Fp"].get<std::uint64_t>());
    } else {
        throw UserError("field must be \"Q\" or {\"Fp\": p}");
    }
    std::vector<std::string> vars;
    for (auto& v : j.value("vars", Json::array())) vars.push_back(v.get<std::string>());
    Backend backend = Backend::artinian;
    int window = 0;
    if (j.contains("backend")) {
        if (j["backend"].is_string() && j["backend"] == "artinian") {
            backend = Backend::artinian;
        } else if (j["backend"].is_object() && j["backend"].contains("graded")) {
            backend = Backend::graded;
            window = j["backend"]["graded"].get<int>();
        } else {
            throw UserError("backend must be \"artinian\" or {\"graded\": D}");
        }
    }
    // parse relations against a relation-free graded ring with the same vars
    AlgebraPtr scratch = LocalAlgebra::make(field, vars, {}, Backend::graded, 0);
    std::vector<Monomial> rels;
    for (auto& r : j.value("relations", Json::array()))
        rels.push_back(monomial_from_string(scratch, r.get<std::string>()));
    return LocalAlgebra::make(field, vars, rels, backend, window);
}

Json ring_to_json(const AlgebraPtr& A) {
    Json j;
    if (A->field().kind() == Field::Kind::rationals)
        j["field"] = "Q";
    else
        j["field"] = Json{{"Fp", A->field().characteristic()}};
    j["vars"] = A->vars();
    Json rels = Json::array();
    for (const auto& r : A->relations()) {
        std::ostringstream os;
        bool first = true;
        for (std::size_t v = 0; v < r.e.size(); ++v) {
            if (r.e[v] == 0) continue;
            if (!first) os << "*";
            os << A->vars()[v];
            if (r.e[v] > 1) os << "^" << r.e[v];
            first = false;
        }
        rels.push_back(first ? "1" : os.str());
    }
    j["relations"] = rels;
    if (A->backend() == Backend::artinian)
        j["backend"] = "artinian";
    else
        j["backend"] = Json{{"graded", A->graded_window()}};
    return j;
}

AlgebraPtr ring_of(const Json& j, const AlgebraPtr& fallback) {
    if (j.is_object() && j.contains("ring")) {
        if (j["ring"].is_string()) return ring_from_json(load_json_file(j["ring"]));
        return ring_from_json(j["ring"]);
    }
    if (!fallback) throw UserError("no ring given and no --ring fallback");
    return fallback;
}

MatrixOverA matrix_from_json(const AlgebraPtr& A, const Json& j, int rows, int cols) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw UserError("matrix must have " + std::to_string(rows) + " rows");
    MatrixOverA m(A, rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
            throw UserError("matrix row " + std::to_string(r) + " must have " +
                            std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) {
            std::string s = j[r][c].get<std::string>();
            m.at(r, c) = A->parse(s);
        }
    }
    return m;
}

Json matrix_to_json(const MatrixOverA& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
        rows.push_back(row);
    }
    return rows;
}

Complex ParsedComplex::checked() const { return Complex::make(algebra, terms, diffs, e_power); }

ParsedComplex complex_from_json(const Json& j, const AlgebraPtr& fallback) {
    ParsedComplex out;
    out.algebra = ring_of(j, fallback);
    if (j.contains("e_power_terms")) out.e_power = j["e_power_terms"].get<bool>();
    std::map<int, FreeModule> terms;
    if (j.contains("terms")) {
        for (auto& [key, val] : j["terms"].items()) {
            int idx = std::stoi(key);
            FreeModule f;
            f.rank = val.at("rank").get<int>();
            if (val.contains("degrees"))
                f.degrees = val["degrees"].get<std::vector<int>>();
            terms[idx] = std::move(f);
        }
    }
    auto rank_of = [&](int i) {
        auto it = terms.find(i);
        return it == terms.end() ? 0 : it->second.rank;
    };
    std::map<int, MatrixOverA> diffs;
    if (j.contains("differentials")) {
        for (auto& [key, val] : j["differentials"].items()) {
            int idx = std::stoi(key);
            diffs.emplace(idx, matrix_from_json(out.algebra, val, rank_of(idx + 1), rank_of(idx)));
        }
    }
    out.terms = std::move(terms);
    out.diffs = std::move(diffs);
    return out;
}

Json complex_to_json(const Complex& C, bool inline_ring) {
    Json j;
    if (inline_ring) j["ring"] = ring_to_json(C.algebra());
    auto s = C.support();
    j["support"] = s ? Json::array({s->first, s->second}) : Json::array({0, -1});
    if (C.e_power_terms()) j["e_power_terms"] = true;
    Json terms = Json::object();
    Json diffs = Json::object();
    if (s) {
        for (int i = s->first; i <= s->second; ++i) {
            if (C.rank(i) == 0) continue;
            Json t{{"rank", C.rank(i)}};
            if (C.algebra()->backend() == Backend::graded) t["degrees"] = C.degrees(i);
            terms[std::to_string(i)] = std::move(t);
        }
        for (int i = s->first; i < s->second; ++i) {
            MatrixOverA d = C.diff(i);
            if (!d.is_zero()) diffs[std::to_string(i)] = matrix_to_json(d);
        }
    }
    j["terms"] = std::move(terms);
    j["differentials"] = std::move(diffs);
    return j;
}

ChainMap chain_map_from_json(const Json& j, const AlgebraPtr& fallback) {
    AlgebraPtr A = ring_of(j, fallback);
    if (!j.contains("source") || !j.contains("target"))
        throw UserError("chain map needs source and target complexes");
    Complex src = complex_from_json(j["source"], A).checked();
    Complex tgt = complex_from_json(j["target"], A).checked();
    std::map<int, MatrixOverA> comps;
    if (j.contains("components")) {
        for (auto& [key, val] : j["components"].items()) {
            int idx = std::stoi(key);
            comps.emplace(idx, matrix_from_json(A, val, tgt.rank(idx), src.rank(idx)));
        }
    }
    return ChainMap::make(std::move(src), std::move(tgt), std::move(comps));
}

Json chain_map_to_json(const ChainMap& f, bool with_complexes) {
    Json j;
    if (with_complexes) {
        j["ring"] = ring_to_json(f.source().algebra());
        j["source"] = complex_to_json(f.source(), false);
        j["target"] = complex_to_json(f.target(), false);
    }
    Json comps = Json::object();
    for (auto& [i, c] : f.components()) comps[std::to_string(i)] = matrix_to_json(c);
    j["components"] = std::move(comps);
    return j;
}

Triangle triangle_from_json(const Json& j, const AlgebraPtr& fallback) {
    AlgebraPtr A = ring_of(j, fallback);
    Triangle t;
    t.x0 = complex_from_json(j.at("x0"), A).checked();
    t.x1 = complex_from_json(j.at("x1"), A).checked();
    t.x2 = complex_from_json(j.at("x2"), A).checked();
    auto comps = [&](const char* key, const Complex& src, const Complex& tgt) {
        std::map<int, MatrixOverA> m;
        if (j.contains(key))
            for (auto& [k, val] : j.at(key).items()) {
                int idx = std::stoi(k);
                m.emplace(idx, matrix_from_json(A, val, tgt.rank(idx), src.rank(idx)));
            }
        return ChainMap::make(src, tgt, std::move(m));
    };
    t.f0 = comps("f0", t.x0, t.x1);
    t.f1 = comps("f1", t.x1, t.x2);
    t.f2 = comps("f2", t.x2, t.x0.shift(1));
    t.provenance = Provenance::claimed;
    return t;
}

Json triangle_to_json(const Triangle& t) {
    Json j;
    j["ring"] = ring_to_json(t.x0.algebra());
    j["x0"] = complex_to_json(t.x0, false);
    j["x1"] = complex_to_json(t.x1, false);
    j["x2"] = complex_to_json(t.x2, false);
    auto comps = [&](const ChainMap& f) {
        Json c = Json::object();
        for (auto& [i, m] : f.components()) c[std::to_string(i)] = matrix_to_json(m);
        return c;
    };
    j["f0"] = comps(t.f0);
    j["f1"] = comps(t.f1);
    j["f2"] = comps(t.f2);
    j["provenance"] = t.provenance == Provenance::strict_cone ? "strict-cone" : "claimed";
    return j;
}

ModulePresentation module_from_json(const Json& j, const AlgebraPtr& fallback) {
    ModulePresentation M;
    M.alg = ring_of(j, fallback);
    M.generators = j.at("generators").get<int>();
    if (j.contains("degrees")) M.degrees = j["degrees"].get<std::vector<int>>();
    int cols = 0;
    if (j.contains("relations") && j["relations"].is_array() && !j["relations"].empty())
        cols = static_cast<int>(j["relations"][0].size());
    M.relations = j.contains("relations") && cols > 0
                      ? matrix_from_json(M.alg, j["relations"], M.generators, cols)
                      : MatrixOverA(M.alg, M.generators, 0);
    return M;
}

Json filtration_to_json(const DGAlgebra& X, const Filtration& F) {
    Json j;
    j["parameter"] = F.parameter;
    j["top"] = F.top;
    Json pieces = Json::object();
    for (int i = 0; i < static_cast<int>(F.pieces.size()); ++i) {
        Json piece = Json::object();
        for (auto& [deg, idxs] : F.pieces[i]) {
            Json words = Json::array();
            for (int w : idxs) words.push_back(X.word_name(X.words_of_degree(deg)[w]));
            piece[std::to_string(deg)] = std::move(words);
        }
        pieces[std::to_string(i)] = std::move(piece);
    }
    j["pieces"] = std::move(pieces);
    return j;
}

Filtration filtration_from_json(const DGAlgebra& X, const Json& j) {
    Filtration F;
    F.parameter = j.at("parameter").get<int>();
    F.top = j.at("top").get<int>();
    F.pieces.resize(F.top);
    if (j.contains("pieces")) {
        for (auto& [key, piece] : j["pieces"].items()) {
            int i = std::stoi(key);
            if (i >= F.top) continue;
            for (auto& [dkey, words] : piece.items()) {
                int deg = std::stoi(dkey);
                for (auto& w : words) {
                    auto word = X.parse_word(w.get<std::string>());
                    if (!word) throw UserError("unknown word: " + w.get<std::string>());
                    F.pieces[i][deg].insert(X.word_index(deg, *word));
                }
            }
        }
    }
    return F;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UserError("cannot open file: " + path);
    std::uint64_t h = 14695981039346656037ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UserError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw UserError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UserError("cannot write file: " + path);
    out << content;
}

}  // namespace homforge
